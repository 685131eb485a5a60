#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "splitsel/complexity.hpp"
#include "splitsel/fronthaul.hpp"

namespace splitsel {

/// Everything about a site that does not vary with time.
struct Site
{
    std::vector<CellConfig> cells;
    OpCountTable op_counts = OpCountTable::defaults();
    double fh_overhead = 1.0;

    std::size_t size() const noexcept { return cells.size(); }
};

/// C_BBH + epsilon * C_BBL, in GOPS. epsilon >= 1.
class Objective
{
public:
    explicit Objective(double epsilon = 2.0);

    double epsilon() const noexcept { return epsilon_; }
    double operator()(double bbh_gops, double bbl_gops) const noexcept { return bbh_gops + epsilon_ * bbl_gops; }

private:
    double epsilon_;
};

struct Solution
{
    std::vector<Split> splits;
    double objective_value = 0.0;
    double bbh_gops = 0.0;
    double bbl_gops = 0.0;
    FhDemand fh{};
    bool feasible = false;
    std::vector<CostBreakdown> breakdowns;

    // Filled by exhaustive_search only.
    std::vector<std::vector<Split>> optimal_set; // every vector tied with the optimum
    std::size_t feasible_combinations = 0;
    std::size_t evaluated = 0;
};

inline constexpr std::size_t kExhaustiveMaxSectors = 8;

/// Relative tolerance under which two objective values count as a tie.
inline constexpr double kTieTolerance = 1e-9;

Solution evaluate(std::span<const Split> splits, const Site& site, std::span<const LoadPoint> loads,
                  const Objective& objective, const FhLink& link);

/// Minimizer over all 6^S vectors. Ties go to the lexicographically more
/// centralized vector, then to lower dl+ul FH. With no feasible vector the
/// result minimizes the constraint violation and is flagged infeasible.
/// Throws std::invalid_argument when S > kExhaustiveMaxSectors.
Solution exhaustive_search(const Site& site, std::span<const LoadPoint> loads, const Objective& objective,
                           const FhLink& link);

/// Demote-until-feasible from all-S8, then improving single-sector promotions.
Solution greedy_search(const Site& site, std::span<const LoadPoint> loads, const Objective& objective,
                       const FhLink& link);

Solution fixed_split_eval(Split split, const Site& site, std::span<const LoadPoint> loads, const Objective& objective,
                          const FhLink& link);

/// 100 * (solution - reference) / reference. Throws std::domain_error if the
/// reference objective is not positive.
double pct_diff(const Solution& solution, const Solution& reference);

enum class SearchMethod { Exhaustive, Greedy };

std::string_view to_string(SearchMethod m) noexcept;
SearchMethod parse_method(std::string_view name); // throws InputError

Solution optimize(SearchMethod method, const Site& site, std::span<const LoadPoint> loads,
                  const Objective& objective, const FhLink& link);

/// Lexicographic centralization order: true if `a` is preferred over `b`.
bool more_centralized(std::span<const Split> a, std::span<const Split> b) noexcept;

} // namespace splitsel
