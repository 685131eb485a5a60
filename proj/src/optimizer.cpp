#include "splitsel/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "splitsel/error.hpp"

namespace splitsel {

Objective::Objective(double epsilon)
  : epsilon_(epsilon)
{
    if (!(epsilon >= 1.0) || !std::isfinite(epsilon))
        throw InputError("epsilon", "must be a finite value >= 1");
}

bool more_centralized(std::span<const Split> a, std::span<const Split> b) noexcept
{
    const auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i])
            return splitsel::more_centralized(a[i], b[i]);
    return false;
}

Solution evaluate(std::span<const Split> splits, const Site& site, std::span<const LoadPoint> loads,
                  const Objective& objective, const FhLink& link)
{
    if (splits.size() != site.size() || loads.size() != site.size())
        throw std::invalid_argument("evaluate: splits, cells and loads must have equal length");

    Solution s;
    s.splits.assign(splits.begin(), splits.end());
    s.breakdowns.reserve(splits.size());
    for (std::size_t i = 0; i < splits.size(); ++i) {
        auto b = sector_cost(splits[i], site.cells[i], loads[i], site.op_counts);
        s.bbh_gops += b.bbh_gops;
        s.bbl_gops += b.bbl_gops;
        s.breakdowns.push_back(b);
    }
    s.objective_value = objective(s.bbh_gops, s.bbl_gops);
    s.fh = site_fh(splits, site.cells, loads, site.fh_overhead);
    s.feasible = fits(s.fh, link);
    return s;
}

namespace {

/// Per-sector, per-split objective contribution and FH demand.
struct SectorTable
{
    std::vector<std::array<double, kSplitCount>> value;
    std::vector<std::array<FhDemand, kSplitCount>> fh;

    SectorTable(const Site& site, std::span<const LoadPoint> loads, const Objective& objective)
      : value(site.size())
      , fh(site.size())
    {
        if (loads.size() != site.size())
            throw std::invalid_argument("loads and cells must have equal length");
        for (std::size_t i = 0; i < site.size(); ++i) {
            for (auto s : kAllSplits) {
                auto b = sector_cost(s, site.cells[i], loads[i], site.op_counts);
                value[i][index_of(s)] = objective(b.bbh_gops, b.bbl_gops);
                fh[i][index_of(s)] = sector_fh(s, site.cells[i], loads[i], site.fh_overhead);
            }
        }
    }

    double total(std::span<const Split> x) const noexcept
    {
        double v = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            v += value[i][index_of(x[i])];
        return v;
    }

    FhDemand demand(std::span<const Split> x) const noexcept
    {
        FhDemand d;
        for (std::size_t i = 0; i < x.size(); ++i)
            d += fh[i][index_of(x[i])];
        return d;
    }
};

/// Advances `x` through all vectors, sector 0 most significant, S8 first.
bool next_vector(std::vector<Split>& x) noexcept
{
    for (std::size_t k = x.size(); k-- > 0;) {
        const auto idx = index_of(x[k]) + 1;
        if (idx < kSplitCount) {
            x[k] = kAllSplits[idx];
            return true;
        }
        x[k] = kAllSplits[0];
    }
    return false;
}

bool within_tie(double v, double best) noexcept
{
    return std::abs(v - best) <= kTieTolerance * std::abs(best) + 1e-12;
}

} // namespace

Solution exhaustive_search(const Site& site, std::span<const LoadPoint> loads, const Objective& objective,
                           const FhLink& link)
{
    const auto n = site.size();
    if (n > kExhaustiveMaxSectors)
        throw std::invalid_argument("exhaustive_search: " + std::to_string(n) + " sectors exceeds the limit of " +
                                    std::to_string(kExhaustiveMaxSectors) + "; use greedy_search");
    const SectorTable table(site, loads, objective);

    // Pass 1: optimum value (or least violation when nothing fits).
    double best_value = std::numeric_limits<double>::infinity();
    double least_violation = std::numeric_limits<double>::infinity();
    double least_violation_value = std::numeric_limits<double>::infinity();
    std::vector<Split> least_violation_x;
    std::size_t feasible_count = 0;
    std::size_t evaluated = 0;

    std::vector<Split> x(n, Split::S8);
    do {
        ++evaluated;
        const auto d = table.demand(x);
        const double v = table.total(x);
        if (fits(d, link)) {
            ++feasible_count;
            best_value = std::min(best_value, v);
        } else if (feasible_count == 0) {
            const double viol = violation(d, link);
            if (viol < least_violation || (viol == least_violation && v < least_violation_value)) {
                least_violation = viol;
                least_violation_value = v;
                least_violation_x = x;
            }
        }
    } while (next_vector(x));

    if (feasible_count == 0) {
        auto s = evaluate(least_violation_x, site, loads, objective, link);
        s.optimal_set = {least_violation_x};
        s.evaluated = evaluated;
        return s;
    }

    // Pass 2: every vector tied with the optimum, then the tie-break.
    std::vector<std::vector<Split>> ties;
    std::vector<Split> chosen;
    double chosen_fh = 0.0;
    x.assign(n, Split::S8);
    do {
        const auto d = table.demand(x);
        if (!fits(d, link) || !within_tie(table.total(x), best_value))
            continue;
        ties.push_back(x);
        const bool better = chosen.empty() || more_centralized(x, chosen) ||
                            (!more_centralized(chosen, x) && d.total() < chosen_fh);
        if (better) {
            chosen = x;
            chosen_fh = d.total();
        }
    } while (next_vector(x));

    auto s = evaluate(chosen, site, loads, objective, link);
    s.optimal_set = std::move(ties);
    s.feasible_combinations = feasible_count;
    s.evaluated = evaluated;
    return s;
}

Solution greedy_search(const Site& site, std::span<const LoadPoint> loads, const Objective& objective,
                       const FhLink& link)
{
    const auto n = site.size();
    const SectorTable table(site, loads, objective);
    std::vector<Split> x(n, Split::S8);

    while (!fits(table.demand(x), link)) {
        std::size_t pick = n;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == Split::S6)
                continue;
            const auto from = index_of(x[i]);
            const double fh_drop = table.fh[i][from].total() - table.fh[i][from + 1].total();
            const double cost_rise = table.value[i][from + 1] - table.value[i][from];
            double score;
            if (fh_drop <= 0.0)
                score = -std::numeric_limits<double>::infinity();
            else if (cost_rise <= 0.0)
                score = std::numeric_limits<double>::infinity();
            else
                score = fh_drop / cost_rise;
            if (pick == n || score > best_score) {
                pick = i;
                best_score = score;
            }
        }
        if (pick == n)
            break; // all S6 and still infeasible
        x[pick] = kAllSplits[index_of(x[pick]) + 1];
    }

    if (fits(table.demand(x), link)) {
        for (;;) {
            std::size_t pick = n;
            Split to = Split::S8;
            double best_gain = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t s = 0; s < index_of(x[i]); ++s) {
                    const double gain = table.value[i][index_of(x[i])] - table.value[i][s];
                    if (gain <= best_gain)
                        continue;
                    auto trial = x;
                    trial[i] = kAllSplits[s];
                    if (!fits(table.demand(trial), link))
                        continue;
                    pick = i;
                    to = kAllSplits[s];
                    best_gain = gain;
                }
            }
            if (pick == n)
                break;
            x[pick] = to;
        }
    }
    return evaluate(x, site, loads, objective, link);
}

Solution fixed_split_eval(Split split, const Site& site, std::span<const LoadPoint> loads, const Objective& objective,
                          const FhLink& link)
{
    const std::vector<Split> x(site.size(), split);
    return evaluate(x, site, loads, objective, link);
}

double pct_diff(const Solution& solution, const Solution& reference)
{
    if (!(reference.objective_value > 0.0))
        throw std::domain_error("pct_diff: reference objective must be positive");
    return 100.0 * (solution.objective_value - reference.objective_value) / reference.objective_value;
}

std::string_view to_string(SearchMethod m) noexcept
{
    return m == SearchMethod::Exhaustive ? "exhaustive" : "greedy";
}

SearchMethod parse_method(std::string_view name)
{
    if (name == "exhaustive")
        return SearchMethod::Exhaustive;
    if (name == "greedy")
        return SearchMethod::Greedy;
    throw InputError("method", "unknown search method '" + std::string(name) + "' (exhaustive|greedy)");
}

Solution optimize(SearchMethod method, const Site& site, std::span<const LoadPoint> loads, const Objective& objective,
                  const FhLink& link)
{
    return method == SearchMethod::Exhaustive ? exhaustive_search(site, loads, objective, link)
                                              : greedy_search(site, loads, objective, link);
}

} // namespace splitsel
