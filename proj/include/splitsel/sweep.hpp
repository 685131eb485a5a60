#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splitsel/scenario.hpp"

namespace splitsel {

enum class SweepParam { Epsilon, Capacity, LoadScale };

std::string_view to_string(SweepParam p) noexcept;
SweepParam parse_sweep_param(std::string_view name);

/// "start:stop:step" (inclusive stop) or a comma list "1,2,4".
/// Throws InputError for an empty or malformed range.
std::vector<double> parse_range(std::string_view text);

struct SweepRow
{
    double value = 0.0;
    double objective_total = 0.0; // sum of per-period optimum objectives, GOPS
    std::array<std::size_t, kSplitCount> split_histogram{}; // over sectors x periods
    std::size_t feasible_periods = 0;
    std::size_t infeasible_periods = 0;
    std::size_t tie_vectors = 0;           // optimal vectors, summed over periods
    std::size_t feasible_combinations = 0; // summed over periods
};

std::vector<SweepRow> sweep(const Scenario& base, SweepParam param, std::span<const double> values,
                            SearchMethod method);

std::string sweep_csv(std::span<const SweepRow> rows, SweepParam param);

} // namespace splitsel
