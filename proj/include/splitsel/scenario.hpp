#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitsel/optimizer.hpp"

namespace splitsel {

/// One set-point of the daily traffic profile.
struct Period
{
    std::string label;
    double hour_start = 0.0;
    double hour_end = 0.0;
    double aggregate_load = 0.0;       // fraction of the site maximum
    std::vector<double> sector_shares; // sum to 1

    double duration_hours() const noexcept { return hour_end - hour_start; }
};

struct Scenario
{
    Site site;
    FhLink link{};
    double epsilon = 2.0;
    double load_scale = 1.0;
    std::vector<Period> periods;
    std::vector<Split> fixed_splits{kAllSplits.begin(), kAllSplits.end()};
    std::string description;

    std::size_t sector_count() const noexcept { return site.size(); }
    Objective objective() const { return Objective(epsilon); }

    /// occupancy_i = aggregate_load * share_i * S * load_scale, clamped to [0, 1].
    std::vector<LoadPoint> loads(const Period& p) const;

    /// Throws InputError naming the first violated invariant.
    void validate() const;
};

Scenario load_scenario(const nlohmann::json& doc);
/// Missing or unreadable files raise InputError with the path.
Scenario load_scenario_file(const std::filesystem::path& path);
nlohmann::json to_json(const Scenario& s);

struct FixedSplitResult
{
    Split split = Split::S8;
    double objective_gops = 0.0;
    FhDemand fh{};
    bool feasible = false;
    double pct_diff = 0.0; // NaN when the optimum objective is zero but this one is not
};

struct PeriodResult
{
    std::string label;
    double hour_start = 0.0;
    double hour_end = 0.0;
    double aggregate_load = 0.0;
    std::vector<double> occupancy;

    std::vector<Split> optimum;
    double objective_gops = 0.0;
    double bbh_gops = 0.0;
    double bbl_gops = 0.0;
    FhDemand fh{};
    FhDemand fh_peak{};
    bool feasible = false;
    std::vector<std::vector<Split>> optimal_set;
    std::size_t feasible_combinations = 0;

    std::vector<FixedSplitResult> fixed; // one per split, S8 first

    const FixedSplitResult& fixed_result(Split s) const { return fixed.at(index_of(s)); }
};

struct ResultMetadata
{
    std::string method;
    double epsilon = 2.0;
    double capacity_gbps = 40.0;
    double load_scale = 1.0;
    double fh_overhead = 1.0;
    std::string n_iq_convention;
    std::string fh_rate_convention;
    std::string granularity_table;
    std::string granularity_hash;
    nlohmann::json op_counts;
};

struct ScenarioResult
{
    ResultMetadata metadata;
    std::vector<Split> fixed_splits; // reporting order for pct_diff.csv
    std::vector<PeriodResult> periods;
};

/// Optimum plus all six fixed-split evaluations for every period. Periods run
/// concurrently; order is preserved.
ScenarioResult run(const Scenario& scenario, SearchMethod method);

PeriodResult run_period(const Scenario& scenario, const Period& period, SearchMethod method);

nlohmann::json to_json(const ScenarioResult& r);
ScenarioResult result_from_json(const nlohmann::json& j);

enum class ExportFormat { Csv, Json, Both };

ExportFormat parse_format(std::string_view name);

/// Writes splits.csv, objective.csv, fh_dl.csv, fh_ul.csv, pct_diff.csv and/or
/// result.json into `dir`. I/O failures raise std::runtime_error naming the path.
void export_result(const ScenarioResult& r, const std::filesystem::path& dir, ExportFormat format = ExportFormat::Both);

/// Same text that export_result writes, for in-memory use.
std::string splits_csv(const ScenarioResult& r);
std::string objective_csv(const ScenarioResult& r);
std::string fh_csv(const ScenarioResult& r, Direction d);
std::string pct_diff_csv(const ScenarioResult& r);

} // namespace splitsel
