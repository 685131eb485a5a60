#include "splitsel/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>

#include "splitsel/error.hpp"

namespace splitsel {

namespace {

double require_number(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_number())
        throw InputError(path, "expected number");
    return j.get<double>();
}

double parse_capacity(const nlohmann::json& j, const std::string& path)
{
    if (j.is_string() && (j == "inf" || j == "infinity"))
        return std::numeric_limits<double>::infinity();
    return require_number(j, path);
}

Period period_from_json(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_object())
        throw InputError(path, "expected object");
    for (const auto& [key, _] : j.items())
        if (key != "label" && key != "hours" && key != "aggregate_load" && key != "sector_shares")
            throw InputError(path + "." + key, "unknown field");

    Period p;
    auto label = j.find("label");
    if (label == j.end() || !label->is_string())
        throw InputError(path + ".label", "expected string");
    p.label = label->get<std::string>();

    auto hours = j.find("hours");
    if (hours == j.end() || !hours->is_array() || hours->size() != 2)
        throw InputError(path + ".hours", "expected [start, end]");
    p.hour_start = require_number((*hours)[0], path + ".hours[0]");
    p.hour_end = require_number((*hours)[1], path + ".hours[1]");

    auto agg = j.find("aggregate_load");
    if (agg == j.end())
        throw InputError(path + ".aggregate_load", "missing");
    p.aggregate_load = require_number(*agg, path + ".aggregate_load");

    auto shares = j.find("sector_shares");
    if (shares == j.end() || !shares->is_array())
        throw InputError(path + ".sector_shares", "expected array");
    for (std::size_t i = 0; i < shares->size(); ++i)
        p.sector_shares.push_back(require_number((*shares)[i], path + ".sector_shares[" + std::to_string(i) + "]"));
    return p;
}

} // namespace

std::vector<LoadPoint> Scenario::loads(const Period& p) const
{
    const auto n = sector_count();
    std::vector<LoadPoint> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double occ = p.aggregate_load * p.sector_shares[i] * static_cast<double>(n) * load_scale;
        out[i] = LoadPoint{static_cast<int>(i), std::clamp(occ, 0.0, 1.0), p.label};
    }
    return out;
}

void Scenario::validate() const
{
    if (site.cells.empty())
        throw InputError("cells", "at least one sector is required");
    for (std::size_t i = 0; i < site.cells.size(); ++i)
        site.cells[i].validate("cells[" + std::to_string(i) + "]");
    link.validate("link");
    (void)objective();
    if (!(load_scale > 0.0 && load_scale <= 1.0))
        throw InputError("load_scale", "must be in (0, 1]");
    if (!(site.fh_overhead > 0.0) || !std::isfinite(site.fh_overhead))
        throw InputError("fh_overhead", "must be a positive finite number");
    if (periods.empty())
        throw InputError("periods", "at least one period is required");

    for (std::size_t k = 0; k < periods.size(); ++k) {
        const auto& p = periods[k];
        const std::string path = "periods[" + std::to_string(k) + "]";
        if (!(p.hour_end > p.hour_start))
            throw InputError(path + ".hours", "end must be after start");
        if (k > 0 && p.hour_start < periods[k - 1].hour_end)
            throw InputError(path + ".hours", "periods must be ordered and non-overlapping");
        if (!(p.aggregate_load >= 0.0 && p.aggregate_load <= 1.0))
            throw InputError(path + ".aggregate_load", "must be in [0, 1]");
        if (p.sector_shares.size() != sector_count())
            throw InputError(path + ".sector_shares", "expected one share per sector (" +
                                                        std::to_string(sector_count()) + ")");
        double sum = 0.0;
        for (std::size_t i = 0; i < p.sector_shares.size(); ++i) {
            if (!(p.sector_shares[i] >= 0.0))
                throw InputError(path + ".sector_shares[" + std::to_string(i) + "]", "must be non-negative");
            sum += p.sector_shares[i];
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw InputError(path + ".sector_shares", "shares sum to " + std::to_string(sum) + ", expected 1");
    }
}

Scenario load_scenario(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw InputError("", "scenario must be a JSON object");
    static const std::array<std::string_view, 8> known{"description", "cells",       "link",    "epsilon",
                                                       "load_scale",  "fh_overhead", "periods", "fixed_splits"};
    for (const auto& [key, _] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InputError(key, "unknown field");

    Scenario s;
    if (auto it = doc.find("description"); it != doc.end()) {
        if (!it->is_string())
            throw InputError("description", "expected string");
        s.description = it->get<std::string>();
    }

    auto cells = doc.find("cells");
    if (cells == doc.end() || !cells->is_array())
        throw InputError("cells", "expected array of cell overrides");
    for (std::size_t i = 0; i < cells->size(); ++i)
        s.site.cells.push_back(cell_from_json((*cells)[i], "cells[" + std::to_string(i) + "]"));

    if (auto it = doc.find("link"); it != doc.end()) {
        if (!it->is_object())
            throw InputError("link", "expected object");
        for (const auto& [key, value] : it->items()) {
            if (key != "capacity_gbps")
                throw InputError("link." + key, "unknown field");
            s.link.capacity_gbps = parse_capacity(value, "link.capacity_gbps");
        }
    }
    if (auto it = doc.find("epsilon"); it != doc.end())
        s.epsilon = require_number(*it, "epsilon");
    if (auto it = doc.find("load_scale"); it != doc.end())
        s.load_scale = require_number(*it, "load_scale");
    if (auto it = doc.find("fh_overhead"); it != doc.end())
        s.site.fh_overhead = require_number(*it, "fh_overhead");

    auto periods = doc.find("periods");
    if (periods == doc.end() || !periods->is_array())
        throw InputError("periods", "expected array");
    for (std::size_t k = 0; k < periods->size(); ++k)
        s.periods.push_back(period_from_json((*periods)[k], "periods[" + std::to_string(k) + "]"));

    if (auto it = doc.find("fixed_splits"); it != doc.end()) {
        if (!it->is_array())
            throw InputError("fixed_splits", "expected array of split names");
        s.fixed_splits.clear();
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "fixed_splits[" + std::to_string(i) + "]";
            if (!(*it)[i].is_string())
                throw InputError(path, "expected split name");
            try {
                s.fixed_splits.push_back(parse_split((*it)[i].get<std::string>()));
            } catch (const InputError& e) {
                throw InputError(path, e.what());
            }
        }
    }

    s.validate();
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(path.string(), "cannot open scenario file");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string(), std::string("malformed JSON: ") + e.what());
    }
    return load_scenario(doc);
}

nlohmann::json to_json(const Scenario& s)
{
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : s.site.cells)
        cells.push_back(to_json(c));
    nlohmann::json periods = nlohmann::json::array();
    for (const auto& p : s.periods)
        periods.push_back({{"label", p.label},
                           {"hours", {p.hour_start, p.hour_end}},
                           {"aggregate_load", p.aggregate_load},
                           {"sector_shares", p.sector_shares}});
    nlohmann::json fixed = nlohmann::json::array();
    for (auto f : s.fixed_splits)
        fixed.push_back(std::string(to_string(f)));
    nlohmann::json capacity = std::isinf(s.link.capacity_gbps) ? nlohmann::json("inf")
                                                               : nlohmann::json(s.link.capacity_gbps);
    return {{"description", s.description},   {"cells", cells},
            {"link", {{"capacity_gbps", capacity}}},
            {"epsilon", s.epsilon},           {"load_scale", s.load_scale},
            {"fh_overhead", s.site.fh_overhead}, {"periods", periods},
            {"fixed_splits", fixed}};
}

PeriodResult run_period(const Scenario& scenario, const Period& period, SearchMethod method)
{
    const auto loads = scenario.loads(period);
    const auto objective = scenario.objective();
    const auto& site = scenario.site;

    PeriodResult r;
    r.label = period.label;
    r.hour_start = period.hour_start;
    r.hour_end = period.hour_end;
    r.aggregate_load = period.aggregate_load;
    for (const auto& l : loads)
        r.occupancy.push_back(l.occupancy);

    auto best = optimize(method, site, loads, objective, scenario.link);
    r.optimum = best.splits;
    r.objective_gops = best.objective_value;
    r.bbh_gops = best.bbh_gops;
    r.bbl_gops = best.bbl_gops;
    r.fh = best.fh;
    r.feasible = best.feasible;
    r.optimal_set = best.optimal_set;
    r.feasible_combinations = best.feasible_combinations;
    for (std::size_t i = 0; i < loads.size(); ++i)
        r.fh_peak += sector_fh_peak(best.splits[i], site.cells[i], loads[i], site.fh_overhead);

    for (auto s : kAllSplits) {
        auto f = fixed_split_eval(s, site, loads, objective, scenario.link);
        FixedSplitResult fr{s, f.objective_value, f.fh, f.feasible, 0.0};
        if (best.objective_value > 0.0)
            fr.pct_diff = pct_diff(f, best);
        else if (f.objective_value != 0.0)
            fr.pct_diff = std::numeric_limits<double>::quiet_NaN();
        r.fixed.push_back(fr);
    }
    return r;
}

ScenarioResult run(const Scenario& scenario, SearchMethod method)
{
    scenario.validate();

    ScenarioResult out;
    auto& m = out.metadata;
    m.method = std::string(to_string(method));
    m.epsilon = scenario.epsilon;
    m.capacity_gbps = scenario.link.capacity_gbps;
    m.load_scale = scenario.load_scale;
    m.fh_overhead = scenario.site.fh_overhead;
    m.n_iq_convention = "n_iq bits per complex IQ sample (I and Q together)";
    m.fh_rate_convention = "time-averaged over the TDD period (duty-scaled); fh_peak is the rate while active";
    m.granularity_table = granularity_table_description();
    m.granularity_hash = granularity_table_hash();
    m.op_counts = scenario.site.op_counts.to_json();
    out.fixed_splits = scenario.fixed_splits;

    std::vector<std::future<PeriodResult>> jobs;
    jobs.reserve(scenario.periods.size());
    for (const auto& p : scenario.periods)
        jobs.push_back(std::async(std::launch::async, [&scenario, &p, method] { return run_period(scenario, p, method); }));
    for (auto& j : jobs)
        out.periods.push_back(j.get());
    return out;
}

} // namespace splitsel
