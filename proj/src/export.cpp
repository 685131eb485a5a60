#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "splitsel/error.hpp"
#include "splitsel/scenario.hpp"

namespace splitsel {

namespace {

std::string fixed3(double v)
{
    if (std::isnan(v))
        return "NA";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

nlohmann::json number_or_string(double v)
{
    if (std::isnan(v))
        return nullptr;
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

double read_number(const nlohmann::json& j)
{
    if (j.is_null())
        return std::numeric_limits<double>::quiet_NaN();
    if (j.is_string())
        return j == "-inf" ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    return j.get<double>();
}

nlohmann::json splits_json(const std::vector<Split>& x)
{
    nlohmann::json a = nlohmann::json::array();
    for (auto s : x)
        a.push_back(std::string(to_string(s)));
    return a;
}

std::vector<Split> splits_from(const nlohmann::json& j)
{
    std::vector<Split> x;
    for (const auto& s : j)
        x.push_back(parse_split(s.get<std::string>()));
    return x;
}

nlohmann::json fh_json(const FhDemand& d) { return {{"dl_gbps", d.dl_gbps}, {"ul_gbps", d.ul_gbps}}; }

FhDemand fh_from(const nlohmann::json& j) { return {j.at("dl_gbps").get<double>(), j.at("ul_gbps").get<double>()}; }

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error(path.string() + ": cannot open for writing");
    out << text;
    out.flush();
    if (!out)
        throw std::runtime_error(path.string() + ": write failed");
}

std::string period_prefix(std::size_t k, const PeriodResult& p) { return std::to_string(k) + "," + p.label; }

} // namespace

std::string splits_csv(const ScenarioResult& r)
{
    std::string out = "period,label";
    const auto n = r.periods.empty() ? 0 : r.periods.front().optimum.size();
    for (std::size_t i = 0; i < n; ++i)
        out += ",sector_" + std::to_string(i);
    out += '\n';
    for (std::size_t k = 0; k < r.periods.size(); ++k) {
        out += period_prefix(k, r.periods[k]);
        for (auto s : r.periods[k].optimum) {
            out += ',';
            out += to_string(s);
        }
        out += '\n';
    }
    return out;
}

std::string objective_csv(const ScenarioResult& r)
{
    std::string out = "period,label,aggregate_load,objective_gops,bbh_gops,bbl_gops,feasible\n";
    for (std::size_t k = 0; k < r.periods.size(); ++k) {
        const auto& p = r.periods[k];
        out += period_prefix(k, p) + "," + fixed3(p.aggregate_load) + "," + fixed3(p.objective_gops) + "," +
               fixed3(p.bbh_gops) + "," + fixed3(p.bbl_gops) + "," + (p.feasible ? "1" : "0") + "\n";
    }
    return out;
}

std::string fh_csv(const ScenarioResult& r, Direction d)
{
    auto pick = [d](const FhDemand& f) { return d == Direction::DL ? f.dl_gbps : f.ul_gbps; };
    std::string out = "period,label,capacity_gbps,adaptive";
    for (auto s : kAllSplits) {
        out += ",fixed_";
        out += to_string(s);
    }
    out += '\n';
    for (std::size_t k = 0; k < r.periods.size(); ++k) {
        const auto& p = r.periods[k];
        out += period_prefix(k, p) + "," + fixed3(r.metadata.capacity_gbps) + "," + fixed3(pick(p.fh));
        for (const auto& f : p.fixed)
            out += "," + fixed3(pick(f.fh));
        out += '\n';
    }
    return out;
}

std::string pct_diff_csv(const ScenarioResult& r)
{
    std::string out = "period,label";
    for (auto s : r.fixed_splits) {
        out += ",fixed_";
        out += to_string(s);
    }
    out += '\n';
    for (std::size_t k = 0; k < r.periods.size(); ++k) {
        const auto& p = r.periods[k];
        out += period_prefix(k, p);
        for (auto s : r.fixed_splits) {
            const auto& f = p.fixed_result(s);
            out += "," + (f.feasible ? fixed3(f.pct_diff) : std::string("NA"));
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const ScenarioResult& r)
{
    const auto& m = r.metadata;
    nlohmann::json meta = {{"method", m.method},
                           {"epsilon", m.epsilon},
                           {"capacity_gbps", number_or_string(m.capacity_gbps)},
                           {"load_scale", m.load_scale},
                           {"fh_overhead", m.fh_overhead},
                           {"n_iq_convention", m.n_iq_convention},
                           {"fh_rate_convention", m.fh_rate_convention},
                           {"granularity_table", m.granularity_table},
                           {"granularity_hash", m.granularity_hash},
                           {"op_counts", m.op_counts}};

    nlohmann::json periods = nlohmann::json::array();
    for (const auto& p : r.periods) {
        nlohmann::json ties = nlohmann::json::array();
        for (const auto& t : p.optimal_set)
            ties.push_back(splits_json(t));
        nlohmann::json fixed = nlohmann::json::array();
        for (const auto& f : p.fixed)
            fixed.push_back({{"split", std::string(to_string(f.split))},
                             {"objective_gops", f.objective_gops},
                             {"fh", fh_json(f.fh)},
                             {"feasible", f.feasible},
                             {"pct_diff", number_or_string(f.pct_diff)}});
        periods.push_back({{"label", p.label},
                           {"hours", {p.hour_start, p.hour_end}},
                           {"aggregate_load", p.aggregate_load},
                           {"occupancy", p.occupancy},
                           {"optimum", splits_json(p.optimum)},
                           {"objective_gops", p.objective_gops},
                           {"bbh_gops", p.bbh_gops},
                           {"bbl_gops", p.bbl_gops},
                           {"fh", fh_json(p.fh)},
                           {"fh_peak", fh_json(p.fh_peak)},
                           {"feasible", p.feasible},
                           {"optimal_set", ties},
                           {"feasible_combinations", p.feasible_combinations},
                           {"fixed", fixed}});
    }
    return {{"metadata", meta}, {"fixed_splits", splits_json(r.fixed_splits)}, {"periods", periods}};
}

ScenarioResult result_from_json(const nlohmann::json& j)
{
    try {
        ScenarioResult r;
        const auto& meta = j.at("metadata");
        auto& m = r.metadata;
        m.method = meta.at("method").get<std::string>();
        m.epsilon = meta.at("epsilon").get<double>();
        m.capacity_gbps = read_number(meta.at("capacity_gbps"));
        m.load_scale = meta.at("load_scale").get<double>();
        m.fh_overhead = meta.at("fh_overhead").get<double>();
        m.n_iq_convention = meta.at("n_iq_convention").get<std::string>();
        m.fh_rate_convention = meta.at("fh_rate_convention").get<std::string>();
        m.granularity_table = meta.at("granularity_table").get<std::string>();
        m.granularity_hash = meta.at("granularity_hash").get<std::string>();
        m.op_counts = meta.at("op_counts");
        r.fixed_splits = splits_from(j.at("fixed_splits"));

        for (const auto& pj : j.at("periods")) {
            PeriodResult p;
            p.label = pj.at("label").get<std::string>();
            p.hour_start = pj.at("hours").at(0).get<double>();
            p.hour_end = pj.at("hours").at(1).get<double>();
            p.aggregate_load = pj.at("aggregate_load").get<double>();
            p.occupancy = pj.at("occupancy").get<std::vector<double>>();
            p.optimum = splits_from(pj.at("optimum"));
            p.objective_gops = pj.at("objective_gops").get<double>();
            p.bbh_gops = pj.at("bbh_gops").get<double>();
            p.bbl_gops = pj.at("bbl_gops").get<double>();
            p.fh = fh_from(pj.at("fh"));
            p.fh_peak = fh_from(pj.at("fh_peak"));
            p.feasible = pj.at("feasible").get<bool>();
            for (const auto& t : pj.at("optimal_set"))
                p.optimal_set.push_back(splits_from(t));
            p.feasible_combinations = pj.at("feasible_combinations").get<std::size_t>();
            for (const auto& fj : pj.at("fixed"))
                p.fixed.push_back({parse_split(fj.at("split").get<std::string>()), fj.at("objective_gops").get<double>(),
                                   fh_from(fj.at("fh")), fj.at("feasible").get<bool>(),
                                   read_number(fj.at("pct_diff"))});
            r.periods.push_back(std::move(p));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("result", e.what());
    }
}

ExportFormat parse_format(std::string_view name)
{
    if (name == "csv")
        return ExportFormat::Csv;
    if (name == "json")
        return ExportFormat::Json;
    if (name == "both")
        return ExportFormat::Both;
    throw InputError("format", "unknown format '" + std::string(name) + "' (csv|json|both)");
}

void export_result(const ScenarioResult& r, const std::filesystem::path& dir, ExportFormat format)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error(dir.string() + ": " + ec.message());

    if (format != ExportFormat::Json) {
        write_file(dir / "splits.csv", splits_csv(r));
        write_file(dir / "objective.csv", objective_csv(r));
        write_file(dir / "fh_dl.csv", fh_csv(r, Direction::DL));
        write_file(dir / "fh_ul.csv", fh_csv(r, Direction::UL));
        write_file(dir / "pct_diff.csv", pct_diff_csv(r));
    }
    if (format != ExportFormat::Csv)
        write_file(dir / "result.json", to_json(r).dump(2) + "\n");
}

} // namespace splitsel
