// splitsel: functional split selection for a multi-sector RAN site.
//
// Exit codes: 0 success, 1 validation mismatch, 2 input error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "splitsel/control_loop.hpp"
#include "splitsel/error.hpp"
#include "splitsel/scenario.hpp"
#include "splitsel/sweep.hpp"
#include "splitsel/validation.hpp"

namespace {

using namespace splitsel;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

struct Overrides
{
    std::optional<double> epsilon;
    std::string capacity;
    std::string opcounts;
};

void add_overrides(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--epsilon", o.epsilon, "BBL/BBH energy cost ratio (>= 1); overrides the scenario");
    cmd->add_option("--capacity", o.capacity, "FH link capacity per direction in Gb/s, or 'inf'");
    cmd->add_option("--opcounts", o.opcounts, "JSON file overriding per-function operation counts");
}

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(path, "cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path, std::string("malformed JSON: ") + e.what());
    }
}

OpCountTable load_op_counts(const std::string& path)
{
    OpCountTable t = OpCountTable::defaults();
    if (!path.empty())
        t.apply_overrides(read_json(path));
    return t;
}

double parse_capacity(const std::string& s)
{
    if (s == "inf" || s == "infinity")
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw InputError("--capacity", "expected a number or 'inf'");
}

Scenario load_with_overrides(const std::string& path, const Overrides& o)
{
    Scenario s = load_scenario_file(path);
    if (o.epsilon)
        s.epsilon = *o.epsilon;
    if (!o.capacity.empty())
        s.link.capacity_gbps = parse_capacity(o.capacity);
    if (!o.opcounts.empty())
        s.site.op_counts = load_op_counts(o.opcounts);
    s.validate();
    return s;
}

std::string join_splits(const std::vector<Split>& x)
{
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i)
            out += ' ';
        out += to_string(x[i]);
    }
    return out;
}

void print_summary(const ScenarioResult& r)
{
    std::printf("%-8s %-9s %-16s %12s %9s %9s  %s\n", "period", "agg_load", "optimum", "objective", "fh_dl",
                "fh_ul", "feasible");
    for (const auto& p : r.periods)
        std::printf("%-8s %9.3f %-16s %12.3f %9.3f %9.3f  %s\n", p.label.c_str(), p.aggregate_load,
                    join_splits(p.optimum).c_str(), p.objective_gops, p.fh.dl_gbps, p.fh.ul_gbps,
                    p.feasible ? "yes" : "NO");
}

int cmd_validate(const std::string& opcounts)
{
    const auto report = validate_model(load_op_counts(opcounts));
    std::fputs(report.to_text().c_str(), stdout);
    return report.all_ok ? kOk : kMismatch;
}

int cmd_run(const std::string& scenario_path, const Overrides& o, const std::string& method, const std::string& out,
            const std::string& format)
{
    const auto scenario = load_with_overrides(scenario_path, o);
    const auto fmt = parse_format(format);
    const auto result = run(scenario, parse_method(method));
    print_summary(result);
    if (!out.empty()) {
        export_result(result, out, fmt);
        std::printf("wrote results to %s\n", out.c_str());
    }
    return kOk;
}

int cmd_sweep(const std::string& scenario_path, const Overrides& o, const std::string& method,
              const std::string& param, const std::string& range, const std::string& out)
{
    const auto scenario = load_with_overrides(scenario_path, o);
    const auto p = parse_sweep_param(param);
    const auto values = parse_range(range);
    const auto rows = sweep(scenario, p, values, parse_method(method));
    const auto csv = sweep_csv(rows, p);
    if (out.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream f(out, std::ios::binary | std::ios::trunc);
        if (!(f << csv))
            throw std::runtime_error(out + ": cannot write");
    }
    return kOk;
}

int cmd_replay(const std::string& scenario_path, const Overrides& o, const std::string& method,
               const std::string& cadence, double hysteresis, const std::string& counters, const std::string& out)
{
    const auto scenario = load_with_overrides(scenario_path, o);
    LoopPolicy policy{hysteresis, parse_method(method)};
    if (!(hysteresis >= 0.0))
        throw InputError("--hysteresis", "must be non-negative");

    std::optional<double> cadence_s;
    if (cadence != "period") {
        try {
            cadence_s = std::stod(cadence);
        } catch (const std::exception&) {
            throw InputError("--cadence", "expected seconds or 'period'");
        }
        if (!(*cadence_s >= 1.0))
            throw InputError("--cadence", "decision cadence must be at least 1 s");
    }

    ReplayResult result;
    if (!counters.empty()) {
        if (!cadence_s)
            throw InputError("--cadence", "replaying a counter file needs a cadence in seconds");
        const auto records = read_pm_counters_csv(counters);
        result = replay_counters(records, scenario.site, scenario.objective(), scenario.link, *cadence_s, policy);
    } else {
        result = replay(scenario, cadence_s, policy);
    }

    for (const auto& t : result.timeline)
        std::printf("t=%8.0fs  %s\n", t.timestamp, join_splits(t.splits).c_str());
    for (const auto& d : result.diagnostics)
        std::fprintf(stderr, "note: %s\n", d.c_str());
    std::printf("reconfigurations: %zu decisions, %zu sector events\n", result.switch_count, result.events.size());

    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error(out + ": cannot open for writing");
        write_events_jsonl(f, result.events);
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Functional split selection for disaggregated RAN sites"};
    app.require_subcommand(1);

    std::string opcounts_validate;
    auto* validate = app.add_subcommand("validate", "Check operation counts, FH boundaries and duty cycles");
    validate->add_option("--opcounts", opcounts_validate, "JSON file overriding per-function operation counts");

    std::string scenario, method = "exhaustive", out, format = "both";
    Overrides run_o;
    auto* run_cmd = app.add_subcommand("run", "Optimize every period of a scenario and export the series");
    run_cmd->add_option("--scenario", scenario, "Scenario JSON file")->required();
    run_cmd->add_option("--method", method, "exhaustive|greedy")->capture_default_str();
    run_cmd->add_option("--out", out, "Output directory");
    run_cmd->add_option("--format", format, "csv|json|both")->capture_default_str();
    add_overrides(run_cmd, run_o);

    std::string param, range;
    Overrides sweep_o;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sensitivity sweep over epsilon, capacity or load_scale");
    sweep_cmd->add_option("--scenario", scenario, "Scenario JSON file")->required();
    sweep_cmd->add_option("--param", param, "epsilon|capacity|load_scale")->required();
    sweep_cmd->add_option("--range", range, "start:stop:step or comma list")->required();
    sweep_cmd->add_option("--method", method, "exhaustive|greedy")->capture_default_str();
    sweep_cmd->add_option("--out", out, "Output CSV file (default stdout)");
    add_overrides(sweep_cmd, sweep_o);

    std::string cadence = "period", counters;
    double hysteresis = 0.02;
    Overrides replay_o;
    auto* replay_cmd = app.add_subcommand("replay", "Replay the closed decision loop over a scenario");
    replay_cmd->add_option("--scenario", scenario, "Scenario JSON file")->required();
    replay_cmd->add_option("--cadence", cadence, "Decision cadence in seconds, or 'period'")->capture_default_str();
    replay_cmd->add_option("--hysteresis", hysteresis, "Minimum relative improvement to switch")
      ->capture_default_str();
    replay_cmd->add_option("--method", method, "exhaustive|greedy")->capture_default_str();
    replay_cmd->add_option("--counters", counters, "PM counter CSV to replay instead of the scenario loads");
    replay_cmd->add_option("--out", out, "Event log (JSON lines)");
    add_overrides(replay_cmd, replay_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*validate)
            return cmd_validate(opcounts_validate);
        if (*run_cmd)
            return cmd_run(scenario, run_o, method, out, format);
        if (*sweep_cmd)
            return cmd_sweep(scenario, sweep_o, method, param, range, out);
        if (*replay_cmd)
            return cmd_replay(scenario, replay_o, method, cadence, hysteresis, counters, out);
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    }
    return kInputError;
}
