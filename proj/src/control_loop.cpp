#include "splitsel/control_loop.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "splitsel/error.hpp"

namespace splitsel {

namespace {

constexpr double kDivergenceThreshold = 0.05;

double seconds(double hours) { return hours * 3600.0; }

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

double parse_double(const std::string& s, const std::string& path)
{
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InputError(path, "expected number, got '" + s + "'");
    }
}

} // namespace

std::string_view to_string(PmSource s) noexcept
{
    switch (s) {
    case PmSource::O_DU: return "O-DU";
    case PmSource::O_RU: return "O-RU";
    case PmSource::FH_SWITCH: return "FH-SWITCH";
    }
    return "?";
}

PmSource parse_source(std::string_view name)
{
    for (auto s : {PmSource::O_DU, PmSource::O_RU, PmSource::FH_SWITCH})
        if (to_string(s) == name)
            return s;
    throw InputError("source", "unknown counter source '" + std::string(name) + "'");
}

void validate_counters(std::span<const PmCounterRecord> records)
{
    std::map<PmSource, double> last;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const std::string path = "counters[" + std::to_string(i) + "]";
        if (!(r.prb_occupancy_dl >= 0.0 && r.prb_occupancy_dl <= 1.0))
            throw InputError(path + ".prb_occupancy_dl", "must be in [0, 1]");
        if (!(r.prb_occupancy_ul >= 0.0 && r.prb_occupancy_ul <= 1.0))
            throw InputError(path + ".prb_occupancy_ul", "must be in [0, 1]");
        if (r.sector_id < 0)
            throw InputError(path + ".sector_id", "must be non-negative");
        auto it = last.find(r.source);
        if (it != last.end() && r.timestamp < it->second)
            throw InputError(path + ".timestamp", "timestamps must be non-decreasing per source");
        last[r.source] = r.timestamp;
    }
}

std::vector<PmCounterRecord> read_pm_counters_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw InputError("counters", "empty input");
    const auto header = split_csv_line(line);
    const std::vector<std::string> expected{"timestamp",        "sector_id",      "prb_occupancy_dl",
                                            "prb_occupancy_ul", "traffic_volume", "source"};
    if (header != expected)
        throw InputError("counters", "expected header timestamp,sector_id,prb_occupancy_dl,prb_occupancy_ul,"
                                     "traffic_volume,source");

    std::vector<PmCounterRecord> out;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const std::string path = "counters.row[" + std::to_string(row++) + "]";
        const auto cells = split_csv_line(line);
        if (cells.size() != expected.size())
            throw InputError(path, "expected 6 columns");
        PmCounterRecord r;
        r.timestamp = parse_double(cells[0], path + ".timestamp");
        const double sector = parse_double(cells[1], path + ".sector_id");
        if (sector != std::floor(sector))
            throw InputError(path + ".sector_id", "expected integer");
        r.sector_id = static_cast<int>(sector);
        r.prb_occupancy_dl = parse_double(cells[2], path + ".prb_occupancy_dl");
        r.prb_occupancy_ul = parse_double(cells[3], path + ".prb_occupancy_ul");
        r.traffic_volume = parse_double(cells[4], path + ".traffic_volume");
        try {
            r.source = parse_source(cells[5]);
        } catch (const InputError& e) {
            throw InputError(path + ".source", e.what());
        }
        out.push_back(r);
    }
    validate_counters(out);
    return out;
}

std::vector<PmCounterRecord> read_pm_counters_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(path.string(), "cannot open counter file");
    return read_pm_counters_csv(in);
}

void write_pm_counters_csv(std::ostream& out, std::span<const PmCounterRecord> records)
{
    out << "timestamp,sector_id,prb_occupancy_dl,prb_occupancy_ul,traffic_volume,source\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%.3f,%d,%.17g,%.17g,%.17g,", r.timestamp, r.sector_id, r.prb_occupancy_dl,
                      r.prb_occupancy_ul, r.traffic_volume);
        out << buf << to_string(r.source) << '\n';
    }
}

std::vector<MovedFunction> moved_functions(Split from, Split to)
{
    const auto a = placement_of(from);
    const auto b = placement_of(to);
    std::vector<MovedFunction> out;
    for (auto f : kAllFunctions)
        if (a.at(f) != b.at(f))
            out.push_back({f, b.at(f)});
    return out;
}

nlohmann::json to_json(const ReconfigEvent& e)
{
    nlohmann::json moved = nlohmann::json::array();
    for (const auto& m : e.moved_functions)
        moved.push_back({{"function", std::string(to_string(m.function))}, {"to", std::string(to_string(m.to))}});
    return {{"timestamp", e.timestamp},
            {"sector_id", e.sector_id},
            {"from_split", std::string(to_string(e.from))},
            {"to_split", std::string(to_string(e.to))},
            {"moved_functions", moved}};
}

void write_events_jsonl(std::ostream& out, std::span<const ReconfigEvent> events)
{
    for (const auto& e : events)
        out << to_json(e).dump() << '\n';
}

std::optional<std::vector<LoadPoint>> window_loads(std::span<const PmCounterRecord> window, std::size_t sectors,
                                                   std::vector<std::string>& diagnostics)
{
    // [sector][source] -> (sum, count)
    std::vector<std::array<std::pair<double, int>, 3>> acc(sectors);
    for (const auto& r : window) {
        if (r.sector_id < 0 || static_cast<std::size_t>(r.sector_id) >= sectors) {
            diagnostics.push_back("ignoring counter for unknown sector " + std::to_string(r.sector_id));
            continue;
        }
        auto& slot = acc[static_cast<std::size_t>(r.sector_id)][static_cast<std::size_t>(r.source)];
        slot.first += std::max(r.prb_occupancy_dl, r.prb_occupancy_ul);
        slot.second += 1;
    }

    std::vector<LoadPoint> loads(sectors);
    bool complete = true;
    for (std::size_t i = 0; i < sectors; ++i) {
        std::optional<double> authoritative;
        for (auto src : {PmSource::O_DU, PmSource::O_RU, PmSource::FH_SWITCH}) {
            const auto& [sum, count] = acc[i][static_cast<std::size_t>(src)];
            if (count == 0)
                continue;
            const double mean = sum / count;
            if (!authoritative) {
                authoritative = mean;
                if (src != PmSource::O_DU)
                    diagnostics.push_back("sector " + std::to_string(i) + ": no O-DU counters, using " +
                                          std::string(to_string(src)));
            } else if (std::abs(mean - *authoritative) > kDivergenceThreshold) {
                diagnostics.push_back("sector " + std::to_string(i) + ": " + std::string(to_string(src)) +
                                      " occupancy diverges from O-DU");
            }
        }
        if (!authoritative) {
            diagnostics.push_back("sector " + std::to_string(i) + ": missing from counter window, no decision");
            complete = false;
            continue;
        }
        loads[i] = LoadPoint{static_cast<int>(i), std::clamp(*authoritative, 0.0, 1.0), {}};
    }
    if (!complete)
        return std::nullopt;
    return loads;
}

Decision decide(std::span<const PmCounterRecord> window, std::span<const Split> current, const Site& site,
                const Objective& objective, const FhLink& link, const LoopPolicy& policy)
{
    Decision d;
    auto loads = window_loads(window, site.size(), d.diagnostics);
    if (!loads) {
        d.reason = Decision::Reason::MissingSector;
        return d;
    }
    d.loads = *loads;

    auto candidate = optimize(policy.method, site, d.loads, objective, link);
    if (current.empty()) {
        d.new_splits = candidate.splits;
        d.reason = Decision::Reason::Initial;
        return d;
    }
    if (current.size() != site.size())
        throw std::invalid_argument("decide: current split vector does not match the sector count");

    const auto now = evaluate(current, site, d.loads, objective, link);
    const bool changed = !std::equal(current.begin(), current.end(), candidate.splits.begin());
    if (!now.feasible) {
        const bool better = candidate.feasible || violation(candidate.fh, link) < violation(now.fh, link);
        if (changed && better) {
            d.new_splits = candidate.splits;
            d.reason = Decision::Reason::Infeasible;
        }
        return d;
    }
    if (!candidate.feasible || now.objective_value <= 0.0)
        return d;

    d.improvement = (now.objective_value - candidate.objective_value) / now.objective_value;
    if (changed && d.improvement > policy.hysteresis) {
        d.new_splits = candidate.splits;
        d.reason = Decision::Reason::Improvement;
    }
    return d;
}

SplitController::SplitController(Site site, Objective objective, FhLink link, LoopPolicy policy,
                                 std::vector<Split> initial)
  : site_(std::move(site))
  , objective_(objective)
  , link_(link)
  , policy_(policy)
  , current_(std::move(initial))
{
    if (!current_.empty() && current_.size() != site_.size())
        throw std::invalid_argument("SplitController: initial split vector does not match the sector count");
}

const Decision& SplitController::tick(double timestamp, std::span<const PmCounterRecord> window)
{
    if (last_tick_ && timestamp - *last_tick_ < 1.0)
        throw std::invalid_argument("SplitController: decisions must be at least 1 s apart");
    last_tick_ = timestamp;

    last_ = decide(window, current_, site_, objective_, link_, policy_);
    if (!last_.new_splits)
        return last_;

    const auto& next = *last_.new_splits;
    if (last_.reason != Decision::Reason::Initial) {
        bool any = false;
        for (std::size_t i = 0; i < next.size(); ++i) {
            if (next[i] == current_[i])
                continue;
            any = true;
            events_.push_back({timestamp, static_cast<int>(i), current_[i], next[i], moved_functions(current_[i], next[i])});
        }
        if (any)
            ++switches_;
    }
    current_ = next;
    return last_;
}

std::vector<PmCounterRecord> synthesize_counters(const Scenario& scenario, double report_interval_s)
{
    if (!(report_interval_s > 0.0))
        throw std::invalid_argument("synthesize_counters: report interval must be positive");
    std::vector<PmCounterRecord> out;
    for (const auto& p : scenario.periods) {
        const auto loads = scenario.loads(p);
        const double start = seconds(p.hour_start);
        const double end = seconds(p.hour_end);
        for (double t = start + report_interval_s;; t += report_interval_s) {
            const double stamp = std::min(t, end);
            const double window = stamp - std::max(start, t - report_interval_s);
            for (std::size_t i = 0; i < loads.size(); ++i) {
                const auto rate = sector_fh(Split::S6, scenario.site.cells[i], loads[i], 1.0);
                out.push_back({stamp, static_cast<int>(i), loads[i].occupancy, loads[i].occupancy,
                               rate.total() * 1e9 * window, PmSource::O_DU});
            }
            if (t >= end)
                break;
        }
    }
    return out;
}

namespace {

struct Tick
{
    double window_start; // exclusive
    double time;         // inclusive window end
};

ReplayResult run_ticks(std::span<const PmCounterRecord> records, const std::vector<Tick>& ticks, const Site& site,
                       const Objective& objective, const FhLink& link, const LoopPolicy& policy)
{
    SplitController controller(site, objective, link, policy);
    ReplayResult out;
    for (const auto& t : ticks) {
        std::vector<PmCounterRecord> window;
        for (const auto& r : records)
            if (r.timestamp > t.window_start && r.timestamp <= t.time)
                window.push_back(r);
        const auto& d = controller.tick(t.time, window);
        for (const auto& msg : d.diagnostics)
            out.diagnostics.push_back("t=" + std::to_string(t.time) + " " + msg);
        out.timeline.push_back({t.time, controller.current()});
    }
    out.events = controller.events();
    out.switch_count = controller.switch_count();
    return out;
}

} // namespace

ReplayResult replay(const Scenario& scenario, std::optional<double> cadence_s, const LoopPolicy& policy)
{
    scenario.validate();
    if (cadence_s && !(*cadence_s >= 1.0))
        throw std::invalid_argument("replay: decision cadence must be at least 1 s");

    std::vector<Tick> ticks;
    double report = 900.0;
    if (cadence_s) {
        report = std::min(report, *cadence_s);
        const double t0 = seconds(scenario.periods.front().hour_start);
        const double t_end = seconds(scenario.periods.back().hour_end);
        for (double t = t0 + *cadence_s; t <= t_end + 1e-9; t += *cadence_s)
            ticks.push_back({t - *cadence_s, t});
    } else {
        for (const auto& p : scenario.periods) {
            report = std::min(report, seconds(p.duration_hours()));
            ticks.push_back({seconds(p.hour_start), seconds(p.hour_end)});
        }
    }
    const auto records = synthesize_counters(scenario, report);
    return run_ticks(records, ticks, scenario.site, scenario.objective(), scenario.link, policy);
}

ReplayResult replay_counters(std::span<const PmCounterRecord> records, const Site& site, const Objective& objective,
                             const FhLink& link, double cadence_s, const LoopPolicy& policy)
{
    if (!(cadence_s >= 1.0))
        throw std::invalid_argument("replay_counters: decision cadence must be at least 1 s");
    validate_counters(records);
    if (records.empty())
        return {};

    auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                        [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    std::vector<Tick> ticks;
    // First window closes at the first sample so the initial deployment sees data.
    for (double t = lo->timestamp;; t += cadence_s) {
        ticks.push_back({t - cadence_s, t});
        if (t >= hi->timestamp)
            break;
    }
    return run_ticks(records, ticks, site, objective, link, policy);
}

} // namespace splitsel
