#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitsel/optimizer.hpp"
#include "splitsel/scenario.hpp"

namespace splitsel {

enum class PmSource : std::uint8_t { O_DU, O_RU, FH_SWITCH };

std::string_view to_string(PmSource s) noexcept;
PmSource parse_source(std::string_view name); // "O-DU", "O-RU", "FH-SWITCH"

/// One performance-management sample. Timestamps in seconds since midnight.
struct PmCounterRecord
{
    double timestamp = 0.0;
    int sector_id = 0;
    double prb_occupancy_dl = 0.0;
    double prb_occupancy_ul = 0.0;
    double traffic_volume = 0.0; // bits over the reporting window
    PmSource source = PmSource::O_DU;
};

/// Throws InputError on out-of-range occupancy or timestamps going backwards
/// within one source.
void validate_counters(std::span<const PmCounterRecord> records);

std::vector<PmCounterRecord> read_pm_counters_csv(std::istream& in);
std::vector<PmCounterRecord> read_pm_counters_csv(const std::filesystem::path& path);
void write_pm_counters_csv(std::ostream& out, std::span<const PmCounterRecord> records);

struct MovedFunction
{
    BbFunction function;
    Side to;

    friend bool operator==(const MovedFunction&, const MovedFunction&) = default;
};

/// Functions whose side differs between the two placements.
std::vector<MovedFunction> moved_functions(Split from, Split to);

struct ReconfigEvent
{
    double timestamp = 0.0;
    int sector_id = 0;
    Split from = Split::S8;
    Split to = Split::S8;
    std::vector<MovedFunction> moved_functions;
};

nlohmann::json to_json(const ReconfigEvent& e);
void write_events_jsonl(std::ostream& out, std::span<const ReconfigEvent> events);

struct LoopPolicy
{
    double hysteresis = 0.02; // minimum relative objective improvement
    SearchMethod method = SearchMethod::Exhaustive;
};

struct Decision
{
    enum class Reason { Keep, Initial, Infeasible, Improvement, MissingSector };

    std::optional<std::vector<Split>> new_splits;
    Reason reason = Reason::Keep;
    std::vector<LoadPoint> loads;
    double improvement = 0.0;
    std::vector<std::string> diagnostics;
};

/// Windowed loads: mean of max(dl, ul) PRB occupancy per sector from O-DU
/// records; other sources are a fallback and are checked for divergence.
/// Returns std::nullopt (with diagnostics) if a sector has no record.
std::optional<std::vector<LoadPoint>> window_loads(std::span<const PmCounterRecord> window, std::size_t sectors,
                                                   std::vector<std::string>& diagnostics);

/// One policy evaluation. `current` empty means nothing deployed yet.
Decision decide(std::span<const PmCounterRecord> window, std::span<const Split> current, const Site& site,
                const Objective& objective, const FhLink& link, const LoopPolicy& policy);

/// Stateful decision loop on a monotonic clock.
class SplitController
{
public:
    SplitController(Site site, Objective objective, FhLink link, LoopPolicy policy,
                    std::vector<Split> initial = {});

    /// Runs `decide` at `timestamp` over `window`; applies and logs any change.
    /// Throws std::invalid_argument if ticks are less than 1 s apart.
    const Decision& tick(double timestamp, std::span<const PmCounterRecord> window);

    const std::vector<Split>& current() const noexcept { return current_; }
    const std::vector<ReconfigEvent>& events() const noexcept { return events_; }
    std::size_t switch_count() const noexcept { return switches_; }

private:
    Site site_;
    Objective objective_;
    FhLink link_;
    LoopPolicy policy_;
    std::vector<Split> current_;
    std::vector<ReconfigEvent> events_;
    std::size_t switches_ = 0;
    std::optional<double> last_tick_;
    Decision last_;
};

struct TimelineEntry
{
    double timestamp = 0.0;
    std::vector<Split> splits;
};

struct ReplayResult
{
    std::vector<ReconfigEvent> events;
    std::size_t switch_count = 0;
    std::vector<TimelineEntry> timeline; // state after every tick
    std::vector<std::string> diagnostics;
};

/// PM samples every `report_interval_s` within each period, O-DU source.
std::vector<PmCounterRecord> synthesize_counters(const Scenario& scenario, double report_interval_s = 900.0);

/// Replays scenario loads through the loop. `cadence_s` empty means one
/// decision at the end of every period; otherwise it must be >= 1 s.
ReplayResult replay(const Scenario& scenario, std::optional<double> cadence_s, const LoopPolicy& policy);

/// Replays external telemetry with decisions every `cadence_s` seconds,
/// starting at the first record.
ReplayResult replay_counters(std::span<const PmCounterRecord> records, const Site& site, const Objective& objective,
                             const FhLink& link, double cadence_s, const LoopPolicy& policy);

} // namespace splitsel
