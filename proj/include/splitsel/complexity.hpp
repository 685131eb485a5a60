#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "splitsel/core_model.hpp"

namespace splitsel {

/// Cell quantities a per-execution operation count may scale with.
enum class Driver : std::uint8_t {
    FFT_WORK,      // (N_FFT/4) * log4(N_FFT), radix-4 butterflies
    ANTENNAS,      // B
    LAYERS,        // U
    L_SRS,
    L_DMRS,
    CONSTELLATION, // 2^m
    N_CODED,       // LDPC codeword length
    I_MAX,         // decoder iterations
};

inline constexpr std::size_t kDriverCount = 8;

std::string_view to_string(Driver d) noexcept;
double driver_value(Driver d, const CellConfig& cell);

/// Calibrated operation count of one function execution. At the reference
/// cell the count is `ops`; elsewhere it scales as
/// ops * prod_d (driver_d(cell) / driver_d(reference))^exponent_d.
struct OpCountEntry
{
    std::string algorithm;
    std::int64_t ops = 0;
    std::array<double, kDriverCount> exponents{};
};

class OpCountTable
{
public:
    /// Reference counts at the default cell.
    static const OpCountTable& defaults();

    const OpCountEntry& entry(BbFunction f) const;
    OpCountEntry& entry(BbFunction f);

    const CellConfig& reference() const noexcept { return reference_; }

    /// Partial override: {"FFT_UL": {"ops": 1, "exponents": {"FFT_WORK": 1.0}}, ...}.
    /// Unknown functions, drivers or keys raise InputError.
    void apply_overrides(const nlohmann::json& j);

    nlohmann::json to_json() const;

private:
    std::array<OpCountEntry, kFunctionCount> entries_{};
    CellConfig reference_{};
};

/// Operations for one execution of `f` on `cell`; exact reference count at the
/// reference configuration. Throws std::invalid_argument for an unknown id.
std::int64_t ops_per_execution(BbFunction f, const CellConfig& cell,
                               const OpCountTable& table = OpCountTable::defaults());

struct LoadPoint
{
    int sector_id = 0;
    double occupancy = 0.0; // fraction of PRBs/symbols occupied, both directions
    std::string period;

    void validate(const std::string& path = "load") const;
};

/// How often a function runs, expressed per slot at full occupancy.
enum class Granularity : std::uint8_t {
    PER_ANTENNA_SYMBOL,
    PER_PRB_SLOT,
    PER_RE,
    PER_RE_LAYER,
    PER_CODE_BLOCK,
};

Granularity granularity(BbFunction f) noexcept;

/// TDD direction whose duty cycle gates the executions. Differs from
/// `direction(f)` for DL_CHAN_EST, which is driven by UL sounding.
Direction execution_direction(BbFunction f) noexcept;

/// Executions per slot at full load, before duty scaling.
double granularity_count(BbFunction f, const CellConfig& cell);

/// count * occupancy * duty / t_slot, in executions per second.
double executions_per_second(BbFunction f, const CellConfig& cell, const LoadPoint& load);

/// Human readable execution-rate model; emitted into result metadata.
std::string granularity_table_description();
/// FNV-1a 64 of the description, as 16 hex digits.
std::string granularity_table_hash();

struct CostBreakdown
{
    int sector_id = 0;
    std::array<double, kFunctionCount> gops{};
    double bbh_gops = 0.0;
    double bbl_gops = 0.0;

    double total() const noexcept;
};

CostBreakdown sector_cost(Split split, const CellConfig& cell, const LoadPoint& load,
                          const OpCountTable& table = OpCountTable::defaults());

} // namespace splitsel
