#pragma once

#include <limits>
#include <span>

#include "splitsel/complexity.hpp"
#include "splitsel/core_model.hpp"

namespace splitsel {

/// Fronthaul bandwidth requirement, Gb/s, time-averaged over the TDD period.
struct FhDemand
{
    double dl_gbps = 0.0;
    double ul_gbps = 0.0;

    double total() const noexcept { return dl_gbps + ul_gbps; }

    FhDemand& operator+=(const FhDemand& o) noexcept
    {
        dl_gbps += o.dl_gbps;
        ul_gbps += o.ul_gbps;
        return *this;
    }
    friend FhDemand operator+(FhDemand a, const FhDemand& b) noexcept { return a += b; }
};

/// SXU-CXU link; each direction has its own capacity.
struct FhLink
{
    double capacity_gbps = 40.0;

    static FhLink unlimited() noexcept { return {std::numeric_limits<double>::infinity()}; }

    void validate(const std::string& path = "link") const;
};

/// Bits crossing the cut during one symbol period, before duty scaling.
double payload_bits_per_symbol(BoundaryKind kind, const CellConfig& cell, double occupancy);

/// Rate while the direction is active (no duty scaling), Gb/s.
FhDemand sector_fh_peak(Split split, const CellConfig& cell, const LoadPoint& load, double overhead = 1.0);

/// Time-averaged per-direction rate of one sector, Gb/s.
FhDemand sector_fh(Split split, const CellConfig& cell, const LoadPoint& load, double overhead = 1.0);

/// Sum over sectors. Throws std::invalid_argument on length mismatch.
FhDemand site_fh(std::span<const Split> splits, std::span<const CellConfig> cells,
                 std::span<const LoadPoint> loads, double overhead = 1.0);

bool fits(const FhDemand& demand, const FhLink& link) noexcept;

/// Constraint violation: sum of per-direction excess over capacity.
double violation(const FhDemand& demand, const FhLink& link) noexcept;

bool feasible(std::span<const Split> splits, std::span<const CellConfig> cells,
              std::span<const LoadPoint> loads, const FhLink& link, double overhead = 1.0);

} // namespace splitsel
