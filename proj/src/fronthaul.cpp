#include "splitsel/fronthaul.hpp"

#include <algorithm>
#include <stdexcept>

#include "splitsel/error.hpp"

namespace splitsel {

void FhLink::validate(const std::string& path) const
{
    if (!(capacity_gbps > 0))
        throw InputError(path + ".capacity_gbps", "must be positive");
}

double payload_bits_per_symbol(BoundaryKind kind, const CellConfig& cell, double occupancy)
{
    const double b = cell.n_ant_bs;
    const double u = cell.n_layers;
    const double sc = cell.subcarriers();
    const double m = cell.mod_order;
    switch (kind) {
    case BoundaryKind::TIME_IQ: return b * (cell.n_fft + cell.n_cp) * cell.n_iq;
    case BoundaryKind::FREQ_IQ_FULLGRID_PER_ANT: return b * sc * cell.n_iq;
    case BoundaryKind::FREQ_IQ_OCC_PER_ANT: return b * sc * occupancy * cell.n_iq;
    case BoundaryKind::FREQ_IQ_OCC_PER_LAYER: return u * sc * occupancy * cell.n_iq;
    case BoundaryKind::CODED_BITS: return u * sc * occupancy * m;
    case BoundaryKind::SOFTBITS: return u * sc * occupancy * m * cell.n_soft;
    case BoundaryKind::INFO_BITS: return u * sc * occupancy * m * cell.code_rate;
    }
    return 0.0;
}

FhDemand sector_fh_peak(Split split, const CellConfig& cell, const LoadPoint& load, double overhead)
{
    const double scale = overhead / cell.t_sym_s() / 1e9;
    return {payload_bits_per_symbol(fh_boundary(split, Direction::DL), cell, load.occupancy) * scale,
            payload_bits_per_symbol(fh_boundary(split, Direction::UL), cell, load.occupancy) * scale};
}

FhDemand sector_fh(Split split, const CellConfig& cell, const LoadPoint& load, double overhead)
{
    auto peak = sector_fh_peak(split, cell, load, overhead);
    return {peak.dl_gbps * cell.tdd.dl_duty(), peak.ul_gbps * cell.tdd.ul_duty()};
}

FhDemand site_fh(std::span<const Split> splits, std::span<const CellConfig> cells,
                 std::span<const LoadPoint> loads, double overhead)
{
    if (splits.size() != cells.size() || splits.size() != loads.size())
        throw std::invalid_argument("site_fh: splits, cells and loads must have equal length");
    FhDemand sum;
    for (std::size_t i = 0; i < splits.size(); ++i)
        sum += sector_fh(splits[i], cells[i], loads[i], overhead);
    return sum;
}

bool fits(const FhDemand& demand, const FhLink& link) noexcept
{
    return demand.dl_gbps <= link.capacity_gbps && demand.ul_gbps <= link.capacity_gbps;
}

double violation(const FhDemand& demand, const FhLink& link) noexcept
{
    return std::max(0.0, demand.dl_gbps - link.capacity_gbps) + std::max(0.0, demand.ul_gbps - link.capacity_gbps);
}

bool feasible(std::span<const Split> splits, std::span<const CellConfig> cells, std::span<const LoadPoint> loads,
              const FhLink& link, double overhead)
{
    return fits(site_fh(splits, cells, loads, overhead), link);
}

} // namespace splitsel
