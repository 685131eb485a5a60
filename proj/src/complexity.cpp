#include "splitsel/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "splitsel/error.hpp"

namespace splitsel {

namespace {

constexpr std::array<std::string_view, kDriverCount> kDriverNames{
  "FFT_WORK", "ANTENNAS", "LAYERS", "L_SRS", "L_DMRS", "CONSTELLATION", "N_CODED", "I_MAX"};

void check_id(BbFunction f)
{
    if (index_of(f) >= kFunctionCount)
        throw std::invalid_argument("unsupported BB function id " + std::to_string(index_of(f)));
}

using Exponents = std::array<double, kDriverCount>;

constexpr Exponents exps(std::initializer_list<std::pair<Driver, double>> list)
{
    Exponents e{};
    for (auto [d, v] : list)
        e[static_cast<std::size_t>(d)] = v;
    return e;
}

} // namespace

std::string_view to_string(Driver d) noexcept { return kDriverNames[static_cast<std::size_t>(d)]; }

double driver_value(Driver d, const CellConfig& cell)
{
    switch (d) {
    case Driver::FFT_WORK: {
        const double n = cell.n_fft;
        return n / 4.0 * (std::log2(n) / 2.0);
    }
    case Driver::ANTENNAS: return cell.n_ant_bs;
    case Driver::LAYERS: return cell.n_layers;
    case Driver::L_SRS: return cell.l_srs;
    case Driver::L_DMRS: return cell.l_dmrs;
    case Driver::CONSTELLATION: return std::ldexp(1.0, cell.mod_order);
    case Driver::N_CODED: return cell.ldpc.n_coded;
    case Driver::I_MAX: return cell.ldpc.i_max;
    }
    throw std::invalid_argument("unknown driver");
}

const OpCountTable& OpCountTable::defaults()
{
    static const OpCountTable table = [] {
        using D = Driver;
        OpCountTable t;
        auto set = [&](BbFunction f, const char* algo, std::int64_t ops, Exponents e) {
            t.entries_[index_of(f)] = OpCountEntry{algo, ops, e};
        };
        set(BbFunction::IFFT_DL, "Radix-4", 49152, exps({{D::FFT_WORK, 1}}));
        set(BbFunction::FFT_UL, "Radix-4", 49152, exps({{D::FFT_WORK, 1}}));
        set(BbFunction::UL_CHAN_EST, "Beamspace Local LMMSE", 297984,
            exps({{D::ANTENNAS, 1}, {D::LAYERS, 1}, {D::L_DMRS, 1}}));
        set(BbFunction::MIMO_DETECT, "Beamspace Local LMMSE", 640, exps({{D::LAYERS, 1}}));
        set(BbFunction::DL_CHAN_EST, "Beam Space Channel Estimation", 727072,
            exps({{D::ANTENNAS, 1}, {D::LAYERS, 1}, {D::L_SRS, 1}}));
        set(BbFunction::PRECODE_MATRIX, "Zero Forcing", 151808, exps({{D::ANTENNAS, 1}, {D::LAYERS, 2}}));
        set(BbFunction::PRECODE_APPLY, "Matrix multiplication", 4096, exps({{D::ANTENNAS, 1}, {D::LAYERS, 1}}));
        set(BbFunction::DEMODULATION, "Maximum Likelihood", 838, exps({{D::CONSTELLATION, 1}}));
        set(BbFunction::CHANNEL_CODING, "Richardson Urbanke", 12952, exps({{D::N_CODED, 1}}));
        set(BbFunction::CHANNEL_DECODING, "Flooding", 181128, exps({{D::N_CODED, 1}, {D::I_MAX, 1}}));
        return t;
    }();
    return table;
}

const OpCountEntry& OpCountTable::entry(BbFunction f) const
{
    check_id(f);
    return entries_[index_of(f)];
}

OpCountEntry& OpCountTable::entry(BbFunction f)
{
    check_id(f);
    return entries_[index_of(f)];
}

void OpCountTable::apply_overrides(const nlohmann::json& j)
{
    if (!j.is_object())
        throw InputError("op_counts", "expected object keyed by function name");
    for (const auto& [name, fields] : j.items()) {
        const std::string path = "op_counts." + name;
        BbFunction f;
        try {
            f = parse_function(name);
        } catch (const InputError& e) {
            throw InputError(path, e.what());
        }
        if (!fields.is_object())
            throw InputError(path, "expected object");
        auto& e = entries_[index_of(f)];
        for (const auto& [key, value] : fields.items()) {
            if (key == "ops") {
                if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
                    throw InputError(path + ".ops", "expected non-negative integer");
                e.ops = value.get<std::int64_t>();
            } else if (key == "algorithm") {
                if (!value.is_string())
                    throw InputError(path + ".algorithm", "expected string");
                e.algorithm = value.get<std::string>();
            } else if (key == "exponents") {
                if (!value.is_object())
                    throw InputError(path + ".exponents", "expected object keyed by driver");
                for (const auto& [dname, dval] : value.items()) {
                    auto it = std::find(kDriverNames.begin(), kDriverNames.end(), dname);
                    if (it == kDriverNames.end())
                        throw InputError(path + ".exponents." + dname, "unknown driver");
                    if (!dval.is_number())
                        throw InputError(path + ".exponents." + dname, "expected number");
                    e.exponents[static_cast<std::size_t>(it - kDriverNames.begin())] = dval.get<double>();
                }
            } else {
                throw InputError(path + "." + key, "unknown field");
            }
        }
    }
}

nlohmann::json OpCountTable::to_json() const
{
    nlohmann::json out = nlohmann::json::object();
    for (auto f : kAllFunctions) {
        const auto& e = entries_[index_of(f)];
        nlohmann::json ex = nlohmann::json::object();
        for (std::size_t d = 0; d < kDriverCount; ++d)
            if (e.exponents[d] != 0.0)
                ex[std::string(kDriverNames[d])] = e.exponents[d];
        out[std::string(splitsel::to_string(f))] = {{"algorithm", e.algorithm}, {"ops", e.ops}, {"exponents", ex}};
    }
    return out;
}

std::int64_t ops_per_execution(BbFunction f, const CellConfig& cell, const OpCountTable& table)
{
    const auto& e = table.entry(f);
    double factor = 1.0;
    for (std::size_t d = 0; d < kDriverCount; ++d) {
        if (e.exponents[d] == 0.0)
            continue;
        const auto drv = static_cast<Driver>(d);
        const double ratio = driver_value(drv, cell) / driver_value(drv, table.reference());
        if (ratio != 1.0)
            factor *= std::pow(ratio, e.exponents[d]);
    }
    if (factor == 1.0)
        return e.ops;
    return std::llround(static_cast<double>(e.ops) * factor);
}

void LoadPoint::validate(const std::string& path) const
{
    if (!(occupancy >= 0.0 && occupancy <= 1.0))
        throw InputError(path + ".occupancy", "must be in [0, 1]");
}

Granularity granularity(BbFunction f) noexcept
{
    switch (f) {
    case BbFunction::IFFT_DL:
    case BbFunction::FFT_UL: return Granularity::PER_ANTENNA_SYMBOL;
    case BbFunction::UL_CHAN_EST:
    case BbFunction::DL_CHAN_EST:
    case BbFunction::PRECODE_MATRIX: return Granularity::PER_PRB_SLOT;
    case BbFunction::MIMO_DETECT:
    case BbFunction::PRECODE_APPLY: return Granularity::PER_RE;
    case BbFunction::DEMODULATION: return Granularity::PER_RE_LAYER;
    case BbFunction::CHANNEL_CODING:
    case BbFunction::CHANNEL_DECODING: return Granularity::PER_CODE_BLOCK;
    }
    return Granularity::PER_RE;
}

Direction execution_direction(BbFunction f) noexcept
{
    return f == BbFunction::DL_CHAN_EST ? Direction::UL : direction(f);
}

double granularity_count(BbFunction f, const CellConfig& cell)
{
    check_id(f);
    const double res_per_slot = static_cast<double>(cell.subcarriers()) * 14.0;
    switch (granularity(f)) {
    case Granularity::PER_ANTENNA_SYMBOL: return static_cast<double>(cell.n_ant_bs) * 14.0;
    case Granularity::PER_PRB_SLOT: return cell.n_prb;
    case Granularity::PER_RE: return res_per_slot;
    case Granularity::PER_RE_LAYER: return res_per_slot * cell.n_layers;
    case Granularity::PER_CODE_BLOCK:
        return res_per_slot * cell.n_layers * cell.mod_order / static_cast<double>(cell.ldpc.n_coded);
    }
    return 0.0;
}

double executions_per_second(BbFunction f, const CellConfig& cell, const LoadPoint& load)
{
    const double duty = cell.tdd.duty(execution_direction(f));
    return granularity_count(f, cell) * load.occupancy * duty / cell.t_slot_s();
}

std::string granularity_table_description()
{
    std::string out;
    for (auto f : kAllFunctions) {
        out += splitsel::to_string(f);
        out += '=';
        switch (granularity(f)) {
        case Granularity::PER_ANTENNA_SYMBOL: out += "B*14"; break;
        case Granularity::PER_PRB_SLOT: out += "N_PRB"; break;
        case Granularity::PER_RE: out += "12*N_PRB*14"; break;
        case Granularity::PER_RE_LAYER: out += "12*N_PRB*14*U"; break;
        case Granularity::PER_CODE_BLOCK: out += "12*N_PRB*14*U*m/n_coded"; break;
        }
        out += execution_direction(f) == Direction::DL ? " per slot*occ*dl_duty/t_slot" : " per slot*occ*ul_duty/t_slot";
        out += ';';
    }
    return out;
}

std::string granularity_table_hash()
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : granularity_table_description()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double CostBreakdown::total() const noexcept
{
    double s = 0.0;
    for (double g : gops)
        s += g;
    return s;
}

CostBreakdown sector_cost(Split split, const CellConfig& cell, const LoadPoint& load, const OpCountTable& table)
{
    CostBreakdown out;
    out.sector_id = load.sector_id;
    const auto placement = placement_of(split);
    for (auto f : kAllFunctions) {
        const double g =
          static_cast<double>(ops_per_execution(f, cell, table)) * executions_per_second(f, cell, load) / 1e9;
        out.gops[index_of(f)] = g;
        (placement.at(f) == Side::BBH ? out.bbh_gops : out.bbl_gops) += g;
    }
    return out;
}

} // namespace splitsel
