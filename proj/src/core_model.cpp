#include "splitsel/core_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "splitsel/error.hpp"

namespace splitsel {

namespace {

constexpr std::array<std::string_view, kSplitCount> kSplitNames{"S8", "S7a", "S7b", "S7c", "S7d", "S6"};

constexpr std::array<std::string_view, kFunctionCount> kFunctionNames{
  "IFFT_DL",        "FFT_UL",        "UL_CHAN_EST",  "MIMO_DETECT",    "DL_CHAN_EST",
  "PRECODE_MATRIX", "PRECODE_APPLY", "DEMODULATION", "CHANNEL_CODING", "CHANNEL_DECODING"};

// PHY chain stages, counted from the antenna. Stage 2 is resource (de)mapping and
// stage 4 on DL is modulation; neither is costed.
constexpr std::array<int, kFunctionCount> kStage{1, 1, 3, 3, 3, 3, 3, 4, 5, 5};

constexpr std::array<Direction, kFunctionCount> kDirection{
  Direction::DL, Direction::UL, Direction::UL, Direction::UL, Direction::DL,
  Direction::DL, Direction::DL, Direction::UL, Direction::DL, Direction::UL};

} // namespace

std::string_view to_string(Split s) noexcept { return kSplitNames[index_of(s)]; }

Split parse_split(std::string_view name)
{
    for (auto s : kAllSplits)
        if (kSplitNames[index_of(s)] == name)
            return s;
    // Accept the bare numeric spelling too ("7b", "8").
    for (auto s : kAllSplits)
        if (kSplitNames[index_of(s)].substr(1) == name)
            return s;
    throw InputError("", "unknown split '" + std::string(name) + "'");
}

std::string_view to_string(BbFunction f) noexcept { return kFunctionNames[index_of(f)]; }

BbFunction parse_function(std::string_view name)
{
    for (auto f : kAllFunctions)
        if (kFunctionNames[index_of(f)] == name)
            return f;
    throw InputError("", "unknown BB function '" + std::string(name) + "'");
}

Direction direction(BbFunction f) noexcept { return kDirection[index_of(f)]; }

int chain_position(BbFunction f) noexcept { return kStage[index_of(f)]; }

std::string_view to_string(Side s) noexcept { return s == Side::BBH ? "BBH" : "BBL"; }

std::vector<BbFunction> Placement::functions_at(Side s) const
{
    std::vector<BbFunction> out;
    for (auto f : kAllFunctions)
        if (at(f) == s)
            out.push_back(f);
    return out;
}

bool Placement::is_contiguous() const noexcept
{
    for (auto d : {Direction::DL, Direction::UL}) {
        int deepest_bbl = 0;
        int shallowest_bbh = 1 << 20;
        for (auto f : kAllFunctions) {
            if (direction(f) != d)
                continue;
            if (at(f) == Side::BBL)
                deepest_bbl = std::max(deepest_bbl, chain_position(f));
            else
                shallowest_bbh = std::min(shallowest_bbh, chain_position(f));
        }
        if (deepest_bbl >= shallowest_bbh)
            return false;
    }
    return true;
}

Placement placement_of(Split s) noexcept
{
    Placement p;
    for (auto f : kAllFunctions)
        p.set(f, chain_position(f) <= cut_depth(s) ? Side::BBL : Side::BBH);
    return p;
}

std::string_view to_string(BoundaryKind k) noexcept
{
    switch (k) {
    case BoundaryKind::TIME_IQ: return "TIME_IQ";
    case BoundaryKind::FREQ_IQ_FULLGRID_PER_ANT: return "FREQ_IQ_FULLGRID_PER_ANT";
    case BoundaryKind::FREQ_IQ_OCC_PER_ANT: return "FREQ_IQ_OCC_PER_ANT";
    case BoundaryKind::FREQ_IQ_OCC_PER_LAYER: return "FREQ_IQ_OCC_PER_LAYER";
    case BoundaryKind::CODED_BITS: return "CODED_BITS";
    case BoundaryKind::SOFTBITS: return "SOFTBITS";
    case BoundaryKind::INFO_BITS: return "INFO_BITS";
    }
    return "?";
}

BoundaryKind fh_boundary(Split s, Direction d) noexcept
{
    switch (s) {
    case Split::S8: return BoundaryKind::TIME_IQ;
    case Split::S7a: return BoundaryKind::FREQ_IQ_FULLGRID_PER_ANT;
    case Split::S7b: return BoundaryKind::FREQ_IQ_OCC_PER_ANT;
    case Split::S7c: return BoundaryKind::FREQ_IQ_OCC_PER_LAYER;
    case Split::S7d: return d == Direction::DL ? BoundaryKind::CODED_BITS : BoundaryKind::SOFTBITS;
    case Split::S6: return BoundaryKind::INFO_BITS;
    }
    return BoundaryKind::INFO_BITS;
}

double TddPattern::dl_duty() const noexcept
{
    return static_cast<double>(14 * dl_slots + special_dl_syms) / period_symbols();
}

double TddPattern::ul_duty() const noexcept
{
    return static_cast<double>(14 * ul_slots + special_ul_syms) / period_symbols();
}

void TddPattern::validate(const std::string& path) const
{
    if (dl_slots < 0 || ul_slots < 0 || special_dl_syms < 0 || special_guard_syms < 0 || special_ul_syms < 0)
        throw InputError(path, "slot and symbol counts must be non-negative");
    if (special_dl_syms + special_guard_syms + special_ul_syms != 14)
        throw InputError(path, "special slot symbols must sum to 14");
    if (dl_duty() + ul_duty() > 1.0)
        throw InputError(path, "dl_duty + ul_duty exceeds 1");
}

double default_t_sym(double t_slot_ms) { return std::round(t_slot_ms * 1000.0 / 14.0 * 10.0) / 10.0; }

int default_n_cp(int n_fft) { return n_fft / 14; }

int default_n_coded(double code_rate) { return static_cast<int>(std::lround(8424.0 / code_rate)); }

void CellConfig::validate(const std::string& path) const
{
    auto fail = [&](const char* field, const std::string& msg) { throw InputError(path + "." + field, msg); };

    if (!(carrier_freq > 0))
        fail("carrier_freq", "must be positive");
    if (!(scs > 0))
        fail("scs", "must be positive");
    if (n_prb <= 0)
        fail("n_prb", "must be positive");
    if (!(t_slot > 0))
        fail("t_slot", "must be positive");
    if (!(std::abs(t_sym - t_slot * 1000.0 / 14.0) <= 1e-3 * (t_slot * 1000.0 / 14.0)))
        fail("t_sym", "must equal t_slot/14 within 0.1%");
    if (n_fft < subcarriers())
        fail("n_fft", "must be at least 12*n_prb");
    if (n_cp != default_n_cp(n_fft))
        fail("n_cp", "must equal n_fft/14 (integer division)");
    if (n_ant_bs <= 0)
        fail("n_ant_bs", "must be positive");
    if (n_layers <= 0 || n_layers > n_ant_bs)
        fail("n_layers", "must be in [1, n_ant_bs]");
    if (l_srs <= 0)
        fail("l_srs", "must be positive");
    if (l_dmrs <= 0)
        fail("l_dmrs", "must be positive");
    if (mod_order != 2 && mod_order != 4 && mod_order != 6 && mod_order != 8)
        fail("mod_order", "must be one of 2, 4, 6, 8");
    if (!(code_rate > 0 && code_rate < 1))
        fail("code_rate", "must be in (0, 1)");
    tdd.validate(path + ".tdd");
    if (n_iq <= 0)
        fail("n_iq", "must be positive");
    if (n_soft <= 0)
        fail("n_soft", "must be positive");
    if (!(ldpc.bler > 0 && ldpc.bler < 1))
        fail("ldpc.bler", "must be in (0, 1)");
    if (ldpc.i_max <= 0)
        fail("ldpc.i_max", "must be positive");
    if (ldpc.n_coded != default_n_coded(code_rate))
        fail("ldpc.n_coded", "must equal round(8424/code_rate)");
}

namespace {

template<typename T>
void read_field(const nlohmann::json& j, const char* key, T& out, const std::string& path)
{
    auto it = j.find(key);
    if (it == j.end())
        return;
    const std::string field = path + "." + key;
    if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer())
            throw InputError(field, "expected integer");
    } else {
        if (!it->is_number())
            throw InputError(field, "expected number");
    }
    out = it->template get<T>();
}

double parse_code_rate(const nlohmann::json& v, const std::string& path)
{
    if (v.is_number())
        return v.get<double>();
    auto ratio = [&](double num, double den) {
        if (den == 0)
            throw InputError(path, "zero denominator");
        return num / den;
    };
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return ratio(v[0].get<double>(), v[1].get<double>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            double num = 0, den = 0;
            auto r1 = std::from_chars(s.data(), s.data() + slash, num);
            auto r2 = std::from_chars(s.data() + slash + 1, s.data() + s.size(), den);
            if (r1.ec == std::errc{} && r2.ec == std::errc{} && r1.ptr == s.data() + slash &&
                r2.ptr == s.data() + s.size())
                return ratio(num, den);
        }
    }
    throw InputError(path, "expected a number, \"num/den\" or [num, den]");
}

} // namespace

CellConfig cell_from_json(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_object())
        throw InputError(path, "expected object");

    static const std::array<std::string_view, 17> known{
      "carrier_freq", "scs", "n_prb", "t_slot", "t_sym", "n_fft", "n_cp", "n_ant_bs", "n_layers",
      "l_srs", "l_dmrs", "mod_order", "code_rate", "tdd", "n_iq", "n_soft", "ldpc"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InputError(path + "." + key, "unknown field");

    CellConfig c;
    read_field(j, "carrier_freq", c.carrier_freq, path);
    read_field(j, "scs", c.scs, path);
    read_field(j, "n_prb", c.n_prb, path);
    read_field(j, "t_slot", c.t_slot, path);
    c.t_sym = default_t_sym(c.t_slot);
    read_field(j, "t_sym", c.t_sym, path);
    read_field(j, "n_fft", c.n_fft, path);
    c.n_cp = default_n_cp(c.n_fft);
    read_field(j, "n_cp", c.n_cp, path);
    read_field(j, "n_ant_bs", c.n_ant_bs, path);
    read_field(j, "n_layers", c.n_layers, path);
    read_field(j, "l_srs", c.l_srs, path);
    read_field(j, "l_dmrs", c.l_dmrs, path);
    read_field(j, "mod_order", c.mod_order, path);
    if (auto it = j.find("code_rate"); it != j.end())
        c.code_rate = parse_code_rate(*it, path + ".code_rate");
    read_field(j, "n_iq", c.n_iq, path);
    read_field(j, "n_soft", c.n_soft, path);

    if (auto it = j.find("tdd"); it != j.end()) {
        const auto tp = path + ".tdd";
        if (!it->is_object())
            throw InputError(tp, "expected object");
        read_field(*it, "dl_slots", c.tdd.dl_slots, tp);
        read_field(*it, "special_dl_syms", c.tdd.special_dl_syms, tp);
        read_field(*it, "special_guard_syms", c.tdd.special_guard_syms, tp);
        read_field(*it, "special_ul_syms", c.tdd.special_ul_syms, tp);
        read_field(*it, "ul_slots", c.tdd.ul_slots, tp);
    }

    c.ldpc.n_coded = default_n_coded(c.code_rate);
    if (auto it = j.find("ldpc"); it != j.end()) {
        const auto lp = path + ".ldpc";
        if (!it->is_object())
            throw InputError(lp, "expected object");
        read_field(*it, "bler", c.ldpc.bler, lp);
        read_field(*it, "i_max", c.ldpc.i_max, lp);
        read_field(*it, "d_c", c.ldpc.d_c, lp);
        read_field(*it, "n_coded", c.ldpc.n_coded, lp);
        read_field(*it, "d_s", c.ldpc.d_s, lp);
        read_field(*it, "e_bits", c.ldpc.e_bits, lp);
    }

    c.validate(path);
    return c;
}

nlohmann::json to_json(const CellConfig& c)
{
    return {
      {"carrier_freq", c.carrier_freq},
      {"scs", c.scs},
      {"n_prb", c.n_prb},
      {"t_slot", c.t_slot},
      {"t_sym", c.t_sym},
      {"n_fft", c.n_fft},
      {"n_cp", c.n_cp},
      {"n_ant_bs", c.n_ant_bs},
      {"n_layers", c.n_layers},
      {"l_srs", c.l_srs},
      {"l_dmrs", c.l_dmrs},
      {"mod_order", c.mod_order},
      {"code_rate", c.code_rate},
      {"tdd",
       {{"dl_slots", c.tdd.dl_slots},
        {"special_dl_syms", c.tdd.special_dl_syms},
        {"special_guard_syms", c.tdd.special_guard_syms},
        {"special_ul_syms", c.tdd.special_ul_syms},
        {"ul_slots", c.tdd.ul_slots}}},
      {"n_iq", c.n_iq},
      {"n_soft", c.n_soft},
      {"ldpc",
       {{"bler", c.ldpc.bler},
        {"i_max", c.ldpc.i_max},
        {"d_c", c.ldpc.d_c},
        {"n_coded", c.ldpc.n_coded},
        {"d_s", c.ldpc.d_s},
        {"e_bits", c.ldpc.e_bits}}},
    };
}

} // namespace splitsel
