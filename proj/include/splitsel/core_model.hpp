#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace splitsel {

enum class Direction : std::uint8_t { DL, UL };

/// Candidate low-layer splits, most centralized first.
enum class Split : std::uint8_t { S8, S7a, S7b, S7c, S7d, S6 };

inline constexpr std::size_t kSplitCount = 6;
inline constexpr std::array<Split, kSplitCount> kAllSplits{
  Split::S8, Split::S7a, Split::S7b, Split::S7c, Split::S7d, Split::S6};

constexpr std::size_t index_of(Split s) noexcept { return static_cast<std::size_t>(s); }

/// Larger means more functions at the BBH. S8 = 5, S6 = 0.
constexpr int centralization(Split s) noexcept
{
    return static_cast<int>(kSplitCount) - 1 - static_cast<int>(s);
}

constexpr bool more_centralized(Split a, Split b) noexcept
{
    return centralization(a) > centralization(b);
}

/// Number of chain stages (counted from the antenna) hosted at the BBL.
constexpr int cut_depth(Split s) noexcept { return static_cast<int>(s); }

std::string_view to_string(Split s) noexcept;
Split parse_split(std::string_view name); // throws InputError

enum class BbFunction : std::uint8_t {
    IFFT_DL,
    FFT_UL,
    UL_CHAN_EST,
    MIMO_DETECT,
    DL_CHAN_EST,
    PRECODE_MATRIX,
    PRECODE_APPLY,
    DEMODULATION,
    CHANNEL_CODING,
    CHANNEL_DECODING,
};

inline constexpr std::size_t kFunctionCount = 10;
inline constexpr std::array<BbFunction, kFunctionCount> kAllFunctions{
  BbFunction::IFFT_DL,        BbFunction::FFT_UL,        BbFunction::UL_CHAN_EST,
  BbFunction::MIMO_DETECT,    BbFunction::DL_CHAN_EST,   BbFunction::PRECODE_MATRIX,
  BbFunction::PRECODE_APPLY,  BbFunction::DEMODULATION,  BbFunction::CHANNEL_CODING,
  BbFunction::CHANNEL_DECODING};

constexpr std::size_t index_of(BbFunction f) noexcept { return static_cast<std::size_t>(f); }

std::string_view to_string(BbFunction f) noexcept;
BbFunction parse_function(std::string_view name); // throws InputError

/// Chain the function belongs to (DL transmit, UL receive).
Direction direction(BbFunction f) noexcept;

/// Stage index counted from the antenna side (1 = FFT/IFFT ... 5 = channel
/// (de)coding). Stages 2 (resource (de)mapping) and 4 on DL (modulation) carry
/// no costed function.
int chain_position(BbFunction f) noexcept;

enum class Side : std::uint8_t { BBH, BBL };

std::string_view to_string(Side s) noexcept;

/// BBH/BBL assignment of every PHY function of one sector.
class Placement
{
public:
    constexpr Placement() noexcept { sides_.fill(Side::BBH); }

    constexpr Side at(BbFunction f) const noexcept { return sides_[index_of(f)]; }
    constexpr void set(BbFunction f, Side s) noexcept { sides_[index_of(f)] = s; }

    std::vector<BbFunction> functions_at(Side s) const;

    /// Every BBL function precedes every BBH function, per direction, counted
    /// from the antenna.
    bool is_contiguous() const noexcept;

    friend constexpr bool operator==(const Placement&, const Placement&) = default;

private:
    std::array<Side, kFunctionCount> sides_{};
};

Placement placement_of(Split s) noexcept;

/// Payload carried over the fronthaul at the cut.
enum class BoundaryKind : std::uint8_t {
    TIME_IQ,
    FREQ_IQ_FULLGRID_PER_ANT,
    FREQ_IQ_OCC_PER_ANT,
    FREQ_IQ_OCC_PER_LAYER,
    CODED_BITS,
    SOFTBITS,
    INFO_BITS,
};

std::string_view to_string(BoundaryKind k) noexcept;

BoundaryKind fh_boundary(Split s, Direction d) noexcept;

/// True for payloads whose size does not depend on occupancy.
constexpr bool load_independent(BoundaryKind k) noexcept
{
    return k == BoundaryKind::TIME_IQ || k == BoundaryKind::FREQ_IQ_FULLGRID_PER_ANT;
}

struct TddPattern
{
    int dl_slots = 3;
    int special_dl_syms = 10;
    int special_guard_syms = 2;
    int special_ul_syms = 2;
    int ul_slots = 1;

    int period_slots() const noexcept { return dl_slots + 1 + ul_slots; }
    int period_symbols() const noexcept { return 14 * period_slots(); }
    double dl_duty() const noexcept;
    double ul_duty() const noexcept;
    double duty(Direction d) const noexcept { return d == Direction::DL ? dl_duty() : ul_duty(); }

    void validate(const std::string& path = "tdd") const;
};

struct LdpcParams
{
    double bler = 0.1;
    int i_max = 10;
    int d_c = 2;
    int n_coded = 12952;
    double d_s = 0.699;
    int e_bits = 4528;
};

/// One NR cell (one per sector). Units: GHz, kHz, ms (t_slot), us (t_sym).
struct CellConfig
{
    double carrier_freq = 3.5;
    double scs = 30.0;
    int n_prb = 273;
    double t_slot = 0.5;
    double t_sym = 35.7;
    int n_fft = 4096;
    int n_cp = 292;
    int n_ant_bs = 64;
    int n_layers = 16;
    int l_srs = 12;
    int l_dmrs = 8;
    int mod_order = 6;
    double code_rate = 666.0 / 1024.0;
    TddPattern tdd{};
    int n_iq = 32;
    int n_soft = 8;
    LdpcParams ldpc{};

    int subcarriers() const noexcept { return 12 * n_prb; }
    double t_slot_s() const noexcept { return t_slot * 1e-3; }
    double t_sym_s() const noexcept { return t_sym * 1e-6; }

    /// Throws InputError naming the first violated invariant.
    void validate(const std::string& path = "cell") const;
};

/// Default symbol duration for a slot length: t_slot/14 rounded to 0.1 us.
double default_t_sym(double t_slot_ms);
int default_n_cp(int n_fft);
int default_n_coded(double code_rate);

/// Fields absent from `j` keep the reference-cell defaults; derived fields
/// (t_sym, n_cp, ldpc.n_coded) follow their sources when not given.
CellConfig cell_from_json(const nlohmann::json& j, const std::string& path = "cell");
nlohmann::json to_json(const CellConfig& c);

} // namespace splitsel
