#include <doctest.h>

#include <cmath>
#include <random>

#include "splitsel/complexity.hpp"
#include "splitsel/error.hpp"

using namespace splitsel;

TEST_CASE("per-execution counts equal the reference table at the default cell")
{
    const CellConfig c{};
    CHECK(ops_per_execution(BbFunction::FFT_UL, c) == 49152);
    CHECK(ops_per_execution(BbFunction::IFFT_DL, c) == 49152);
    CHECK(ops_per_execution(BbFunction::UL_CHAN_EST, c) == 297984);
    CHECK(ops_per_execution(BbFunction::MIMO_DETECT, c) == 640);
    CHECK(ops_per_execution(BbFunction::DL_CHAN_EST, c) == 727072);
    CHECK(ops_per_execution(BbFunction::PRECODE_MATRIX, c) == 151808);
    CHECK(ops_per_execution(BbFunction::PRECODE_APPLY, c) == 4096);
    CHECK(ops_per_execution(BbFunction::DEMODULATION, c) == 838);
    CHECK(ops_per_execution(BbFunction::CHANNEL_CODING, c) == 12952);
    CHECK(ops_per_execution(BbFunction::CHANNEL_DECODING, c) == 181128);
}

TEST_CASE("FFT count scales with radix-4 butterfly work")
{
    // k ops per butterfly, fixed by the 4096-point count.
    auto butterflies = [](int n) { return (n / 4) * static_cast<int>(std::lround(std::log(n) / std::log(4.0))); };
    const std::int64_t k = 49152 / butterflies(4096);
    CHECK(k == 8);

    CellConfig c;
    c.n_fft = 1024;
    c.n_cp = default_n_cp(1024);
    CHECK(ops_per_execution(BbFunction::FFT_UL, c) == k * butterflies(1024));
    CHECK(ops_per_execution(BbFunction::FFT_UL, c) == 10240);
}

TEST_CASE("an unknown function id is rejected")
{
    CHECK_THROWS_AS(ops_per_execution(static_cast<BbFunction>(42), CellConfig{}), std::invalid_argument);
}

TEST_CASE("UL FFT rate matches a symbol-by-symbol walk of one TDD period")
{
    const CellConfig c{};
    const TddPattern& t = c.tdd;
    // D D D S U, special slot split DL/guard/UL.
    int ul_symbols = 0;
    for (int slot = 0; slot < t.period_slots(); ++slot) {
        for (int sym = 0; sym < 14; ++sym) {
            if (slot > t.dl_slots)
                ++ul_symbols;
            else if (slot == t.dl_slots && sym >= t.special_dl_syms + t.special_guard_syms)
                ++ul_symbols;
        }
    }
    CHECK(ul_symbols == 16);
    const double period_s = t.period_slots() * c.t_slot_s();
    const double oracle = ul_symbols * c.n_ant_bs / period_s;
    CHECK(oracle == doctest::Approx(409600.0));
    CHECK(executions_per_second(BbFunction::FFT_UL, c, {0, 1.0, {}}) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("decoding rate matches the UL coded-bit budget")
{
    const CellConfig c{};
    // Coded bits received over one TDD period, divided into codewords.
    const double ul_res_per_period = 12.0 * c.n_prb * 16.0;
    const double bits = ul_res_per_period * c.n_layers * c.mod_order;
    const double oracle = bits / c.ldpc.n_coded / (5 * c.t_slot_s());
    CHECK(oracle == doctest::Approx(155402.5).epsilon(1e-6));
    const double rate = executions_per_second(BbFunction::CHANNEL_DECODING, c, {0, 1.0, {}});
    CHECK(rate == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(std::abs(rate - 1.553e5) / 1.553e5 < 1e-3);
}

TEST_CASE("zero occupancy executes nothing")
{
    const CellConfig c{};
    for (auto f : kAllFunctions)
        CHECK(executions_per_second(f, c, {0, 0.0, {}}) == 0.0);
    for (auto s : kAllSplits)
        CHECK(sector_cost(s, c, {0, 0.0, {}}).total() == 0.0);
}

TEST_CASE("full-load GOPS per function")
{
    const auto b = sector_cost(Split::S8, CellConfig{}, {0, 1.0, {}});
    auto g = [&](BbFunction f) { return b.gops[index_of(f)]; };
    CHECK(g(BbFunction::IFFT_DL) == doctest::Approx(65.43).epsilon(1e-3));
    CHECK(g(BbFunction::FFT_UL) == doctest::Approx(20.13).epsilon(1e-3));
    CHECK(g(BbFunction::UL_CHAN_EST) == doctest::Approx(37.19).epsilon(1e-3));
    CHECK(g(BbFunction::MIMO_DETECT) == doctest::Approx(13.42).epsilon(1e-3));
    CHECK(g(BbFunction::DL_CHAN_EST) == doctest::Approx(90.74).epsilon(1e-3));
    CHECK(g(BbFunction::PRECODE_MATRIX) == doctest::Approx(61.57).epsilon(1e-3));
    CHECK(g(BbFunction::PRECODE_APPLY) == doctest::Approx(279.10).epsilon(1e-3));
    CHECK(g(BbFunction::DEMODULATION) == doctest::Approx(281.12).epsilon(1e-3));
    CHECK(g(BbFunction::CHANNEL_CODING) == doctest::Approx(6.54).epsilon(1e-3));
    CHECK(g(BbFunction::CHANNEL_DECODING) == doctest::Approx(28.15).epsilon(1e-3));
    CHECK(b.total() == doctest::Approx(883.39).epsilon(1e-4));
}

TEST_CASE("side split at the extremes")
{
    const CellConfig c{};
    const LoadPoint l{0, 0.6, {}};
    CHECK(sector_cost(Split::S8, c, l).bbl_gops == 0.0);
    CHECK(sector_cost(Split::S6, c, l).bbh_gops == 0.0);
    const auto a = sector_cost(Split::S7a, c, l);
    const auto b = sector_cost(Split::S7b, c, l);
    CHECK(a.bbh_gops == b.bbh_gops);
    CHECK(a.bbl_gops == b.bbl_gops);
}

TEST_CASE("total cost is split-invariant, linear and monotone in occupancy")
{
    const CellConfig c{};
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        const double ref = sector_cost(Split::S8, c, {0, x, {}}).total();
        for (auto s : kAllSplits) {
            const auto bx = sector_cost(s, c, {0, x, {}});
            CHECK(bx.total() == doctest::Approx(ref).epsilon(1e-12));
            CHECK(bx.bbh_gops + bx.bbl_gops == doctest::Approx(bx.total()));
            const auto by = sector_cost(s, c, {0, y, {}});
            const auto bs = sector_cost(s, c, {0, x * 0.5 + y * 0.5, {}});
            CHECK(bs.bbh_gops == doctest::Approx(0.5 * (bx.bbh_gops + by.bbh_gops)));
            CHECK(bs.bbl_gops == doctest::Approx(0.5 * (bx.bbl_gops + by.bbl_gops)));
            if (x < y)
                CHECK(bx.total() <= by.total());
        }
    }
}

TEST_CASE("BBL share grows as the split moves away from the BBH")
{
    const CellConfig c{};
    for (std::size_t i = 1; i < kSplitCount; ++i) {
        const auto prev = sector_cost(kAllSplits[i - 1], c, {0, 1.0, {}});
        const auto cur = sector_cost(kAllSplits[i], c, {0, 1.0, {}});
        CHECK(cur.bbl_gops >= prev.bbl_gops);
    }
}

TEST_CASE("load point validation")
{
    CHECK_THROWS_AS((LoadPoint{0, 1.5, {}}.validate()), InputError);
    CHECK_THROWS_AS((LoadPoint{0, -0.1, {}}.validate()), InputError);
    CHECK_THROWS_AS((LoadPoint{0, std::nan(""), {}}.validate()), InputError);
    CHECK_NOTHROW((LoadPoint{0, 0.0, {}}.validate()));
}

TEST_CASE("op-count overrides")
{
    OpCountTable t = OpCountTable::defaults();
    t.apply_overrides({{"FFT_UL", {{"ops", 1}}}});
    CHECK(ops_per_execution(BbFunction::FFT_UL, CellConfig{}, t) == 1);
    CHECK(ops_per_execution(BbFunction::IFFT_DL, CellConfig{}, t) == 49152);

    auto path_of = [](const nlohmann::json& j) -> std::string {
        OpCountTable x = OpCountTable::defaults();
        try {
            x.apply_overrides(j);
        } catch (const InputError& e) {
            return e.path();
        }
        return "";
    };
    CHECK(path_of({{"FFT_UL", {{"flops", 1}}}}) == "op_counts.FFT_UL.flops");
    CHECK(path_of({{"FFT", {{"ops", 1}}}}) == "op_counts.FFT");
    CHECK(path_of({{"FFT_UL", {{"ops", -3}}}}) == "op_counts.FFT_UL.ops");
    CHECK(path_of({{"FFT_UL", {{"exponents", {{"WIDTH", 1}}}}}}) == "op_counts.FFT_UL.exponents.WIDTH");
}

TEST_CASE("granularity table hash is stable hex")
{
    const auto h = granularity_table_hash();
    CHECK(h.size() == 16);
    CHECK(h == granularity_table_hash());
    CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
}
