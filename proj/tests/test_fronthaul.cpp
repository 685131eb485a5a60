#include <doctest.h>

#include <random>
#include <vector>

#include "splitsel/fronthaul.hpp"

using namespace splitsel;

namespace {

LoadPoint at(double occ) { return {0, occ, {}}; }

} // namespace

TEST_CASE("S8 rate from a per-symbol sum over one TDD period")
{
    const CellConfig c{};
    const double bits_per_symbol = 64.0 * (4096 + 292) * 32; // antennas x samples x IQ bits
    double dl_bits = 0.0;
    double ul_bits = 0.0;
    for (int slot = 0; slot < 5; ++slot) {
        for (int sym = 0; sym < 14; ++sym) {
            const bool dl = slot < 3 || (slot == 3 && sym < 10);
            const bool ul = slot == 4 || (slot == 3 && sym >= 12);
            dl_bits += dl ? bits_per_symbol : 0.0;
            ul_bits += ul ? bits_per_symbol : 0.0;
        }
    }
    const double period_s = 70 * 35.7e-6;
    const auto fh = sector_fh(Split::S8, c, at(1.0));
    CHECK(fh.dl_gbps == doctest::Approx(dl_bits / period_s / 1e9).epsilon(1e-12));
    CHECK(fh.ul_gbps == doctest::Approx(ul_bits / period_s / 1e9).epsilon(1e-12));
    CHECK(fh.dl_gbps == doctest::Approx(187.0).epsilon(1e-3));
    CHECK(fh.ul_gbps == doctest::Approx(57.5).epsilon(1e-3));
    CHECK(sector_fh_peak(Split::S8, c, at(1.0)).dl_gbps == doctest::Approx(251.7).epsilon(1e-3));
}

TEST_CASE("full-load rates for the remaining splits")
{
    const CellConfig c{};
    const auto r = [&](Split s) { return sector_fh(s, c, at(1.0)); };
    CHECK(r(Split::S7a).dl_gbps == doctest::Approx(139.6).epsilon(1e-3));
    CHECK(r(Split::S7a).ul_gbps == doctest::Approx(42.96).epsilon(1e-3));
    CHECK(r(Split::S7b).dl_gbps == doctest::Approx(139.6).epsilon(1e-3));
    CHECK(r(Split::S7c).dl_gbps == doctest::Approx(34.90).epsilon(1e-3));
    CHECK(r(Split::S7c).ul_gbps == doctest::Approx(10.74).epsilon(1e-3));
    CHECK(r(Split::S7d).dl_gbps == doctest::Approx(6.544).epsilon(1e-3));
    CHECK(r(Split::S7d).ul_gbps == doctest::Approx(16.11).epsilon(1e-3));
    CHECK(r(Split::S6).dl_gbps == doctest::Approx(4.256).epsilon(1e-3));
    CHECK(r(Split::S6).ul_gbps == doctest::Approx(1.310).epsilon(1e-3));
}

TEST_CASE("S8 and S7a are constant in occupancy, the rest linear through the origin")
{
    const CellConfig c{};
    for (auto s : kAllSplits) {
        const auto full = sector_fh(s, c, at(1.0));
        for (double x : {0.0, 0.1, 0.37, 0.8}) {
            const auto fx = sector_fh(s, c, at(x));
            if (s == Split::S8 || s == Split::S7a) {
                CHECK(fx.dl_gbps == full.dl_gbps);
                CHECK(fx.ul_gbps == full.ul_gbps);
            } else {
                CHECK(fx.dl_gbps == doctest::Approx(x * full.dl_gbps).epsilon(1e-12));
                CHECK(fx.ul_gbps == doctest::Approx(x * full.ul_gbps).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("DL rate never increases as the split moves towards the radio")
{
    const CellConfig c{};
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        for (std::size_t k = 1; k < kSplitCount; ++k)
            CHECK(sector_fh(kAllSplits[k - 1], c, at(x)).dl_gbps >= sector_fh(kAllSplits[k], c, at(x)).dl_gbps);
    }
}

TEST_CASE("UL softbits expand the S7d payload beyond S7c")
{
    const CellConfig c{};
    // Bits per RE per layer at each cut.
    CHECK(payload_bits_per_symbol(BoundaryKind::SOFTBITS, c, 1.0) / (c.n_layers * c.subcarriers()) == 48.0);
    CHECK(payload_bits_per_symbol(BoundaryKind::FREQ_IQ_OCC_PER_LAYER, c, 1.0) / (c.n_layers * c.subcarriers()) ==
          32.0);
    for (double x : {0.01, 0.5, 1.0})
        CHECK(sector_fh(Split::S7d, c, at(x)).ul_gbps > sector_fh(Split::S7c, c, at(x)).ul_gbps);
}

TEST_CASE("overhead scales every rate")
{
    const CellConfig c{};
    for (auto s : kAllSplits) {
        const auto a = sector_fh(s, c, at(0.5));
        const auto b = sector_fh(s, c, at(0.5), 1.25);
        CHECK(b.dl_gbps == doctest::Approx(1.25 * a.dl_gbps));
        CHECK(b.ul_gbps == doctest::Approx(1.25 * a.ul_gbps));
    }
}

TEST_CASE("site demand is the sum of sector demands")
{
    const std::vector<CellConfig> cells(3);
    const std::vector<LoadPoint> loads{{0, 0.2, {}}, {1, 0.5, {}}, {2, 0.9, {}}};
    const std::vector<Split> splits{Split::S7b, Split::S7d, Split::S6};
    const auto sum = site_fh(splits, cells, loads);
    FhDemand expect;
    for (std::size_t i = 0; i < 3; ++i)
        expect += sector_fh(splits[i], cells[i], loads[i]);
    CHECK(sum.dl_gbps == doctest::Approx(expect.dl_gbps));
    CHECK(sum.ul_gbps == doctest::Approx(expect.ul_gbps));

    const std::vector<Split> two{Split::S8, Split::S8};
    CHECK_THROWS_AS(site_fh(two, cells, loads), std::invalid_argument);
}

TEST_CASE("feasibility against a 40 Gb/s link")
{
    const std::vector<CellConfig> cells(3);
    const std::vector<LoadPoint> full{{0, 1.0, {}}, {1, 1.0, {}}, {2, 1.0, {}}};
    const FhLink link{};
    const std::vector<Split> s8(3, Split::S8);
    const std::vector<Split> s6(3, Split::S6);
    CHECK_FALSE(feasible(s8, cells, full, link));
    CHECK(feasible(s6, cells, full, link));
    CHECK(site_fh(s6, cells, full).dl_gbps == doctest::Approx(12.77).epsilon(1e-3));
    CHECK(feasible(s8, cells, full, FhLink::unlimited()));

    const FhDemand d{45.0, 10.0};
    CHECK(violation(d, link) == doctest::Approx(5.0));
    CHECK(violation({30.0, 30.0}, link) == 0.0);
    CHECK(fits({40.0, 40.0}, link));
}
