#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "splitsel/error.hpp"
#include "splitsel/optimizer.hpp"

using namespace splitsel;

namespace {

Site site_of(std::size_t n)
{
    Site s;
    s.cells.resize(n);
    return s;
}

std::vector<LoadPoint> loads_of(std::initializer_list<double> occ)
{
    std::vector<LoadPoint> out;
    int id = 0;
    for (double x : occ)
        out.push_back({id++, x, {}});
    return out;
}

struct Brute
{
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::vector<Split>> argmin;
    std::vector<double> all_feasible_values;
};

// Three nested loops; costs and FH summed here, not through the optimizer.
Brute brute_force_3(const Site& site, const std::vector<LoadPoint>& loads, double eps, double cap)
{
    Brute b;
    std::vector<std::vector<Split>> feasible;
    for (auto a : kAllSplits)
        for (auto c : kAllSplits)
            for (auto d : kAllSplits) {
                const Split x[3] = {a, c, d};
                double value = 0.0;
                double dl = 0.0;
                double ul = 0.0;
                for (int i = 0; i < 3; ++i) {
                    const auto cost = sector_cost(x[i], site.cells[i], loads[i]);
                    value += cost.bbh_gops + eps * cost.bbl_gops;
                    const auto fh = sector_fh(x[i], site.cells[i], loads[i]);
                    dl += fh.dl_gbps;
                    ul += fh.ul_gbps;
                }
                if (dl > cap || ul > cap)
                    continue;
                b.all_feasible_values.push_back(value);
                if (b.argmin.empty() || value < b.best - 1e-9 * b.best) {
                    b.best = value;
                    b.argmin.clear();
                }
                if (std::abs(value - b.best) <= 1e-9 * b.best + 1e-12)
                    b.argmin.push_back({a, c, d});
            }
    return b;
}

} // namespace

TEST_CASE("objective weights the BBL by epsilon")
{
    CHECK(Objective(2.0)(10.0, 5.0) == 20.0);
    CHECK_THROWS_AS(Objective(0.5), InputError);
    CHECK_THROWS_AS(Objective(std::numeric_limits<double>::infinity()), InputError);
}

TEST_CASE("evaluate reproduces the full-load objective per fixed split")
{
    const auto site = site_of(1);
    const auto loads = loads_of({1.0});
    const Objective obj(2.0);
    const auto v = [&](Split s) {
        return evaluate(std::vector<Split>{s}, site, loads, obj, FhLink::unlimited()).objective_value;
    };
    CHECK(v(Split::S8) == doctest::Approx(883.4).epsilon(1e-4));
    CHECK(v(Split::S7a) == doctest::Approx(969.0).epsilon(1e-4));
    CHECK(v(Split::S7b) == doctest::Approx(969.0).epsilon(1e-4));
    CHECK(v(Split::S7c) == doctest::Approx(1451.0).epsilon(1e-4));
    CHECK(v(Split::S7d) == doctest::Approx(1732.1).epsilon(1e-4));
    CHECK(v(Split::S6) == doctest::Approx(1766.8).epsilon(1e-4));
}

TEST_CASE("epsilon one makes every vector equally good")
{
    const auto site = site_of(3);
    const auto loads = loads_of({0.2, 0.5, 0.9});
    const auto sol = exhaustive_search(site, loads, Objective(1.0), FhLink{});
    CHECK(sol.feasible);
    CHECK(sol.optimal_set.size() == sol.feasible_combinations);
    // Tie-break: most centralized feasible vector first.
    for (const auto& t : sol.optimal_set)
        CHECK_FALSE(more_centralized(std::span<const Split>(t), std::span<const Split>(sol.splits)));
}

TEST_CASE("unlimited fronthaul selects all-S8")
{
    const auto site = site_of(3);
    for (double e : {1.01, 2.0, 5.0}) {
        const auto sol = exhaustive_search(site, loads_of({0.1, 0.6, 1.0}), Objective(e), FhLink::unlimited());
        CHECK(sol.splits == std::vector<Split>(3, Split::S8));
        CHECK(sol.evaluated == 216);
        CHECK(sol.feasible_combinations == 216);
    }
}

TEST_CASE("light load picks S7b everywhere under a 40 Gb/s link")
{
    const double occ = 0.2 * (1.0 / 3.0) * 3 * 0.35;
    const auto sol = exhaustive_search(site_of(3), loads_of({occ, occ, occ}), Objective(2.0), FhLink{});
    CHECK(sol.feasible);
    CHECK(sol.splits == std::vector<Split>(3, Split::S7b));
    // S7a ties with S7b on cost but carries the full grid.
    CHECK(std::find(sol.optimal_set.begin(), sol.optimal_set.end(), std::vector<Split>(3, Split::S7a)) ==
          sol.optimal_set.end());
}

TEST_CASE("nothing fits: least violation, flagged infeasible")
{
    const auto sol = exhaustive_search(site_of(1), loads_of({1.0}), Objective(2.0), FhLink{1e-6});
    CHECK_FALSE(sol.feasible);
    CHECK(sol.splits == std::vector<Split>{Split::S6});
    CHECK(sol.feasible_combinations == 0);
}

TEST_CASE("exhaustive search refuses large sites")
{
    const auto site = site_of(kExhaustiveMaxSectors + 1);
    std::vector<LoadPoint> loads(site.size());
    CHECK_THROWS_AS(exhaustive_search(site, loads, Objective(2.0), FhLink{}), std::invalid_argument);
    CHECK_NOTHROW(greedy_search(site, loads, Objective(2.0), FhLink{}));
}

TEST_CASE("exhaustive search matches a brute-force enumeration")
{
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> occ(0.0, 1.0);
    std::uniform_real_distribution<double> eps(1.0, 4.0);
    std::uniform_real_distribution<double> cap(5.0, 120.0);
    const auto site = site_of(3);
    int compared = 0;
    for (int k = 0; k < 150; ++k) {
        const auto loads = loads_of({occ(rng), occ(rng), occ(rng)});
        const double e = eps(rng);
        const double c = cap(rng);
        const auto brute = brute_force_3(site, loads, e, c);
        const auto sol = exhaustive_search(site, loads, Objective(e), FhLink{c});
        if (brute.argmin.empty()) {
            CHECK_FALSE(sol.feasible);
            continue;
        }
        ++compared;
        REQUIRE(sol.feasible);
        for (double v : brute.all_feasible_values)
            CHECK(sol.objective_value <= v + 1e-9 * v);
        CHECK(sol.objective_value == doctest::Approx(brute.best).epsilon(1e-12));
        CHECK(std::find(brute.argmin.begin(), brute.argmin.end(), sol.splits) != brute.argmin.end());
        CHECK(sol.optimal_set.size() == brute.argmin.size());
        CHECK(sol.feasible_combinations == brute.all_feasible_values.size());
    }
    CHECK(compared >= 100);
}

TEST_CASE("greedy is feasible whenever exhaustive is, and never better")
{
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> occ(0.0, 1.0);
    std::uniform_real_distribution<double> eps(1.0, 4.0);
    std::uniform_real_distribution<double> cap(2.0, 120.0);
    for (std::size_t n : {1u, 2u, 3u, 4u}) {
        const auto site = site_of(n);
        for (int k = 0; k < 40; ++k) {
            std::vector<LoadPoint> loads;
            for (std::size_t i = 0; i < n; ++i)
                loads.push_back({static_cast<int>(i), occ(rng), {}});
            const Objective obj(eps(rng));
            const FhLink link{cap(rng)};
            const auto best = exhaustive_search(site, loads, obj, link);
            const auto greedy = greedy_search(site, loads, obj, link);
            CHECK(greedy.feasible == best.feasible);
            if (best.feasible)
                CHECK(greedy.objective_value >= best.objective_value * (1 - 1e-12));
        }
    }
}

TEST_CASE("greedy with unlimited fronthaul is all-S8")
{
    const auto sol = greedy_search(site_of(3), loads_of({0.3, 0.9, 0.1}), Objective(2.0), FhLink::unlimited());
    CHECK(sol.splits == std::vector<Split>(3, Split::S8));
}

TEST_CASE("pct_diff")
{
    Solution a;
    Solution b;
    a.objective_value = 110.0;
    b.objective_value = 100.0;
    CHECK(pct_diff(a, b) == doctest::Approx(10.0));
    b.objective_value = 0.0;
    CHECK_THROWS_AS(pct_diff(a, b), std::domain_error);
}

TEST_CASE("optimum objective is non-decreasing in epsilon")
{
    const auto site = site_of(3);
    const auto loads = loads_of({0.3, 0.4, 0.5});
    double prev = 0.0;
    for (double e = 1.0; e <= 4.0; e += 0.25) {
        const auto sol = exhaustive_search(site, loads, Objective(e), FhLink{});
        CHECK(sol.objective_value >= prev);
        prev = sol.objective_value;
    }
}

TEST_CASE("scaling capacity and every overhead together leaves the choice unchanged")
{
    auto site = site_of(3);
    const auto loads = loads_of({0.25, 0.45, 0.65});
    const auto a = exhaustive_search(site, loads, Objective(2.0), FhLink{40.0});
    site.fh_overhead = 2.0;
    const auto b = exhaustive_search(site, loads, Objective(2.0), FhLink{80.0});
    CHECK(a.splits == b.splits);
    CHECK(a.objective_value == doctest::Approx(b.objective_value));
}

TEST_CASE("method names")
{
    CHECK(parse_method("greedy") == SearchMethod::Greedy);
    CHECK(to_string(SearchMethod::Exhaustive) == "exhaustive");
    CHECK_THROWS_AS(parse_method("annealing"), InputError);
}
