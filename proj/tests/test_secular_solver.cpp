#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/secular_solver.hpp"

using namespace ptwell;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("secular residual values", "[secular]") {
    CHECK_THAT(secular_residual(pi / 2, 0.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(secular_residual(pi, 0.0), WithinAbs(0.0, 1e-15));
    const double reference = static_cast<double>(oracle::secular(oracle::mp_pi() / 2, 1));
    CHECK_THAT(secular_residual(pi / 2, 1.0), WithinRel(reference, 1e-14));
    CHECK_THAT(reference, WithinAbs(0.2166104117205191, 1e-15));
    CHECK_THROWS_AS(secular_residual(0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(secular_residual(-1.0, 1.0), InvalidParameter);
}

TEST_CASE("Hermitian limit places roots at (n+1)pi/2", "[secular]") {
    for (int n = 0; n <= 10; ++n) {
        const auto r = solve_level(n, 0.0);
        CHECK_THAT(r.s, WithinAbs(level_center(n), 1e-12));
        CHECK(r.t == 0.0);
        CHECK_THAT(r.energy(), WithinRel(level_center(n) * level_center(n), 1e-12));
    }
}

TEST_CASE("roots agree with a 50-digit bisection", "[secular]") {
    for (double z : {0.1, 0.5, 1.0, 2.0, -1.5}) {
        for (int n = 0; n <= 12; ++n) {
            const auto r = solve_level(n, z);
            INFO("n=" << n << " z=" << z);
            CHECK_THAT(r.s, WithinAbs(static_cast<double>(oracle::root_s(n, z)), 1e-12));
            CHECK_THAT(r.q, WithinRel(oracle::root_q(n, z), 1e-9));
        }
    }
}

TEST_CASE("Q_0 at unit strength is close to its leading term", "[secular]") {
    const auto r = solve_level(0, 1.0);
    CHECK_THAT(r.q, WithinRel(4.0 / (pi * pi * pi), 0.10));
    CHECK_THAT(r.q, WithinAbs(0.122643603257, 1e-11));
}

TEST_CASE("levels stay inside their windows for moderate strength", "[secular][property]") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> strength(-4.0, 4.0);
    for (int trial = 0; trial < 40; ++trial) {
        const double z = strength(rng);
        for (int n = 0; n <= 9; ++n) {
            const auto r = solve_level(n, z);
            INFO("n=" << n << " z=" << z);
            CHECK(std::abs(r.s - level_center(n)) < pi / 4);
            CHECK(std::abs(secular_residual(r.s, z)) < 1e-9 * (n + 1));
            CHECK_THAT(r.z_eff(), WithinAbs(z, 1e-12));
        }
    }
}

TEST_CASE("the sign of z_eff does not move the roots", "[secular][property]") {
    for (int n = 0; n <= 6; ++n) {
        CHECK(solve_level(n, 1.7).s == solve_level(n, -1.7).s);
        CHECK(solve_level(n, 1.7).t == -solve_level(n, -1.7).t);
    }
}

TEST_CASE("merged pair raises RootNotFound", "[secular]") {
    CHECK_THROWS_AS(solve_level(0, 4.6), RootNotFound);
    CHECK_THROWS_AS(solve_level(1, 4.6), RootNotFound);
    CHECK_NOTHROW(solve_level(2, 4.6));
    CHECK_THROWS_AS(solve_level(-1, 1.0), InvalidParameter);
    CHECK_THROWS_AS(solve_level(0, 1.0, 0.0), InvalidParameter);
}

TEST_CASE("roots just below coalescence are both found", "[secular]") {
    const auto event = find_critical_z(0.0, 0);
    const double z = event.z_critical - 1e-7;
    const auto lower = solve_level(0, z);
    const auto upper = solve_level(1, z);
    CHECK(lower.s < upper.s);
    CHECK(upper.s - lower.s < 1e-2);
    CHECK_THAT(lower.s, WithinAbs(event.s_merge, 1e-2));
}

TEST_CASE("spectrum at the crossing point is degenerate", "[secular]") {
    const auto result = solve_spectrum(CouplingParams(1, 1, 0), 3);
    REQUIRE(result.levels.size() == 8);
    CHECK(result.physical);
    const auto up = result.sector(Spin::up);
    const auto down = result.sector(Spin::down);
    for (int n = 0; n <= 3; ++n) CHECK_THAT(up[n].energy(), WithinAbs(down[n].energy(), 1e-10));
    for (std::size_t i = 0; i + 1 < result.levels.size(); ++i) {
        CHECK(result.levels[i].energy() <= result.levels[i + 1].energy());
    }
}

TEST_CASE("spectrum depends on X and Y only through their product", "[secular]") {
    const auto a = solve_spectrum(CouplingParams(2, 0.5, 0.3), 6);
    const auto b = solve_spectrum(CouplingParams(1, 1, 0.3), 6);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        CHECK_THAT(a.levels[i].energy(), WithinAbs(b.levels[i].energy(), 1e-12));
    }
}

TEST_CASE("spectrum beyond the boundary is flagged", "[secular]") {
    const auto result = solve_spectrum(CouplingParams(1e-12, 1e-12, 5.0), 1);
    CHECK_FALSE(result.physical);
    REQUIRE(result.first_complex_pair.has_value());
    CHECK(result.first_complex_pair->n == 0);
    CHECK_THROWS_AS(solve_spectrum(CouplingParams(1, 1, 0), -1), InvalidParameter);
}

TEST_CASE("critical strength of the lowest pair", "[secular][merge]") {
    const auto start = std::chrono::steady_clock::now();
    const auto event = find_critical_z(0.0, 0);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(seconds < 1.0);
    CHECK_THAT(event.z_critical, WithinAbs(4.48, 0.02));

    const auto [z_ref, s_ref] = oracle::tangency();
    CHECK_THAT(z_ref, WithinAbs(4.4753086021932552, 1e-12));
    CHECK_THAT(event.z_critical, WithinAbs(z_ref, 1e-9));
    CHECK_THAT(event.s_merge, WithinAbs(s_ref, 1e-6));
}

TEST_CASE("critical strength is shifted by sqrt(xy)", "[secular][merge]") {
    const auto base = find_critical_z(0.0, 0);
    for (double xy : {0.25, 1.0, 4.0}) {
        const auto event = find_critical_z(xy, 0);
        CHECK_THAT(event.critical_z, WithinAbs(base.z_critical - std::sqrt(xy), 1e-12));
    }
    const auto coarse = find_critical_z(0.0, 0, 1e-6);
    const auto fine = find_critical_z(0.0, 0, 1e-10);
    CHECK_THAT(coarse.z_critical, WithinAbs(fine.z_critical, 1e-6));
}

TEST_CASE("higher pairs merge at larger strength", "[secular][merge]") {
    double previous = 0.0;
    for (int n : {0, 2, 4}) {
        const auto event = find_critical_z(0.0, n);
        CHECK(event.z_critical > previous);
        CHECK_THROWS_AS(solve_level(n, event.z_critical + 1e-6), RootNotFound);
        CHECK_NOTHROW(solve_level(n, event.z_critical - 1e-6));
        previous = event.z_critical;
    }
    CHECK_THROWS_AS(find_critical_z(0.0, 1), NoMerge);
    CHECK_THROWS_AS(find_critical_z(-1.0, 0), InvalidParameter);
    CHECK_THROWS_AS(find_critical_z(0.0, 40, 1e-12, MergeSearch{5.0, 0.5}), NoMerge);
}

TEST_CASE("phase scan rows and boundary", "[secular][phase]") {
    const std::vector<double> xy{0.0, 1.0};
    const std::vector<double> z{0.0, 4.0};
    const auto rows = phase_scan(xy, z, 1, 1);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].physical);
    CHECK(rows[3].xy == 1.0);
    CHECK(rows[3].z == 4.0);
    CHECK_FALSE(rows[3].physical);

    std::vector<double> fine_z;
    for (int i = 0; i < 500; ++i) fine_z.push_back(0.01 * i);
    const std::vector<double> products{0.0, 0.25, 1.0, 4.0};
    const auto serial = phase_scan(products, fine_z, 1, 1);
    const auto threaded = phase_scan(products, fine_z, 1, 3);
    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].physical == threaded[i].physical);

    const double z_crit = find_critical_z(0.0, 0).z_critical;
    for (const auto& point : extract_boundary(serial)) {
        REQUIRE(point.z_star.has_value());
        CHECK_THAT(*point.z_star + std::sqrt(point.xy), WithinAbs(z_crit, 0.01));
    }
}

TEST_CASE("phase scan records invalid rows instead of failing", "[secular][phase]") {
    const std::vector<double> xy{-1.0};
    const std::vector<double> z{0.0};
    const auto rows = phase_scan(xy, z, 1, 1);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].physical);
}
