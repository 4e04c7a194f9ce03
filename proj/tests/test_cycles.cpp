#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "boldwalk/cycles.hpp"
#include "boldwalk/model.hpp"
#include "boldwalk/rng.hpp"
#include "boldwalk/stats.hpp"
#include "oracles.hpp"

using namespace boldwalk;

TEST_SUITE_BEGIN("cycles");

TEST_CASE("exit-time oracle sanity: mean solves the difference equation") {
    // E[m(z)] = 2z - 1 from the tridiagonal solve, matched at several z.
    CHECK(oracles::mean_exit_time(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(oracles::mean_exit_time(2, 1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(oracles::mean_exit_time(7, 6) == doctest::Approx(13.0).epsilon(1e-11));
    CHECK(oracles::mean_exit_time(10, 9) == doctest::Approx(19.0).epsilon(1e-11));
    // Center start of [-z, z] has the classical z^2 mean.
    CHECK(oracles::mean_exit_time(6, 0) == doctest::Approx(36.0).epsilon(1e-11));
}

TEST_CASE("lazy-journey sampler: degenerate and small cases") {
    Rng rng(21, 0);
    for (int i = 0; i < 10; ++i) CHECK(cycles::sample_m(1, rng) == 1);
    // Parity: m(z) from start z-1 always has parity of 1 (odd) ...
    for (int i = 0; i < 200; ++i) CHECK((cycles::sample_m(3, rng) & 1) == 1);
    // ... and mean 2z - 1.
    const int n = 4000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = static_cast<double>(cycles::sample_m(10, rng));
    const auto est = stats::mean_se(draws);
    CHECK(std::fabs(est.value - oracles::mean_exit_time(10, 9)) < 3.0 * est.se);
}

TEST_CASE("exit-time pmf: hand values at z = 2") {
    const auto dp = cycles::exit_time_pmf(2, 9);
    REQUIRE(dp.pmf.size() == 9);
    CHECK(dp.pmf[0] == doctest::Approx(0.5).epsilon(1e-15));   // m = 1
    CHECK(dp.pmf[1] == doctest::Approx(0.0));                  // m = 2
    CHECK(dp.pmf[2] == doctest::Approx(0.25).epsilon(1e-15));  // m = 3
    CHECK(dp.pmf[3] == doctest::Approx(0.0));                  // m = 4
    CHECK(dp.pmf[4] == doctest::Approx(0.125).epsilon(1e-15)); // m = 5
    const double mass = std::accumulate(dp.pmf.begin(), dp.pmf.end(), 0.0);
    CHECK(mass + dp.tail == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exit-time pmf agrees with the closed-form transform") {
    // z = 5, s_max chosen so the unresolved tail is ~1e-13.
    const auto dp = cycles::exit_time_pmf(5, 700);
    CHECK(dp.tail < 1e-12);
    for (double l : {0.05, 0.3, 1.0}) {
        double sum = 0.0;
        for (std::size_t s = 0; s < dp.pmf.size(); ++s)
            sum += dp.pmf[s] * std::exp(-l * static_cast<double>(s + 1));
        CHECK(sum == doctest::Approx(model::laplace_m(l, 5)).epsilon(1e-10));
    }
}

TEST_CASE("exit-time pmf reproduces the exact second moment") {
    // E[m^2(z)] = (8/3) z^3 - (8/3) z + 1.
    for (std::int64_t z : {2, 3, 6}) {
        const auto dp = cycles::exit_time_pmf(z, 80 * z * z);
        CHECK(dp.tail < 1e-12);
        double m2 = 0.0;
        for (std::size_t s = 0; s < dp.pmf.size(); ++s) {
            const double sv = static_cast<double>(s + 1);
            m2 += dp.pmf[s] * sv * sv;
        }
        CHECK(m2 == doctest::Approx(oracles::second_moment_exit_time(z))
                        .epsilon(1e-9));
    }
    // The (8/3) z^3 asymptote is within 1% by z = 20.
    const auto dp20 = cycles::exit_time_pmf(20, 20'000);
    double m2 = 0.0;
    for (std::size_t s = 0; s < dp20.pmf.size(); ++s) {
        const double sv = static_cast<double>(s + 1);
        m2 += dp20.pmf[s] * sv * sv;
    }
    m2 += dp20.tail * 20'000.0 * 20'000.0; // crude cap on what the tail adds
    const double asym = 8.0 / 3.0 * 20.0 * 20.0 * 20.0;
    CHECK(std::fabs(m2 / asym - 1.0) < 0.01);

    CHECK_THROWS_AS(cycles::exit_time_pmf(100'000, 100'000'000),
                    std::invalid_argument); // work guard
    CHECK_THROWS_AS(cycles::exit_time_pmf(0, 10), std::invalid_argument);
}

TEST_CASE("lazy-journey sampler matches the pmf (chi-square)") {
    const std::int64_t z = 3;
    const int n = 20'000;
    const auto dp = cycles::exit_time_pmf(z, 4000);
    Rng rng(87, 4);
    // Bin odd durations 1, 3, 5, ..., pooling the far tail.
    std::vector<double> observed, expected;
    std::vector<std::int64_t> edges;
    double pooled = 1.0;
    for (std::int64_t s = 1; s <= 41; s += 2) {
        const double p = dp.pmf[static_cast<std::size_t>(s - 1)];
        if (p * n >= 5.0) {
            edges.push_back(s);
            expected.push_back(p * n);
            pooled -= p;
        }
    }
    expected.push_back(pooled * n);
    observed.assign(expected.size(), 0.0);
    for (int i = 0; i < n; ++i) {
        const std::int64_t m = cycles::sample_m(z, rng);
        bool binned = false;
        for (std::size_t b = 0; b < edges.size(); ++b)
            if (m == edges[b]) {
                observed[b] += 1.0;
                binned = true;
                break;
            }
        if (!binned) observed.back() += 1.0;
    }
    const double stat = stats::chi_square_stat(observed, expected);
    CHECK(stat < stats::chi_square_critical_99(
                     static_cast<int>(expected.size()) - 1));
}

TEST_CASE("active-run sampler: geometric at gamma = 0") {
    Rng rng(5, 5);
    const int n = 20'000;
    std::vector<long> ge(4, 0);
    for (int i = 0; i < n; ++i) {
        const std::int64_t v = cycles::sample_n(100, 0.0, rng);
        for (int j = 1; j <= 4; ++j) ge[j - 1] += (v >= j) ? 1 : 0;
    }
    for (int j = 1; j <= 4; ++j) {
        const double p = std::pow(0.5, j);
        const double se = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::fabs(static_cast<double>(ge[j - 1]) / n - p) < 4.0 * se);
    }
}

TEST_CASE("cycle records satisfy the clock identity") {
    Rng rng(111, 3);
    const auto recs = cycles::run_cycles(0.5, cycles::CycleStop::at_k(200), rng);
    REQUIRE(recs.size() == 200);
    std::int64_t sum_m = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        CHECK(r.k == static_cast<std::int64_t>(i) + 1);
        sum_m += r.m;
        // t(k) = z(k) + sum of lazy journeys + (k - 1) outward launches.
        CHECK(r.t == r.z + sum_m + (r.k - 1));
        CHECK(r.n >= 0);
        CHECK(r.m >= (i == 0 ? 0 : 1));
        if (i > 0) {
            CHECK(r.t > recs[i - 1].t);
            CHECK(r.z >= recs[i - 1].z);
        }
    }
    CHECK(recs[0].m == 0);
    CHECK(recs[0].z == recs[0].t); // all first-cycle steps are outward or none

    Rng rng2(111, 4);
    const auto by_t = cycles::run_cycles(0.5, cycles::CycleStop::at_t(5000), rng2);
    REQUIRE(by_t.size() >= 2);
    CHECK(by_t.back().t >= 5000);
    CHECK(by_t[by_t.size() - 2].t < 5000);

    Rng rng3(1, 1);
    CHECK_THROWS_AS(cycles::run_cycles(0.5, {0, 0}, rng3), std::invalid_argument);
    CHECK_THROWS_AS(cycles::run_cycles(0.5, {3, 3}, rng3), std::invalid_argument);
}

TEST_CASE("z reconstruction from cycle records") {
    // Hand-built pair of records: cycle 1 climbs to 3 at t = 3, cycle 2 has
    // m = 4 lazy steps, then 1 launch + 1 outward step ending at t = 9, z = 4.
    const std::vector<cycles::CycleRecord> recs{
        {1, 3, 3, 0, 2}, {2, 9, 4, 4, 1}};
    for (std::int64_t t = 1; t <= 3; ++t)
        CHECK(cycles::reconstruct_z(recs, t) == t);
    for (std::int64_t t = 4; t <= 8; ++t)
        CHECK(cycles::reconstruct_z(recs, t) == 3);
    CHECK(cycles::reconstruct_z(recs, 9) == 4);
    CHECK_THROWS_AS(cycles::reconstruct_z(recs, 0), std::invalid_argument);
    CHECK_THROWS_AS(cycles::reconstruct_z(recs, 10), std::invalid_argument);

    // Round trip against the slow truth on a simulated run.
    Rng rng(9, 9);
    const auto run = cycles::run_cycles(0.25, cycles::CycleStop::at_t(2000), rng);
    std::int64_t prev = 0;
    for (std::int64_t t = 1; t <= 2000; ++t) {
        const std::int64_t z = cycles::reconstruct_z(run, t);
        CHECK(z >= prev);
        CHECK(z <= t);
        prev = z;
    }
    // At each record time the reconstruction must equal the record.
    for (const auto& r : run)
        if (r.t <= 2000) CHECK(cycles::reconstruct_z(run, r.t) == r.z);
}

TEST_CASE("L(k) accumulates lazy time over k^2") {
    const std::vector<cycles::CycleRecord> recs{
        {1, 3, 3, 0, 2}, {2, 9, 4, 4, 1}};
    CHECK(cycles::l_of_k(recs) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<cycles::CycleRecord> one{{1, 3, 3, 0, 2}};
    CHECK_THROWS_AS(cycles::l_of_k(one), std::invalid_argument);
}

TEST_CASE("L(k) matches the diffusive limit law at gamma = 0") {
    // At gamma = 0, z(k) ~ k and L(k) converges to the Brownian exit time T:
    // E[e^{-lambda L}] -> 1/cosh(sqrt(2 lambda)).
    const int reps = 2000;
    const std::int64_t k = 1000;
    std::vector<double> ls(reps);
    for (int r = 0; r < reps; ++r) {
        Rng rng(606, static_cast<std::uint64_t>(r));
        ls[r] = cycles::l_of_k(cycles::run_cycles(0.0, cycles::CycleStop::at_k(k), rng));
    }
    for (double l : {0.5, 1.0, 2.0}) {
        const auto est = stats::empirical_laplace(ls, l);
        CHECK(std::fabs(est.value - model::limit_laplace_T(l)) < 0.02);
    }
}

TEST_CASE("L(k) approaches the Levy limit from one side for gamma = 1/4") {
    // The finite-k Laplace value exceeds e^{-sqrt(2 lambda)} and the gap
    // shrinks like k^{-gamma}; check the decrease between k = 50 and k = 1000.
    const double target = model::limit_laplace_L(1.0);
    auto gap_at = [&](std::int64_t k, std::uint64_t salt) {
        const int reps = 1200;
        std::vector<double> ls(reps);
        for (int r = 0; r < reps; ++r) {
            Rng rng(salt, static_cast<std::uint64_t>(r));
            ls[r] = cycles::l_of_k(
                cycles::run_cycles(0.25, cycles::CycleStop::at_k(k), rng));
        }
        return stats::empirical_laplace(ls, 1.0).value - target;
    };
    const double gap_small = gap_at(50, 71);
    const double gap_large = gap_at(1000, 72);
    CHECK(gap_small > 0.0);
    CHECK(gap_large > 0.0);
    CHECK(gap_small > gap_large + 0.015);
}

TEST_CASE("Wald identity holds for the stopped walk") {
    Rng rng(404, 0);
    const auto est = cycles::wald_identity_check(0.3, -5, 3, 4000, rng);
    CHECK(std::fabs(est.value - 1.0) < 3.0 * est.se);
    CHECK(est.se < 0.05);
    // Tiny theta: the martingale is constant 1 up to rounding.
    const auto tiny = cycles::wald_identity_check(1e-12, -4, 4, 50, rng);
    CHECK(tiny.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(cycles::wald_identity_check(0.0, -5, 3, 100, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(cycles::wald_identity_check(0.3, 1, 3, 100, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(cycles::wald_identity_check(0.3, -5, 3, 1, rng),
                    std::invalid_argument);
}

TEST_SUITE_END();
