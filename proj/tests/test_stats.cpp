#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "boldwalk/model.hpp"
#include "boldwalk/rng.hpp"
#include "boldwalk/stats.hpp"

using namespace boldwalk;

TEST_SUITE_BEGIN("stats");

TEST_CASE("mean and standard error") {
    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    const auto est = stats::mean_se(xs);
    CHECK(est.value == doctest::Approx(2.5).epsilon(1e-15));
    // sd = sqrt(5/3), se = sd/2.
    CHECK(est.se == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-12));
    const std::vector<double> c{7.0, 7.0, 7.0};
    CHECK(stats::mean_se(c).se == doctest::Approx(0.0));
}

TEST_CASE("empirical Laplace transform") {
    std::vector<double> xs{0.5, 1.5};
    const auto exact = stats::empirical_laplace(xs, 2.0);
    CHECK(exact.value ==
          doctest::Approx((std::exp(-1.0) + std::exp(-3.0)) / 2.0).epsilon(1e-14));
    CHECK(stats::empirical_laplace(xs, 0.0).value == doctest::Approx(1.0));
    CHECK(stats::empirical_laplace(xs, 0.0).se == doctest::Approx(0.0));

    // Exp(1) sample against 1/(1 + lambda).
    Rng rng(808, 11);
    std::vector<double> es(100'000);
    for (auto& e : es) e = -std::log(1.0 - rng.next_double());
    for (double l : {0.5, 1.0, 3.0}) {
        const auto est = stats::empirical_laplace(es, l);
        CHECK(std::fabs(est.value - 1.0 / (1.0 + l)) < 3.5 * est.se);
    }
    const std::vector<double> neg{-0.1, 1.0};
    CHECK_THROWS_AS(stats::empirical_laplace(neg, 1.0), std::invalid_argument);
}

TEST_CASE("one-sample Kolmogorov-Smirnov distance") {
    // Point mass at 0 against Exp(1): D = 1.
    const std::vector<double> zeros(10, 0.0);
    auto expcdf = [](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x); };
    CHECK(stats::ks_distance(zeros, expcdf) == doctest::Approx(1.0));

    // Uniform draws against the uniform cdf stay below the 1% critical value.
    Rng rng(33, 0);
    std::vector<double> us(50'000);
    for (auto& u : us) u = rng.next_double();
    const double d =
        stats::ks_distance(us, [](double x) { return std::min(1.0, std::max(0.0, x)); });
    CHECK(d < stats::ks_critical_1pct(static_cast<double>(us.size())));
    CHECK(d > 0.0);

    // A decreasing "cdf" is rejected.
    CHECK_THROWS_AS(stats::ks_distance(us, [](double x) { return -x; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(stats::ks_distance({}, expcdf), std::invalid_argument);
}

TEST_CASE("two-sample Kolmogorov-Smirnov distance") {
    Rng rng(34, 0);
    std::vector<double> a(20'000), b(20'000), c(20'000);
    for (auto& v : a) v = rng.next_normal();
    for (auto& v : b) v = rng.next_normal();
    for (auto& v : c) v = rng.next_normal() + 0.5;
    const double same = stats::ks_distance_two_sample(a, b);
    const double diff = stats::ks_distance_two_sample(a, c);
    CHECK(same < stats::ks_critical_1pct_two_sample(20'000, 20'000));
    CHECK(diff > 5.0 * same);
    // Identical samples are at distance zero.
    CHECK(stats::ks_distance_two_sample(a, a) == doctest::Approx(0.0));
}

TEST_CASE("lattice-aware tail distance") {
    // xs = {1, 1, 2}: attained values 1 and 2 with empirical tails 1 and 1/3.
    const std::vector<double> xs{1.0, 1.0, 2.0};
    const double d =
        stats::tail_sup_distance(xs, [](double v) { return std::exp(-v); });
    const double expected =
        std::max(std::fabs(1.0 - std::exp(-1.0)),
                 std::fabs(1.0 / 3.0 - std::exp(-2.0)));
    CHECK(d == doctest::Approx(expected).epsilon(1e-14));

    // Geometric sample against its own survival: small distance even though
    // the law is purely atomic (where a continuous KS would saturate).
    Rng rng(35, 0);
    std::vector<double> gs(50'000);
    for (auto& g : gs) {
        double v = 1.0;
        while (rng.next_bool()) v += 1.0;
        g = v;
    }
    const double dg = stats::tail_sup_distance(
        gs, [](double v) { return std::pow(0.5, std::floor(v) - 1.0); });
    CHECK(dg < 0.01);
}

TEST_CASE("frozen critical values") {
    CHECK(stats::ks_critical_1pct(100.0) == doctest::Approx(0.1628).epsilon(1e-12));
    CHECK(stats::ks_critical_1pct_two_sample(100.0, 100.0) ==
          doctest::Approx(1.628 * std::sqrt(2.0 / 100.0)).epsilon(1e-12));
    // 99th percentile of chi-square(10) is 23.209; the Wilson-Hilferty
    // approximation is good to ~0.2% here.
    CHECK(stats::chi_square_critical_99(10) == doctest::Approx(23.21).epsilon(0.01));
    CHECK(stats::chi_square_critical_99(1) == doctest::Approx(6.635).epsilon(0.05));
}

TEST_CASE("chi-square statistic") {
    const std::vector<double> obs{5.0, 5.0};
    const std::vector<double> exp{4.0, 6.0};
    CHECK(stats::chi_square_stat(obs, exp) ==
          doctest::Approx(1.0 / 4.0 + 1.0 / 6.0).epsilon(1e-14));
    const std::vector<double> bad{1.0};
    CHECK_THROWS_AS(stats::chi_square_stat(obs, bad), std::invalid_argument);
}

TEST_CASE("median and quantiles") {
    std::vector<double> odd{3.0, 1.0, 2.0};
    CHECK(stats::median(odd) == doctest::Approx(2.0));
    std::vector<double> even{4.0, 1.0, 3.0, 2.0};
    CHECK(stats::median(even) == doctest::Approx(2.5));
    std::vector<double> qs{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(stats::quantile(qs, 0.25) == doctest::Approx(2.0));
    CHECK(stats::quantile(qs, 0.1) == doctest::Approx(1.4));
    CHECK(stats::quantile(qs, 0.0) == doctest::Approx(1.0));
    CHECK(stats::quantile(qs, 1.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(stats::quantile(qs, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(stats::median({}), std::invalid_argument);
}

TEST_CASE("Levy sampler matches the limit cdf") {
    Rng rng(2026, 8);
    const int n = 200'000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = stats::sample_levy(rng);
    std::vector<double> sub(draws.begin(), draws.begin() + 50'000);
    const double d =
        stats::ks_distance(sub, [](double x) { return model::levy_cdf(x); });
    CHECK(d < stats::ks_critical_1pct(50'000.0));
    CHECK(stats::median(draws) == doctest::Approx(2.198).epsilon(0.025));
}

TEST_CASE("Brownian exit-time sampler") {
    Rng rng(2027, 3);
    const int n = 4000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = stats::sample_T(rng);
    const auto est = stats::mean_se(draws);
    // The lattice sampler has mean exactly 1 at every lattice size.
    CHECK(std::fabs(est.value - 1.0) < 3.0 * est.se);
    double s2 = 0.0;
    for (auto d : draws) s2 += (d - est.value) * (d - est.value);
    const double sd = std::sqrt(s2 / (n - 1));
    CHECK(sd == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(0.06));
    // Coarse and fine lattices agree in the mean.
    std::vector<double> coarse(n);
    for (auto& d : coarse) d = stats::sample_T(rng, 100);
    const auto est_c = stats::mean_se(coarse);
    CHECK(std::fabs(est_c.value - 1.0) < 3.0 * est_c.se);
    CHECK_THROWS_AS(stats::sample_T(rng, 1), std::invalid_argument);
}

TEST_CASE("scaling-exponent fit: exact power law") {
    const std::vector<std::int64_t> times{100, 1000, 10'000, 100'000};
    std::vector<std::vector<double>> cols;
    for (auto t : times)
        cols.push_back(std::vector<double>(3, 3.0 * std::pow(t, 0.8)));
    Rng rng(1, 1);
    const auto fit = stats::estimate_nu(times, cols, false, 50, rng);
    CHECK(fit.nu_hat == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(fit.std_err == doctest::Approx(0.0));
    CHECK(fit.method == "median");
    CHECK(fit.t_lo == doctest::Approx(100.0));
    CHECK(fit.t_hi == doctest::Approx(100'000.0));
    const auto fit_mean = stats::estimate_nu(times, cols, true, 50, rng);
    CHECK(fit_mean.nu_hat == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(fit_mean.method == "mean");
}

TEST_CASE("scaling-exponent fit: noisy recovery and validation") {
    const std::vector<std::int64_t> times{100, 316, 1000, 3162, 10'000};
    Rng noise(42, 0);
    const int walkers = 300;
    // Multiplicative lognormal noise, walker-correlated across checkpoints
    // like genuine trajectories.
    std::vector<double> walker_level(walkers);
    for (auto& w : walker_level) w = std::exp(0.2 * noise.next_normal());
    std::vector<std::vector<double>> cols;
    for (auto t : times) {
        std::vector<double> col(walkers);
        for (int w = 0; w < walkers; ++w)
            col[w] = walker_level[w] * std::pow(t, 2.0 / 3.0) *
                     std::exp(0.05 * noise.next_normal());
        cols.push_back(std::move(col));
    }
    Rng rng(2, 2);
    const auto fit = stats::estimate_nu(times, cols, false, 200, rng);
    CHECK(std::fabs(fit.nu_hat - 2.0 / 3.0) < 3.0 * fit.std_err + 0.01);
    CHECK(fit.std_err > 0.0);

    const std::vector<std::int64_t> three{10, 100, 1000};
    std::vector<std::vector<double>> cols3(3, std::vector<double>(5, 1.0));
    CHECK_THROWS_AS(stats::estimate_nu(three, cols3, false, 10, rng),
                    std::invalid_argument); // too few checkpoints
    const std::vector<std::int64_t> narrow{100, 120, 140, 160};
    std::vector<std::vector<double>> cols4(4, std::vector<double>(5, 1.0));
    CHECK_THROWS_AS(stats::estimate_nu(narrow, cols4, false, 10, rng),
                    std::invalid_argument); // less than a decade
    std::vector<std::vector<double>> ragged = cols4;
    ragged[2].pop_back();
    const std::vector<std::int64_t> times4{100, 1000, 10'000, 100'000};
    CHECK_THROWS_AS(stats::estimate_nu(times4, ragged, false, 10, rng),
                    std::invalid_argument);
}

TEST_CASE("moment estimate and generic bootstrap") {
    const std::vector<double> xs{1.0, 2.0, 3.0};
    Rng rng(7, 7);
    const auto est = stats::moment_estimate(xs, 2.0, 500, rng);
    CHECK(est.value == doctest::Approx(14.0 / 3.0).epsilon(1e-14));
    CHECK(est.se > 0.0);
    const std::vector<double> cs(20, 5.0);
    const double se = stats::bootstrap_se(
        cs, [](std::span<const double> v) { return stats::mean_se(v).value; },
        200, rng);
    CHECK(se == doctest::Approx(0.0));
}

TEST_CASE("ensemble summary: constant ensembles hit exact scalings") {
    Rng rng(12, 12);
    const std::vector<double> z(50, 4.0);
    const std::vector<double> qs{1.0, 1.5, 2.0};
    const std::vector<double> lambdas{0.5, 1.0};

    // gamma = 0 at t = 16: z/sqrt(t) = 1 and T_hat = t/z^2 = 1.
    const auto s0 = stats::summarize(16, z, 0.0, qs, lambdas, 100, rng);
    CHECK(s0.t == 16);
    CHECK(s0.count == 50);
    CHECK(s0.z_median == doctest::Approx(4.0));
    REQUIRE(s0.moments.size() == 3);
    for (const auto& m : s0.moments) {
        CHECK(m.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m.se == doctest::Approx(0.0));
    }
    REQUIRE(s0.reference_sorted.size() == 50);
    CHECK(s0.reference_sorted.front() == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(s0.laplace.size() == 2);
    CHECK(s0.laplace[1].lambda == doctest::Approx(1.0));
    CHECK(s0.laplace[1].value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    // gamma = 1/4 at t = 8: z/t^(2/3) = 1 and L_hat = 9/16.
    const auto s1 = stats::summarize(8, z, 0.25, qs, lambdas, 100, rng);
    CHECK(s1.moments[0].value == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(s1.reference_sorted.size() == 50);
    CHECK(s1.reference_sorted.back() == doctest::Approx(0.5625).epsilon(1e-12));

    // Outside [0, 1/2] there is no reference variable.
    const auto s2 = stats::summarize(8, z, 0.7, qs, lambdas, 100, rng);
    CHECK(s2.laplace.empty());
    CHECK(s2.reference_sorted.empty());
    CHECK(s2.moments.size() == 3);
}

TEST_SUITE_END();
