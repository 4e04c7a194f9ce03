#include "boldwalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "boldwalk/cycles.hpp"
#include "boldwalk/driver.hpp"
#include "boldwalk/model.hpp"
#include "boldwalk/parallel.hpp"
#include "boldwalk/rng.hpp"
#include "boldwalk/ssrw.hpp"
#include "boldwalk/stats.hpp"
#include "boldwalk/walk.hpp"

namespace boldwalk::verify {

namespace {

// Fixed stream tags so every sub-experiment draws from its own independent
// stream family derived from the master seed.
enum SeedTag : std::uint64_t {
    kTagMSampler = 1,
    kTagMMean,
    kTagLevy,
    kTagTSampler,
    kTagActiveGeom,
    kTagActiveExp,
    kTagWald,
    kTagZkfDiffusive,
    kTagMomentRecursion,
    kTagRegimeDiffusive,
    kTagRegimeSuper,
    kTagRegimeEdge,
    kTagZkfSuper,
    kTagEquivDirect,
    kTagEquivCycles,
    kTagBootstrap,
};

std::uint64_t sub_seed(const VerifyConfig& cfg, SeedTag tag) {
    return mix64(cfg.seed + static_cast<std::uint64_t>(tag));
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[200];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

Check distance_check(std::string name, double measured, double tolerance,
                     std::string context) {
    Check ch;
    ch.name = std::move(name);
    ch.measured = measured;
    ch.pass = measured < tolerance;
    ch.detail = context + fmt(", tolerance %.4g", tolerance);
    return ch;
}

Check se_check(std::string name, double value, double target, double se,
               std::string context) {
    const double units = se > 0.0 ? std::fabs(value - target) / se
                                  : (value == target ? 0.0 : 1e30);
    Check ch;
    ch.name = std::move(name);
    ch.measured = value;
    ch.pass = units <= 3.0;
    ch.detail = context + fmt(", target %.10g within 3 se (off by %.2f se)",
                              target, units);
    return ch;
}

Check interval_check(std::string name, double value, double lo, double hi,
                     double tolerance_scale, std::string context) {
    const double center = 0.5 * (lo + hi);
    const double l = center - (center - lo) * tolerance_scale;
    const double h = center + (hi - center) * tolerance_scale;
    Check ch;
    ch.name = std::move(name);
    ch.measured = value;
    ch.pass = value >= l && value <= h;
    ch.detail = context + fmt(", required range [%.4g, %.4g]", l, h);
    return ch;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < points; ++i)
        out.push_back(std::pow(
            10.0, llo + (lhi - llo) * static_cast<double>(i) /
                            static_cast<double>(points - 1)));
    return out;
}

// Checkpointed cycle-engine ensemble: quarter-decade time grid ending at
// t_max, z reconstructed per walker at every grid time.
struct RegimeData {
    std::vector<std::int64_t> times;
    std::vector<std::vector<double>> z; // z[checkpoint][walker]
};

RegimeData regime_ensemble(double gamma, std::int64_t t_max,
                           std::int64_t walkers, std::uint64_t seed,
                           int threads) {
    RegimeData data;
    const std::int64_t t_lo = std::max<std::int64_t>(100, t_max / 10'000);
    data.times = driver::resolve_checkpoints(
        "geometric:1.7782794100389228:" + std::to_string(t_lo), t_max);
    data.z.assign(data.times.size(),
                  std::vector<double>(static_cast<std::size_t>(walkers)));
    parallel_for(walkers, threads, [&](std::int64_t wid) {
        Rng rng(seed, static_cast<std::uint64_t>(wid));
        const auto recs =
            cycles::run_cycles(gamma, cycles::CycleStop::at_t(t_max), rng);
        for (std::size_t c = 0; c < data.times.size(); ++c)
            data.z[c][static_cast<std::size_t>(wid)] = static_cast<double>(
                cycles::reconstruct_z(recs, data.times[c]));
    });
    return data;
}

// Slice of the grid covering the last two decades, for exponent fits.
std::size_t fit_start(const std::vector<std::int64_t>& times) {
    const std::int64_t cutoff = times.back() / 100;
    std::size_t s = 0;
    while (s + 4 < times.size() && times[s] < cutoff) ++s;
    return s;
}

double levy_median() {
    double lo = 0.1, hi = 100.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (model::levy_cdf(mid) < 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double standard_error_of_sd(std::span<const double> xs) {
    const std::size_t n = xs.size();
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        var += d * d;
        m4 += d * d * d * d;
    }
    var /= static_cast<double>(n - 1);
    m4 /= static_cast<double>(n);
    const double var_of_var =
        std::max(0.0, m4 - var * var) / static_cast<double>(n);
    return std::sqrt(var_of_var) / (2.0 * std::sqrt(var));
}

} // namespace

bool SuiteResult::all_pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

const Check* SuiteResult::find(const std::string& name) const {
    for (const Check& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

SuiteResult run_analytic(const VerifyConfig& cfg) {
    SuiteResult out;
    out.suite = "analytic";
    const double tol = cfg.tolerance_scale;

    {
        double worst = 0.0;
        for (double l : log_grid(1e-8, 50.0, 181)) {
            const double lhs = std::cosh(model::theta(l));
            const double rhs = std::exp(l);
            worst = std::max(worst, std::fabs(lhs - rhs) / rhs);
        }
        out.checks.push_back(distance_check(
            "theta-cosh-identity", worst, 1e-12 * tol,
            "max relative error of cosh(theta(lambda)) = e^lambda over "
            "lambda in [1e-8, 50]"));
    }
    {
        double worst = 0.0;
        for (double l : log_grid(1e-8, 50.0, 181))
            worst = std::max(worst,
                             std::fabs(model::laplace_m(l, 1) - std::exp(-l)));
        out.checks.push_back(distance_check(
            "laplace-m-z1", worst, 1e-12 * tol,
            "max error of laplace_m(lambda, 1) = e^-lambda"));
    }
    {
        const std::int64_t k = 1000;
        const double th = model::theta(1.0 / static_cast<double>(k * k));
        double prod = 1.0;
        for (std::int64_t i = 1; i < k; ++i)
            prod *= std::cosh(th * static_cast<double>(i - 1)) /
                    std::cosh(th * static_cast<double>(i));
        const double exact = 1.0 / std::cosh(th * static_cast<double>(k - 1));
        out.checks.push_back(distance_check(
            "telescoping-product", std::fabs(prod - exact), 1e-10 * tol,
            fmt("cosh-ratio product vs 1/cosh(theta(k-1)) at k=%g, lambda=1",
                static_cast<double>(k))));
    }
    {
        const double r = model::r_product(100'000, 1.0, 0.0);
        const double target = 2.0 / (1.0 + std::exp(-2.0 * std::sqrt(2.0)));
        out.checks.push_back(distance_check(
            "r-product-diffusive", std::fabs(r - target), 1e-3 * tol,
            fmt("R(1e5) = %.6f vs limit 2/(1+e^-2sqrt(2)) = %.6f", r, target)));
    }
    {
        const double r = model::r_product(100'000, 1.0, 0.25);
        out.checks.push_back(distance_check(
            "r-product-super", std::fabs(r - 1.0), 1e-2 * tol,
            fmt("R(1e5) = %.6f vs limit 1 at gamma=1/4 "
                "(convergence rate is k^-gamma)", r)));
    }
    return out;
}

SuiteResult run_oracle(const VerifyConfig& cfg) {
    SuiteResult out;
    out.suite = "oracle";
    const double tol = cfg.tolerance_scale;

    {
        const auto pmf = cycles::exit_time_pmf(3, 400);
        double worst = 0.0;
        for (double l : {0.01, 0.1, 0.5, 1.0, 2.0}) {
            double sum = 0.0;
            for (std::size_t s = 0; s < pmf.pmf.size(); ++s)
                sum += pmf.pmf[s] * std::exp(-l * static_cast<double>(s + 1));
            worst = std::max(
                worst, std::fabs(sum - model::laplace_m(l, 3)) - pmf.tail);
        }
        out.checks.push_back(distance_check(
            "dp-vs-transform", worst, 1e-8 * tol,
            "truncated pmf transform vs laplace_m at z=3 (tail credited)"));
    }
    {
        const auto pmf = cycles::exit_time_pmf(4, 600);
        double mass = pmf.tail;
        for (double p : pmf.pmf) mass += p;
        out.checks.push_back(distance_check(
            "dp-mass", std::fabs(mass - 1.0), 1e-12 * tol,
            "pmf mass + tail at z=4, s_max=600"));
    }
    {
        // Chi-square of the m sampler against the exact pmf at z = 4.
        const std::int64_t z = 4;
        const std::int64_t draws = cfg.sampler_draws;
        const auto pmf = cycles::exit_time_pmf(z, 4000);
        Rng rng(sub_seed(cfg, kTagMSampler), 0);
        std::vector<std::int64_t> sampled(static_cast<std::size_t>(draws));
        for (auto& s : sampled) s = cycles::sample_m(z, rng);

        // Bins: each odd s while the expected count stays >= 5, remainder
        // (including the truncated tail) pooled into the final bin.
        std::vector<double> expected;
        std::vector<std::int64_t> edges; // bin b covers s == edges[b]
        for (std::size_t s = 1; s <= pmf.pmf.size(); s += 2) {
            const double e = pmf.pmf[s - 1] * static_cast<double>(draws);
            if (e < 5.0) break;
            expected.push_back(e);
            edges.push_back(static_cast<std::int64_t>(s));
        }
        double pooled = static_cast<double>(draws);
        for (double e : expected) pooled -= e;
        expected.push_back(pooled);
        std::vector<double> observed(expected.size(), 0.0);
        for (std::int64_t s : sampled) {
            const auto it = std::lower_bound(edges.begin(), edges.end(), s);
            const bool exact_bin = it != edges.end() && *it == s;
            const std::size_t b =
                exact_bin ? static_cast<std::size_t>(it - edges.begin())
                          : expected.size() - 1;
            observed[b] += 1.0;
        }
        const double stat = stats::chi_square_stat(observed, expected);
        const int dof = static_cast<int>(expected.size()) - 1;
        const double crit = stats::chi_square_critical_99(dof);
        Check ch;
        ch.name = "m-sampler-chi-square";
        ch.measured = stat;
        ch.pass = stat < crit;
        ch.detail = fmt("chi-square of sample_m(4) vs exact pmf, %g draws, "
                        "dof %g, 99%% critical %.2f",
                        static_cast<double>(draws), static_cast<double>(dof),
                        crit);
        out.checks.push_back(ch);
    }
    {
        const std::int64_t z = 10;
        Rng rng(sub_seed(cfg, kTagMMean), 0);
        std::vector<double> ms(static_cast<std::size_t>(cfg.sampler_draws));
        for (auto& m : ms)
            m = static_cast<double>(cycles::sample_m(z, rng));
        const auto est = stats::mean_se(ms);
        out.checks.push_back(se_check(
            "m-mean", est.value, static_cast<double>(2 * z - 1), est.se,
            fmt("mean exit time at z=%g over %g draws",
                static_cast<double>(z), static_cast<double>(cfg.sampler_draws))));
    }
    {
        Rng rng(sub_seed(cfg, kTagLevy), 0);
        std::vector<double> ls(static_cast<std::size_t>(cfg.levy_draws));
        for (auto& l : ls) l = stats::sample_levy(rng);
        double worst_units = 0.0;
        double worst_value = 0.0, worst_target = 0.0, worst_se = 1.0;
        for (double l : {0.5, 1.0, 2.0}) {
            const auto emp = stats::empirical_laplace(ls, l);
            const double ref = model::limit_laplace_L(l);
            const double units = std::fabs(emp.value - ref) / emp.se;
            if (units > worst_units) {
                worst_units = units;
                worst_value = emp.value;
                worst_target = ref;
                worst_se = emp.se;
            }
        }
        out.checks.push_back(se_check(
            "levy-laplace", worst_value, worst_target, worst_se,
            fmt("worst Laplace point of the Levy sampler over "
                "lambda in {0.5, 1, 2}, %g draws",
                static_cast<double>(cfg.levy_draws))));
        const double ks = stats::ks_distance(ls, model::levy_cdf);
        out.checks.push_back(distance_check(
            "levy-ks", ks,
            stats::ks_critical_1pct(static_cast<double>(ls.size())) * tol,
            "KS distance of the Levy sampler vs levy_cdf"));
    }
    {
        Rng rng(sub_seed(cfg, kTagTSampler), 0);
        std::vector<double> ts(static_cast<std::size_t>(cfg.sampler_draws));
        for (auto& t : ts) t = stats::sample_T(rng);
        const auto mean = stats::mean_se(ts);
        out.checks.push_back(se_check(
            "t-sampler-mean", mean.value, 1.0, mean.se,
            fmt("mean Brownian exit time over %g draws",
                static_cast<double>(cfg.sampler_draws))));
        double var = 0.0;
        for (double t : ts) var += (t - mean.value) * (t - mean.value);
        var /= static_cast<double>(ts.size() - 1);
        out.checks.push_back(se_check(
            "t-sampler-sd", std::sqrt(var), std::sqrt(2.0 / 3.0),
            standard_error_of_sd(ts), "sd of the Brownian exit time"));
        const auto lap = stats::empirical_laplace(ts, 1.0);
        out.checks.push_back(distance_check(
            "t-sampler-laplace", std::fabs(lap.value - model::limit_laplace_T(1.0)),
            0.01 * tol,
            fmt("Laplace point at lambda=1: %.5f vs 1/cosh(sqrt(2)) = %.5f",
                lap.value, model::limit_laplace_T(1.0))));
    }
    return out;
}

SuiteResult run_journeys(const VerifyConfig& cfg) {
    SuiteResult out;
    out.suite = "journeys";
    const double tol = cfg.tolerance_scale;
    const std::int64_t draws = cfg.sampler_draws;

    {
        // gamma = 0: active runs are geometric, P(n >= j) = 2^-j.
        Rng rng(sub_seed(cfg, kTagActiveGeom), 0);
        std::vector<std::int64_t> tail_counts(11, 0);
        for (std::int64_t i = 0; i < draws; ++i) {
            const std::int64_t n = cycles::sample_n(1, 0.0, rng);
            for (std::int64_t j = 1; j <= std::min<std::int64_t>(n, 10); ++j)
                ++tail_counts[static_cast<std::size_t>(j)];
        }
        double worst_units = 0.0;
        for (int j = 1; j <= 10; ++j) {
            const double p = std::pow(0.5, j);
            const double se =
                std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
            const double phat =
                static_cast<double>(tail_counts[static_cast<std::size_t>(j)]) /
                static_cast<double>(draws);
            worst_units = std::max(worst_units, std::fabs(phat - p) / se);
        }
        Check ch;
        ch.name = "active-run-geometric";
        ch.measured = worst_units;
        ch.pass = worst_units <= 3.0;
        ch.detail = fmt("worst deviation of P(n>=j) from 2^-j, j=1..10, in se "
                        "units over %g draws", static_cast<double>(draws));
        out.checks.push_back(ch);
    }
    {
        // gamma = 1/4 at large z: n / z^gamma is asymptotically Exp(1).
        const double gamma = 0.25;
        const std::int64_t z = 1'000'000;
        const double scale = std::pow(static_cast<double>(z), -gamma);
        Rng rng(sub_seed(cfg, kTagActiveExp), 0);
        std::vector<double> scaled(static_cast<std::size_t>(draws));
        for (auto& v : scaled)
            v = static_cast<double>(cycles::sample_n(z, gamma, rng)) * scale;
        const double d = stats::tail_sup_distance(
            scaled, [](double v) { return std::exp(-v); });
        out.checks.push_back(distance_check(
            "active-run-exponential", d, 0.01 * tol,
            fmt("sup over attained lattice values of |tail - e^-v| at "
                "z=%g, gamma=1/4", static_cast<double>(z))));
    }
    {
        Rng rng(sub_seed(cfg, kTagWald), 0);
        const auto est = cycles::wald_identity_check(0.3, -5, 3, draws, rng);
        out.checks.push_back(se_check(
            "wald-identity", est.value, 1.0, est.se,
            fmt("E[e^{theta w} / cosh(theta)^tau] on [-5, 3], theta=0.3, "
                "%g paths", static_cast<double>(draws))));
    }
    {
        // gamma = 0 cycle growth: E[z(k)/k] = 1 + 1/k -> 1.
        const std::int64_t k = cfg.zkf_k;
        const std::int64_t reps = cfg.zkf_replicas;
        const std::uint64_t seed = sub_seed(cfg, kTagZkfDiffusive);
        std::vector<double> ratio(static_cast<std::size_t>(reps));
        parallel_for(reps, cfg.threads, [&](std::int64_t i) {
            Rng rng(seed, static_cast<std::uint64_t>(i));
            const auto recs =
                cycles::run_cycles(0.0, cycles::CycleStop::at_k(k), rng);
            ratio[static_cast<std::size_t>(i)] =
                static_cast<double>(recs.back().z) / static_cast<double>(k);
        });
        const auto est = stats::mean_se(ratio);
        out.checks.push_back(se_check(
            "cycle-growth-diffusive", est.value, 1.0, est.se,
            fmt("mean z(k)/k at k=%g, gamma=0 (E = 1 + 1/k)",
                static_cast<double>(k))));
    }
    {
        // gamma = 1/4: E[z(k)^{1-gamma}] grows like (1-gamma) k.
        const double gamma = 0.25;
        const std::int64_t k = cfg.zkf_k;
        const std::int64_t reps = std::max<std::int64_t>(16, cfg.zkf_replicas / 4);
        const std::uint64_t seed = sub_seed(cfg, kTagMomentRecursion);
        std::vector<double> powered(static_cast<std::size_t>(reps));
        parallel_for(reps, cfg.threads, [&](std::int64_t i) {
            Rng rng(seed, static_cast<std::uint64_t>(i));
            const auto recs =
                cycles::run_cycles(gamma, cycles::CycleStop::at_k(k), rng);
            powered[static_cast<std::size_t>(i)] =
                std::pow(static_cast<double>(recs.back().z), 1.0 - gamma);
        });
        const auto est = stats::mean_se(powered);
        const double target = (1.0 - gamma) * static_cast<double>(k);
        out.checks.push_back(distance_check(
            "moment-recursion", std::fabs(est.value / target - 1.0), 0.05 * tol,
            fmt("relative error of E[z(k)^(3/4)] vs (1-gamma) k = %g at "
                "k=%g, gamma=1/4", target, static_cast<double>(k))));
    }
    return out;
}

SuiteResult run_regimes(const VerifyConfig& cfg, double gamma) {
    SuiteResult out;
    const double tol = cfg.tolerance_scale;

    if (gamma == 0.0) {
        out.suite = "regimes[gamma=0]";
        const std::int64_t t_max = cfg.t_diffusive;
        const RegimeData data =
            regime_ensemble(0.0, t_max, cfg.regime_walkers,
                            sub_seed(cfg, kTagRegimeDiffusive), cfg.threads);
        const auto& zf = data.z.back();
        std::vector<double> that(zf.size());
        for (std::size_t i = 0; i < zf.size(); ++i)
            that[i] = model::limit_transform_to_reference(
                zf[i], static_cast<double>(t_max), 0.0);
        double worst = 0.0;
        double worst_lambda = 0.0;
        for (double l : {0.5, 1.0, 2.0}) {
            const double d = std::fabs(stats::empirical_laplace(that, l).value -
                                       model::limit_laplace_T(l));
            if (d > worst) {
                worst = d;
                worst_lambda = l;
            }
        }
        out.checks.push_back(distance_check(
            "laplace-that", worst, 0.02 * tol,
            fmt("worst |E[e^(-lambda T_hat)] - 1/cosh(sqrt(2 lambda))| over "
                "lambda in {0.5, 1, 2} at t=%g (worst at lambda=%g)",
                static_cast<double>(t_max), worst_lambda)));

        const std::size_t s = fit_start(data.times);
        Rng boot(sub_seed(cfg, kTagBootstrap), 0);
        const auto nu = stats::estimate_nu(
            std::span(data.times).subspan(s),
            {data.z.begin() + static_cast<std::ptrdiff_t>(s), data.z.end()},
            false, cfg.bootstrap_resamples, boot);
        out.checks.push_back(interval_check(
            "nu-diffusive", nu.nu_hat, 0.47, 0.53, tol,
            fmt("median-slope exponent over t in [%.0f, %.0f], se %.4f",
                nu.t_lo, nu.t_hi, nu.std_err)));
        return out;
    }

    if (gamma == 0.25) {
        out.suite = "regimes[gamma=1/4]";
        const std::int64_t t_max = cfg.t_super;
        const double nu_pred = 2.0 / 3.0;
        const RegimeData data =
            regime_ensemble(0.25, t_max, cfg.regime_walkers,
                            sub_seed(cfg, kTagRegimeSuper), cfg.threads);

        const std::size_t s = fit_start(data.times);
        Rng boot(sub_seed(cfg, kTagBootstrap), 0);
        const auto nu = stats::estimate_nu(
            std::span(data.times).subspan(s),
            {data.z.begin() + static_cast<std::ptrdiff_t>(s), data.z.end()},
            false, cfg.bootstrap_resamples, boot);
        out.checks.push_back(interval_check(
            "nu-super", nu.nu_hat, 0.61, 0.72, tol,
            fmt("median-slope exponent over t in [%.0f, %.0f], se %.4f "
                "(predicted 2/3)", nu.t_lo, nu.t_hi, nu.std_err)));

        const double target = model::moment_prediction(1.5, 0.25); // 9/16
        auto gap_at = [&](std::size_t c) {
            const double scale =
                std::pow(static_cast<double>(data.times[c]), nu_pred);
            std::vector<double> x(data.z[c].size());
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] = std::pow(data.z[c][i] / scale, 1.5);
            return std::fabs(stats::mean_se(x).value - target);
        };
        const std::size_t g2 = data.times.size() - 1;
        const std::size_t g1 = g2 >= 4 ? g2 - 4 : 0;
        const std::size_t g0 = g2 >= 8 ? g2 - 8 : 0;
        const double gap_final = gap_at(g2);
        out.checks.push_back(distance_check(
            "moment-q32", gap_final / target, 0.15 * tol,
            fmt("relative gap of E[(z/t^nu)^(3/2)] vs %.6g at t=%g", target,
                static_cast<double>(data.times[g2]))));
        if (g0 < g1 && g1 < g2) {
            const double ga = gap_at(g0), gb = gap_at(g1);
            Check ch;
            ch.name = "moment-gap-monotone";
            ch.pass = ga > gb && gb > gap_final;
            ch.measured = gap_final;
            ch.detail = fmt("gaps %.4f -> %.4f -> %.4f over the last two "
                            "decades must decrease", ga, gb, gap_final);
            out.checks.push_back(ch);
        } else {
            out.checks.push_back(
                {"moment-gap-monotone", false, 0.0,
                 "time grid too short for a two-decade window"});
        }

        const std::int64_t k = cfg.zkf_k;
        const std::int64_t reps = cfg.zkf_replicas;
        const std::uint64_t seed = sub_seed(cfg, kTagZkfSuper);
        std::vector<double> ratio(static_cast<std::size_t>(reps));
        parallel_for(reps, cfg.threads, [&](std::int64_t i) {
            Rng rng(seed, static_cast<std::uint64_t>(i));
            const auto recs =
                cycles::run_cycles(0.25, cycles::CycleStop::at_k(k), rng);
            ratio[static_cast<std::size_t>(i)] =
                static_cast<double>(recs.back().z) /
                std::pow(static_cast<double>(k), 4.0 / 3.0);
        });
        const double med = stats::median(ratio);
        const double zkf = model::deterministic_z_of_k(
                               static_cast<double>(k), 0.25) /
                           std::pow(static_cast<double>(k), 4.0 / 3.0);
        out.checks.push_back(distance_check(
            "zkf-median", std::fabs(med / zkf - 1.0), 0.10 * tol,
            fmt("median z(k)/k^(4/3) = %.5f vs (3/4)^(4/3) = %.5f at k=%g",
                med, zkf, static_cast<double>(k))));
        return out;
    }

    if (gamma == 0.5) {
        out.suite = "regimes[gamma=1/2]";
        const std::int64_t t_max = cfg.t_edge;
        const RegimeData data =
            regime_ensemble(0.5, t_max, cfg.regime_walkers,
                            sub_seed(cfg, kTagRegimeEdge), cfg.threads);
        const auto& zf = data.z.back();
        std::vector<double> lhat(zf.size());
        std::vector<double> speed(zf.size());
        for (std::size_t i = 0; i < zf.size(); ++i) {
            lhat[i] = model::limit_transform_to_reference(
                zf[i], static_cast<double>(t_max), 0.5);
            speed[i] = zf[i] / static_cast<double>(t_max);
        }
        const double ks = stats::ks_distance(lhat, model::levy_cdf);
        out.checks.push_back(distance_check(
            "levy-ks-edge", ks, 0.05 * tol,
            fmt("KS of L_hat = (t/z - 1)/4 vs the Levy cdf at t=%g",
                static_cast<double>(t_max))));
        const double med = stats::median(speed);
        const double target = 1.0 / (4.0 * levy_median() + 1.0);
        out.checks.push_back(distance_check(
            "median-speed-edge", std::fabs(med / target - 1.0), 0.10 * tol,
            fmt("median z/t = %.6f vs 1/(4 median(L) + 1) = %.6f", med,
                target)));
        return out;
    }

    throw std::invalid_argument(
        "run_regimes: gamma must be one of 0, 0.25, 0.5");
}

SuiteResult run_equivalence(const VerifyConfig& cfg) {
    SuiteResult out;
    out.suite = "equivalence";
    const double tol = cfg.tolerance_scale;

    {
        const double gamma = 0.25;
        const std::int64_t t = cfg.equivalence_t;
        const std::int64_t n = cfg.equivalence_walkers;
        const std::int64_t cps[1] = {t};
        const auto direct = walk::run_ensemble(
            gamma, t, cps, n, sub_seed(cfg, kTagEquivDirect), cfg.threads);
        std::vector<double> z_direct(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < z_direct.size(); ++i)
            z_direct[i] = static_cast<double>(direct[i].z);

        std::vector<double> z_cycles(static_cast<std::size_t>(n));
        const std::uint64_t seed = sub_seed(cfg, kTagEquivCycles);
        parallel_for(n, cfg.threads, [&](std::int64_t i) {
            Rng rng(seed, static_cast<std::uint64_t>(i));
            const auto recs =
                cycles::run_cycles(gamma, cycles::CycleStop::at_t(t), rng);
            z_cycles[static_cast<std::size_t>(i)] =
                static_cast<double>(cycles::reconstruct_z(recs, t));
        });
        const double ks = stats::ks_distance_two_sample(z_direct, z_cycles);
        out.checks.push_back(distance_check(
            "engine-equivalence-ks", ks,
            stats::ks_critical_1pct_two_sample(static_cast<double>(n),
                                               static_cast<double>(n)) *
                tol,
            fmt("two-sample KS of z(t=%g) at gamma=1/4, %g walkers per engine",
                static_cast<double>(t), static_cast<double>(n))));
    }
    {
        driver::SimulateConfig sim;
        sim.engine = "direct";
        sim.gamma = 0.25;
        sim.t_max = 2000;
        sim.n_walkers = 128;
        sim.seed = sub_seed(cfg, kTagEquivDirect);
        sim.threads = 1;
        const std::string one = io::write_run_to_string(driver::run_simulate(sim));
        sim.threads = 4;
        const std::string four = io::write_run_to_string(driver::run_simulate(sim));

        driver::SimulateConfig csim;
        csim.engine = "cycles";
        csim.gamma = 0.5;
        csim.t_max = 5000;
        csim.n_walkers = 128;
        csim.seed = sub_seed(cfg, kTagEquivCycles);
        csim.threads = 1;
        const std::string cone = io::write_run_to_string(driver::run_simulate(csim));
        csim.threads = 4;
        const std::string cfour = io::write_run_to_string(driver::run_simulate(csim));

        const bool same = one == four && cone == cfour;
        out.checks.push_back({"determinism-threads", same, same ? 0.0 : 1.0,
                              "byte-identical serialization for 1 vs 4 "
                              "threads, both engines"});

        std::istringstream is(one);
        const io::RunData parsed = io::read_run(is);
        const std::string replayed =
            io::write_run_to_string(driver::replay(parsed.header, 3));
        const bool replay_ok = replayed == one;
        out.checks.push_back({"replay-from-header", replay_ok,
                              replay_ok ? 0.0 : 1.0,
                              "re-executing a parsed header reproduces the "
                              "file byte for byte"});
    }
    return out;
}

std::vector<SuiteResult> run_suites(const std::string& name,
                                    const VerifyConfig& cfg, double gamma) {
    std::vector<SuiteResult> out;
    const bool all = name == "all";
    bool known = all;
    if (all || name == "analytic") out.push_back(run_analytic(cfg)), known = true;
    if (all || name == "oracle") out.push_back(run_oracle(cfg)), known = true;
    if (all || name == "journeys") out.push_back(run_journeys(cfg)), known = true;
    if (all || name == "regimes") {
        known = true;
        if (gamma >= 0.0) {
            out.push_back(run_regimes(cfg, gamma));
        } else {
            out.push_back(run_regimes(cfg, 0.0));
            out.push_back(run_regimes(cfg, 0.25));
            out.push_back(run_regimes(cfg, 0.5));
        }
    }
    if (all || name == "equivalence")
        out.push_back(run_equivalence(cfg)), known = true;
    if (!known)
        throw std::invalid_argument("unknown verify suite '" + name + "'");
    return out;
}

void print_suite(std::ostream& os, const SuiteResult& result) {
    std::size_t passed = 0;
    for (const Check& c : result.checks)
        if (c.pass) ++passed;
    os << "suite " << result.suite << ": " << passed << "/"
       << result.checks.size() << " checks passed\n";
    for (const Check& c : result.checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
           << ": measured=" << c.measured << " (" << c.detail << ")\n";
    }
}

} // namespace boldwalk::verify
