#include "boldwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "boldwalk/model.hpp"
#include "boldwalk/ssrw.hpp"

namespace boldwalk::stats {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::vector<double> sorted_copy(std::span<const double> xs) {
    std::vector<double> s(xs.begin(), xs.end());
    std::sort(s.begin(), s.end());
    return s;
}

double lsq_slope(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

} // namespace

MeanSe mean_se(std::span<const double> xs) {
    require(xs.size() >= 2, "mean_se: need at least 2 samples");
    double mean = 0.0, m2 = 0.0;
    std::size_t i = 0;
    for (double x : xs) {
        ++i;
        const double d = x - mean;
        mean += d / static_cast<double>(i);
        m2 += d * (x - mean);
    }
    const double var = m2 / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

MeanSe empirical_laplace(std::span<const double> xs, double lambda) {
    require(lambda >= 0.0 && std::isfinite(lambda),
            "empirical_laplace: lambda must be finite and >= 0");
    require(xs.size() >= 2, "empirical_laplace: need at least 2 samples");
    if (lambda == 0.0) return {1.0, 0.0};
    std::vector<double> tr(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        require(xs[i] >= 0.0, "empirical_laplace: samples must be >= 0");
        tr[i] = std::exp(-lambda * xs[i]);
    }
    return mean_se(tr);
}

double ks_distance(std::span<const double> xs,
                   const std::function<double(double)>& cdf) {
    require(!xs.empty(), "ks_distance: empty sample");
    const std::vector<double> s = sorted_copy(xs);
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    double prev_f = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        require(f >= -1e-12 && f <= 1.0 + 1e-12,
                "ks_distance: cdf value outside [0, 1]");
        require(f >= prev_f - 1e-12, "ks_distance: cdf not nondecreasing");
        prev_f = f;
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::fabs(f - lo), std::fabs(hi - f)));
    }
    return d;
}

double ks_distance_two_sample(std::span<const double> a,
                              std::span<const double> b) {
    require(!a.empty() && !b.empty(), "ks_distance_two_sample: empty sample");
    const std::vector<double> sa = sorted_copy(a);
    const std::vector<double> sb = sorted_copy(b);
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double v = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= v) ++i;
        while (j < sb.size() && sb[j] <= v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb));
    }
    return d;
}

double tail_sup_distance(std::span<const double> xs,
                         const std::function<double(double)>& survival) {
    require(!xs.empty(), "tail_sup_distance: empty sample");
    const std::vector<double> s = sorted_copy(xs);
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && s[i] == s[i - 1]) continue; // first index of each value
        const double tail_hat = static_cast<double>(s.size() - i) / n;
        d = std::max(d, std::fabs(tail_hat - survival(s[i])));
    }
    return d;
}

double ks_critical_1pct(double n) {
    require(n > 0, "ks_critical_1pct: n must be positive");
    return 1.628 / std::sqrt(n);
}

double ks_critical_1pct_two_sample(double n, double m) {
    require(n > 0 && m > 0, "ks_critical_1pct_two_sample: sizes must be positive");
    return 1.628 * std::sqrt((n + m) / (n * m));
}

double chi_square_stat(std::span<const double> observed,
                       std::span<const double> expected) {
    require(observed.size() == expected.size() && !observed.empty(),
            "chi_square_stat: size mismatch or empty");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        require(expected[i] > 0.0, "chi_square_stat: expected counts must be > 0");
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    return stat;
}

double chi_square_critical_99(int dof) {
    require(dof >= 1, "chi_square_critical_99: dof must be >= 1");
    // Wilson-Hilferty: chi2_p ~ dof (1 - 2/(9 dof) + z_p sqrt(2/(9 dof)))^3.
    const double z99 = 2.3263478740408408; // standard normal 99th percentile
    const double k = static_cast<double>(dof);
    const double a = 1.0 - 2.0 / (9.0 * k) + z99 * std::sqrt(2.0 / (9.0 * k));
    return k * a * a * a;
}

double median(std::span<const double> xs) {
    require(!xs.empty(), "median: empty sample");
    std::vector<double> s(xs.begin(), xs.end());
    const std::size_t h = s.size() / 2;
    std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(h),
                     s.end());
    double v = s[h];
    if (s.size() % 2 == 0) {
        const double below =
            *std::max_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(h));
        v = 0.5 * (below + v);
    }
    return v;
}

double quantile(std::span<const double> xs, double p) {
    require(!xs.empty(), "quantile: empty sample");
    require(p >= 0.0 && p <= 1.0, "quantile: p must lie in [0, 1]");
    std::vector<double> s = sorted_copy(xs);
    const double idx = p * static_cast<double>(s.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    const double w = idx - static_cast<double>(lo);
    return (1.0 - w) * s[lo] + w * s[hi];
}

double sample_levy(Rng& rng) {
    double v;
    do {
        v = rng.next_normal();
    } while (v == 0.0);
    return 1.0 / (v * v);
}

double sample_T(Rng& rng, int n_lattice) {
    require(n_lattice >= 2, "sample_T: n_lattice must be >= 2");
    const std::int64_t n = n_lattice;
    const ExitSample e = ssrw_exit(n, 2 * n, rng);
    return static_cast<double>(e.time) /
           (static_cast<double>(n) * static_cast<double>(n));
}

NuEstimate estimate_nu(std::span<const std::int64_t> times,
                       const std::vector<std::vector<double>>& z_by_checkpoint,
                       bool use_mean, int bootstrap_resamples, Rng& rng) {
    require(times.size() >= 4, "estimate_nu: need at least 4 checkpoints");
    require(times.size() == z_by_checkpoint.size(),
            "estimate_nu: times/values size mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        require(times[i] > times[i - 1], "estimate_nu: times must increase");
    require(times.front() >= 1, "estimate_nu: times must be >= 1");
    require(static_cast<double>(times.back()) >=
                10.0 * static_cast<double>(times.front()),
            "estimate_nu: checkpoints must span at least a decade");
    const std::size_t n_walkers = z_by_checkpoint.front().size();
    require(n_walkers >= 2, "estimate_nu: need at least 2 walkers");
    for (const auto& col : z_by_checkpoint)
        require(col.size() == n_walkers, "estimate_nu: ragged checkpoint data");

    std::vector<double> log_t(times.size());
    for (std::size_t c = 0; c < times.size(); ++c)
        log_t[c] = std::log(static_cast<double>(times[c]));

    auto slope_of = [&](const std::vector<std::size_t>& idx) {
        std::vector<double> log_stat(times.size());
        std::vector<double> col(idx.size());
        for (std::size_t c = 0; c < times.size(); ++c) {
            for (std::size_t w = 0; w < idx.size(); ++w)
                col[w] = z_by_checkpoint[c][idx[w]];
            const double stat = use_mean ? mean_se(col).value : median(col);
            require(stat > 0.0, "estimate_nu: statistic must be positive");
            log_stat[c] = std::log(stat);
        }
        return lsq_slope(log_t, log_stat);
    };

    std::vector<std::size_t> identity(n_walkers);
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    NuEstimate out;
    out.nu_hat = slope_of(identity);
    out.t_lo = static_cast<double>(times.front());
    out.t_hi = static_cast<double>(times.back());
    out.method = use_mean ? "mean" : "median";
    out.std_err = 0.0;
    if (bootstrap_resamples > 0) {
        double mean = 0.0, m2 = 0.0;
        std::vector<std::size_t> idx(n_walkers);
        for (int r = 0; r < bootstrap_resamples; ++r) {
            for (std::size_t w = 0; w < n_walkers; ++w)
                idx[w] = static_cast<std::size_t>(rng.next_double() *
                                                  static_cast<double>(n_walkers));
            const double s = slope_of(idx);
            const double d = s - mean;
            mean += d / static_cast<double>(r + 1);
            m2 += d * (s - mean);
        }
        out.std_err =
            std::sqrt(m2 / static_cast<double>(bootstrap_resamples - 1));
    }
    return out;
}

MeanSe moment_estimate(std::span<const double> xs, double q,
                       int bootstrap_resamples, Rng& rng) {
    require(xs.size() >= 2, "moment_estimate: need at least 2 samples");
    require(q > 0.0 && std::isfinite(q), "moment_estimate: q must be > 0");
    std::vector<double> powered(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        require(xs[i] > 0.0, "moment_estimate: samples must be > 0");
        powered[i] = std::pow(xs[i], q);
    }
    const MeanSe plain = mean_se(powered);
    if (bootstrap_resamples <= 1) return plain;
    const double se = bootstrap_se(
        powered,
        [](std::span<const double> ys) {
            double s = 0.0;
            for (double y : ys) s += y;
            return s / static_cast<double>(ys.size());
        },
        bootstrap_resamples, rng);
    return {plain.value, se};
}

double bootstrap_se(std::span<const double> xs,
                    const std::function<double(std::span<const double>)>& stat,
                    int resamples, Rng& rng) {
    require(xs.size() >= 2, "bootstrap_se: need at least 2 samples");
    require(resamples >= 2, "bootstrap_se: need at least 2 resamples");
    std::vector<double> resampled(xs.size());
    double mean = 0.0, m2 = 0.0;
    for (int r = 0; r < resamples; ++r) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const auto j = static_cast<std::size_t>(
                rng.next_double() * static_cast<double>(xs.size()));
            resampled[i] = xs[j];
        }
        const double s = stat(resampled);
        const double d = s - mean;
        mean += d / static_cast<double>(r + 1);
        m2 += d * (s - mean);
    }
    return std::sqrt(m2 / static_cast<double>(resamples - 1));
}

EnsembleSummary summarize(std::int64_t t, std::span<const double> z,
                          double gamma, std::span<const double> qs,
                          std::span<const double> lambdas,
                          int bootstrap_resamples, Rng& rng) {
    require(t >= 1, "summarize: t must be >= 1");
    require(z.size() >= 2, "summarize: need at least 2 walkers");
    EnsembleSummary out;
    out.t = t;
    out.count = z.size();
    out.z_median = median(z);

    const double nu = model::predict_regime(gamma).nu;
    const double scale = std::pow(static_cast<double>(t), nu);
    std::vector<double> scaled(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        require(z[i] >= 1.0, "summarize: z values must be >= 1");
        scaled[i] = z[i] / scale;
    }
    for (double q : qs) {
        const MeanSe m = moment_estimate(scaled, q, bootstrap_resamples, rng);
        out.moments.push_back({q, m.value, m.se});
    }

    if (gamma >= 0.0 && gamma <= 0.5) {
        out.reference_sorted.resize(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            out.reference_sorted[i] = model::limit_transform_to_reference(
                z[i], static_cast<double>(t), gamma);
        std::sort(out.reference_sorted.begin(), out.reference_sorted.end());
        for (double l : lambdas) {
            const MeanSe m = empirical_laplace(out.reference_sorted, l);
            out.laplace.push_back({l, m.value, m.se});
        }
    }
    return out;
}

} // namespace boldwalk::stats
