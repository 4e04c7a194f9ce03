// Estimators and goodness-of-fit machinery used by the verification suites:
// empirical Laplace transforms, KS-type distances, reference samplers for the
// two limit laws, scaling-exponent fits and bootstrap standard errors.

#ifndef BOLDWALK_STATS_HPP
#define BOLDWALK_STATS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "boldwalk/rng.hpp"
#include "boldwalk/stats_types.hpp"

namespace boldwalk::stats {

// Sample mean and standard error.
MeanSe mean_se(std::span<const double> xs);

// Mean of e^{-lambda x} over the sample, with standard error. lambda = 0
// returns exactly {1, 0}.
MeanSe empirical_laplace(std::span<const double> xs, double lambda);

// One-sample Kolmogorov-Smirnov distance against a cdf. The cdf is spot
// checked on the sorted sample (monotone, within [0, 1]) and rejected when
// it misbehaves.
double ks_distance(std::span<const double> xs,
                   const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(std::span<const double> a,
                              std::span<const double> b);

// sup over attained values v of |P_hat(X >= v) - survival(v)|. The right
// comparison for lattice-valued data, where a continuous-cdf KS distance
// carries an irreducible point-mass offset.
double tail_sup_distance(std::span<const double> xs,
                         const std::function<double(double)>& survival);

// Asymptotic KS critical values at the 1% level: c(0.01) = 1.628.
double ks_critical_1pct(double n);
double ks_critical_1pct_two_sample(double n, double m);

// Pearson chi-square statistic for pre-binned counts (expected > 0 each bin)
// and the 99th-percentile chi-square quantile via the Wilson-Hilferty cube
// approximation.
double chi_square_stat(std::span<const double> observed,
                       std::span<const double> expected);
double chi_square_critical_99(int dof);

// Median (average-of-middles for even n) and general quantile by sorting.
double median(std::span<const double> xs);
double quantile(std::span<const double> xs, double p);

// One-sided Levy(1/2) sampler, L = 1/N(0,1)^2: the limit law of the
// normalized lazy time. Uses one normal draw per sample.
double sample_levy(Rng& rng);

// Exit time of Brownian motion from [-1, 1], approximated by a symmetric
// walk on {-n_lattice..n_lattice} with time rescaled by n_lattice^2.
double sample_T(Rng& rng, int n_lattice = 200);

// Least-squares slope of log(statistic of z) vs log(t) over checkpoints,
// statistic = median (default) or mean over walkers. Standard error by
// bootstrap over walkers: resampling whole walker trajectories keeps the
// cross-checkpoint correlation intact. Requires >= 4 checkpoints spanning
// at least one decade, all with the same walker count.
struct NuEstimate {
    double nu_hat;
    double std_err;
    double t_lo;
    double t_hi;
    std::string method;
};
NuEstimate estimate_nu(std::span<const std::int64_t> times,
                       const std::vector<std::vector<double>>& z_by_checkpoint,
                       bool use_mean, int bootstrap_resamples, Rng& rng);

// Mean of x^q with a bootstrap standard error (percentile bootstrap over the
// sample, se = sd of the resampled means).
MeanSe moment_estimate(std::span<const double> xs, double q,
                       int bootstrap_resamples, Rng& rng);

// Generic bootstrap standard error of a statistic of one sample.
double bootstrap_se(std::span<const double> xs,
                    const std::function<double(std::span<const double>)>& stat,
                    int resamples, Rng& rng);

// One checkpoint of an ensemble, condensed: moments of the scaled record
// z/t^nu, Laplace points of the regime's reference variable (T_hat for
// gamma = 0, L_hat for 0 < gamma <= 1/2, empty otherwise) and the sorted
// reference samples for ECDF work.
struct QMoment {
    double q;
    double value;
    double se;
};
struct LaplacePoint {
    double lambda;
    double value;
    double se;
};
struct EnsembleSummary {
    std::int64_t t;
    std::size_t count;
    double z_median;
    std::vector<QMoment> moments;
    std::vector<LaplacePoint> laplace;
    std::vector<double> reference_sorted;
};

EnsembleSummary summarize(std::int64_t t, std::span<const double> z,
                          double gamma, std::span<const double> qs,
                          std::span<const double> lambdas,
                          int bootstrap_resamples, Rng& rng);

} // namespace boldwalk::stats

#endif // BOLDWALK_STATS_HPP
