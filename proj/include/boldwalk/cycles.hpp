// Cycle (journey) decomposition of the bold walk.
//
// Between consecutive record values the walk performs one journey: a lazy
// phase (one inward step off the record followed by a symmetric excursion in
// [-z, z] of length m, the interval exit time from z-1) and an active phase
// (a run of n consecutive outward record steps, n possibly 0 for the next
// journey's bookkeeping but always >= 0). Simulating journeys instead of
// single steps gives the same law of (t(k), z(k)) at a fraction of the cost
// and is the engine behind the long-horizon regime checks.

#ifndef BOLDWALK_CYCLES_HPP
#define BOLDWALK_CYCLES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "boldwalk/rng.hpp"
#include "boldwalk/stats_types.hpp"

namespace boldwalk::cycles {

// State after cycle k: time t and record z when the k-th active phase has
// finished, together with the lazy length m and active run n of the journey
// that produced it. Cycle 1 is the synthetic start (first ascent from the
// origin): m = 0 by convention, t = z = 1 + n(1).
struct CycleRecord {
    std::int64_t k;
    std::int64_t t;
    std::int64_t z;
    std::int64_t m;
    std::int64_t n;
};

// Stop rule for run_cycles: exactly one of the two bounds must be positive.
struct CycleStop {
    std::int64_t k_max = 0;
    std::int64_t t_max = 0;

    static CycleStop at_k(std::int64_t k) { return {k, 0}; }
    static CycleStop at_t(std::int64_t t) { return {0, t}; }
};

// Lazy journey length m(z): exit time of a symmetric walk started at z-1
// from [-z, z]. z = 1 returns 1 surely.
std::int64_t sample_m(std::int64_t z, Rng& rng);

// Exact law of m(z) by probability propagation over the 2z-1 interior sites,
// truncated at s_max steps; `tail` is the mass not yet absorbed, so
// sum(pmf) + tail == 1 up to roundoff. Throws when (2z-1)*s_max exceeds the
// built-in work limit.
struct ExitTimePmf {
    std::vector<double> pmf; // pmf[s-1] = P(m = s), s = 1..s_max
    double tail;
};
ExitTimePmf exit_time_pmf(std::int64_t z, std::int64_t s_max);

// Active run length n(z): number of consecutive outward-step successes,
// P(n >= j) = prod_{s=0}^{j-1} p(z+s).
std::int64_t sample_n(std::int64_t z, double gamma, Rng& rng);

// Full journey recursion from the origin until the stop rule fires.
std::vector<CycleRecord> run_cycles(double gamma, CycleStop stop, Rng& rng);

// z(t) for any 1 <= t <= records.back().t, reconstructed from the journey
// records: z stays flat during each lazy phase and climbs by one per step
// during active phases (and during the initial ascent z(t) = t).
std::int64_t reconstruct_z(std::span<const CycleRecord> records, std::int64_t t);

// Normalized lazy time L(k) = (sum of m over cycles 1..k) / k^2.
double l_of_k(std::span<const CycleRecord> records);

// Monte Carlo check of the exponential-martingale identity
// E[ e^{theta w(tau)} / cosh(theta)^tau ] = 1 for the symmetric walk exit
// position w(tau) in {a, b} and exit time tau from [a, b]. Returns the
// sample mean and its standard error.
stats::MeanSe wald_identity_check(double theta, std::int64_t a, std::int64_t b,
                                  std::int64_t n_paths, Rng& rng);

} // namespace boldwalk::cycles

#endif // BOLDWALK_CYCLES_HPP
