#include "boldwalk/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boldwalk/model.hpp"
#include "boldwalk/ssrw.hpp"

namespace boldwalk::cycles {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Longest active run tolerated before declaring the parameters unusable
// (p(z) -> 1 fast enough for gamma > 1 makes infinite runs possible).
constexpr std::int64_t kMaxActiveRun = std::int64_t{1} << 40;

} // namespace

std::int64_t sample_m(std::int64_t z, Rng& rng) {
    require(z >= 1, "sample_m: z must be >= 1");
    return ssrw_exit(1, 2 * z, rng).time;
}

ExitTimePmf exit_time_pmf(std::int64_t z, std::int64_t s_max) {
    require(z >= 1, "exit_time_pmf: z must be >= 1");
    require(s_max >= 1, "exit_time_pmf: s_max must be >= 1");
    const std::int64_t sites = 2 * z - 1;
    if (sites * s_max > std::int64_t{4'000'000'000})
        throw std::invalid_argument(
            "exit_time_pmf: (2z-1)*s_max exceeds the work limit");

    // cur[j] = P(walk alive at position -z+1+j after s steps); start at z-1.
    std::vector<double> cur(static_cast<std::size_t>(sites), 0.0);
    std::vector<double> nxt(static_cast<std::size_t>(sites), 0.0);
    cur[static_cast<std::size_t>(sites - 1)] = 1.0;

    ExitTimePmf out;
    out.pmf.assign(static_cast<std::size_t>(s_max), 0.0);
    for (std::int64_t s = 1; s <= s_max; ++s) {
        const double absorbed =
            0.5 * cur[0] + 0.5 * cur[static_cast<std::size_t>(sites - 1)];
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (std::int64_t j = 0; j < sites; ++j) {
            const double mass = cur[static_cast<std::size_t>(j)];
            if (mass == 0.0) continue;
            if (j > 0) nxt[static_cast<std::size_t>(j - 1)] += 0.5 * mass;
            if (j < sites - 1) nxt[static_cast<std::size_t>(j + 1)] += 0.5 * mass;
        }
        out.pmf[static_cast<std::size_t>(s - 1)] = absorbed;
        cur.swap(nxt);
    }
    out.tail = 0.0;
    for (double v : cur) out.tail += v;
    return out;
}

std::int64_t sample_n(std::int64_t z, double gamma, Rng& rng) {
    require(z >= 1, "sample_n: z must be >= 1");
    require(std::isfinite(gamma), "sample_n: gamma must be finite");
    std::int64_t j = 0;
    while (rng.next_double() < model::step_probability(z + j, gamma)) {
        ++j;
        if (j >= kMaxActiveRun)
            throw std::runtime_error("sample_n: active run exceeded 2^40 steps");
    }
    return j;
}

std::vector<CycleRecord> run_cycles(double gamma, CycleStop stop, Rng& rng) {
    require(std::isfinite(gamma), "run_cycles: gamma must be finite");
    require((stop.k_max > 0) != (stop.t_max > 0),
            "run_cycles: exactly one of k_max / t_max must be positive");
    require(stop.k_max >= 0 && stop.t_max >= 0,
            "run_cycles: stop bounds must be nonnegative");

    std::vector<CycleRecord> records;
    if (stop.k_max > 0) records.reserve(static_cast<std::size_t>(stop.k_max));

    // Cycle 1: the walk leaves the origin and climbs 1 + n(1) sites.
    const std::int64_t n1 = sample_n(1, gamma, rng);
    records.push_back({1, 1 + n1, 1 + n1, 0, n1});

    auto done = [&]() {
        if (stop.k_max > 0) return records.back().k >= stop.k_max;
        return records.back().t >= stop.t_max;
    };
    while (!done()) {
        const CycleRecord& prev = records.back();
        const std::int64_t m = sample_m(prev.z, rng);
        const std::int64_t n = sample_n(prev.z, gamma, rng);
        records.push_back({prev.k + 1, prev.t + 1 + m + n, prev.z + n, m, n});
    }
    return records;
}

std::int64_t reconstruct_z(std::span<const CycleRecord> records, std::int64_t t) {
    require(!records.empty(), "reconstruct_z: records must be nonempty");
    require(t >= 1, "reconstruct_z: t must be >= 1");
    require(t <= records.back().t, "reconstruct_z: t beyond the last record");
    if (t <= records.front().t) return t; // initial ascent: z(t) = t
    auto it = std::lower_bound(records.begin(), records.end(), t,
                               [](const CycleRecord& r, std::int64_t value) {
                                   return r.t < value;
                               });
    // it points at the first record with t_k >= t; during its journey z is
    // flat for the 1 + m lazy steps then climbs one site per active step.
    const CycleRecord& cur = *it;
    const CycleRecord& before = *(it - 1);
    const std::int64_t climbed = t - before.t - 1 - cur.m;
    return before.z + std::max<std::int64_t>(0, climbed);
}

double l_of_k(std::span<const CycleRecord> records) {
    require(records.size() >= 2, "l_of_k: need at least 2 cycles");
    const double k = static_cast<double>(records.back().k);
    std::int64_t sum = 0;
    for (const CycleRecord& r : records) sum += r.m;
    return static_cast<double>(sum) / (k * k);
}

stats::MeanSe wald_identity_check(double theta, std::int64_t a, std::int64_t b,
                                  std::int64_t n_paths, Rng& rng) {
    require(theta != 0.0 && std::isfinite(theta),
            "wald_identity_check: theta must be nonzero and finite");
    require(a < 0 && 0 < b, "wald_identity_check: need a < 0 < b");
    require(n_paths >= 2, "wald_identity_check: need at least 2 paths");
    const double log_cosh_theta = model::log_cosh(theta);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t i = 0; i < n_paths; ++i) {
        const ExitSample e = ssrw_exit(b, b - a, rng);
        const double w = static_cast<double>(e.hit_upper ? b : a);
        const double x =
            std::exp(theta * w - static_cast<double>(e.time) * log_cosh_theta);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    const double var = m2 / static_cast<double>(n_paths - 1);
    return {mean, std::sqrt(var / static_cast<double>(n_paths))};
}

} // namespace boldwalk::cycles
