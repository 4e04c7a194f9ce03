#include "boldwalk/walk.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "boldwalk/model.hpp"
#include "boldwalk/parallel.hpp"

namespace boldwalk::walk {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

constexpr std::int64_t kMaxHorizon = std::int64_t{1} << 62;

void validate_checkpoints(std::span<const std::int64_t> checkpoints,
                          std::int64_t t_max) {
    std::int64_t prev = 0;
    for (std::int64_t c : checkpoints) {
        require(c > prev, "checkpoints must be strictly increasing and >= 1");
        require(c <= t_max, "checkpoints must not exceed t_max");
        prev = c;
    }
}

} // namespace

void validate_state(const WalkerState& state) {
    require(std::isfinite(state.gamma), "walker state: gamma must be finite");
    require(state.t >= 0 && state.t <= kMaxHorizon, "walker state: bad t");
    require(state.z >= 0 && state.z <= state.t, "walker state: need 0 <= z <= t");
    require(std::llabs(state.x) <= state.z, "walker state: need |x| <= z");
    require(((state.x + state.t) & 1) == 0, "walker state: x + t must be even");
}

void step(WalkerState& state, Rng& rng) {
    validate_state(state);
    std::int64_t dx;
    if (state.z > 0 && std::llabs(state.x) == state.z) {
        const double p = model::step_probability(state.z, state.gamma);
        const std::int64_t outward = (state.x > 0) ? 1 : -1;
        dx = (rng.next_double() < p) ? outward : -outward;
    } else {
        dx = rng.next_bool() ? 1 : -1;
    }
    state.x += dx;
    state.t += 1;
    if (std::llabs(state.x) > state.z) state.z = std::llabs(state.x);
}

std::vector<CheckpointRecord> run_walker(double gamma, std::int64_t t_max,
                                         std::span<const std::int64_t> checkpoints,
                                         Rng& rng) {
    require(std::isfinite(gamma), "run_walker: gamma must be finite");
    require(t_max >= 1 && t_max <= kMaxHorizon, "run_walker: bad t_max");
    validate_checkpoints(checkpoints, t_max);

    const std::int64_t final_only[1] = {t_max};
    std::span<const std::int64_t> cps =
        checkpoints.empty() ? std::span<const std::int64_t>(final_only)
                            : checkpoints;

    std::vector<CheckpointRecord> out;
    out.reserve(cps.size());

    std::int64_t x = 0, z = 0, t = 0;
    std::size_t ci = 0;
    std::uint64_t bits = 0;
    int bits_left = 0;
    std::int64_t cached_z = -1;
    double cached_p = 0.0;

    while (t < t_max) {
        const std::int64_t next_cp = cps[ci];
        // Whole 64-step words can be applied at once while the walk cannot
        // reach its record (no biased step, no new record) and no checkpoint
        // falls inside the word. popcount gives the net displacement.
        if (z - std::llabs(x) > 66 && next_cp - t >= 64) {
            const std::uint64_t word = rng.next_u64();
            x += 2 * __builtin_popcountll(word) - 64;
            t += 64;
            bits_left = 0; // keep bit consumption aligned to fresh words
            continue;
        }
        std::int64_t dx;
        if (z > 0 && std::llabs(x) == z) {
            if (z != cached_z) {
                cached_z = z;
                cached_p = model::step_probability(z, gamma);
            }
            const std::int64_t outward = (x > 0) ? 1 : -1;
            dx = (rng.next_double() < cached_p) ? outward : -outward;
        } else {
            if (bits_left == 0) {
                bits = rng.next_u64();
                bits_left = 64;
            }
            dx = (bits & 1u) ? 1 : -1;
            bits >>= 1;
            --bits_left;
        }
        x += dx;
        t += 1;
        if (std::llabs(x) > z) z = std::llabs(x);
        if (t == next_cp) {
            out.push_back({0, t, z, x});
            ++ci;
            if (ci == cps.size()) break;
        }
    }
    return out;
}

std::vector<CheckpointRecord> run_ensemble(double gamma, std::int64_t t_max,
                                           std::span<const std::int64_t> checkpoints,
                                           std::int64_t n_walkers,
                                           std::uint64_t master_seed,
                                           int threads) {
    require(n_walkers >= 1, "run_ensemble: need n_walkers >= 1");
    require(t_max >= 1 && t_max <= kMaxHorizon, "run_ensemble: bad t_max");
    validate_checkpoints(checkpoints, t_max);

    const std::size_t per_walker = checkpoints.empty() ? 1 : checkpoints.size();
    std::vector<CheckpointRecord> out(
        static_cast<std::size_t>(n_walkers) * per_walker);
    parallel_for(n_walkers, threads, [&](std::int64_t wid) {
        Rng rng(master_seed, static_cast<std::uint64_t>(wid));
        std::vector<CheckpointRecord> recs =
            run_walker(gamma, t_max, checkpoints, rng);
        for (std::size_t j = 0; j < recs.size(); ++j) {
            recs[j].walker_id = wid;
            out[static_cast<std::size_t>(wid) * per_walker + j] = recs[j];
        }
    });
    return out;
}

} // namespace boldwalk::walk
