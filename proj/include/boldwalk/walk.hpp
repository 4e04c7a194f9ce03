// Direct step-by-step simulation of the bold walk. Slower than the cycle
// engine but makes no structural assumptions, so it anchors the equivalence
// tests and serves any gamma, including gamma < 0 where cycles are useless.

#ifndef BOLDWALK_WALK_HPP
#define BOLDWALK_WALK_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "boldwalk/rng.hpp"

namespace boldwalk::walk {

struct WalkerState {
    std::int64_t x = 0; // position
    std::int64_t z = 0; // running max of |x|
    std::int64_t t = 0; // steps taken
    double gamma = 0.0;
};

struct CheckpointRecord {
    std::int64_t walker_id;
    std::int64_t t;
    std::int64_t z;
    std::int64_t x;
};

// Throws std::invalid_argument unless |x| <= z <= t and x + t is even.
void validate_state(const WalkerState& state);

// Advance one step: symmetric +-1 in the interior, outward with probability
// p(z) = z^gamma/(1+z^gamma) when sitting on the record |x| = z.
void step(WalkerState& state, Rng& rng);

// Run a fresh walker to t_max, emitting (t, z, x) at each checkpoint time.
// Checkpoints must be strictly increasing within [1, t_max]; an empty list
// records the final state only. walker_id in the output is left at 0.
std::vector<CheckpointRecord> run_walker(double gamma, std::int64_t t_max,
                                         std::span<const std::int64_t> checkpoints,
                                         Rng& rng);

// Independent walkers on streams (master_seed, 0..n_walkers-1), concatenated
// in walker order. The thread count affects wall time only, never output.
std::vector<CheckpointRecord> run_ensemble(double gamma, std::int64_t t_max,
                                           std::span<const std::int64_t> checkpoints,
                                           std::int64_t n_walkers,
                                           std::uint64_t master_seed,
                                           int threads = 1);

} // namespace boldwalk::walk

#endif // BOLDWALK_WALK_HPP
