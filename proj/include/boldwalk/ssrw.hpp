// Exit-time sampling for the simple symmetric walk, shared by the cycle
// engine (lazy journeys), the Brownian reference sampler and the Wald checks.

#ifndef BOLDWALK_SSRW_HPP
#define BOLDWALK_SSRW_HPP

#include <cstdint>
#include <stdexcept>

#include "boldwalk/rng.hpp"

namespace boldwalk {

struct ExitSample {
    std::int64_t time;
    bool hit_upper;
};

// Exit time of a simple symmetric walk from an interval, tracked through the
// distance d to the upper barrier: d moves by +-1 per step, absorption at
// d == 0 (upper barrier) or d == width (lower barrier). Steps are consumed
// 64 at a time from one u64; while both barriers are more than 64 away the
// net displacement of a whole word is applied at once via popcount, which is
// exact because no absorption can occur inside such a word.
inline ExitSample ssrw_exit(std::int64_t d, std::int64_t width, Rng& rng) {
    if (width < 2 || d <= 0 || d >= width)
        throw std::invalid_argument("ssrw_exit: need 0 < d < width, width >= 2");
    std::int64_t steps = 0;
    for (;;) {
        const std::uint64_t word = rng.next_u64();
        if (d > 64 && width - d > 64) {
            d += 64 - 2 * __builtin_popcountll(word);
            steps += 64;
            continue;
        }
        std::uint64_t w = word;
        for (int i = 0; i < 64; ++i) {
            d += (w & 1u) ? -1 : 1;
            w >>= 1;
            ++steps;
            if (d == 0) return {steps, true};
            if (d == width) return {steps, false};
        }
    }
}

} // namespace boldwalk

#endif // BOLDWALK_SSRW_HPP
