// Counter-based random number streams for reproducible parallel ensembles.
//
// Each stream is identified by (master_seed, stream_id) and is generated by a
// Philox-style 2x64 keyed block function over a 128-bit counter, so draws are
// a pure function of (seed, stream, position). Walkers, bootstrap loops and
// verification suites all get disjoint streams from one master seed, and the
// output never depends on scheduling or thread count.

#ifndef BOLDWALK_RNG_HPP
#define BOLDWALK_RNG_HPP

#include <cmath>
#include <cstdint>

namespace boldwalk {

// SplitMix64 finalizer, used to derive auxiliary seeds (bootstrap, suites).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL; // avoid the zero fixed point of the finalizer
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_(master_seed), ctr_hi_(stream_id) {}

    std::uint64_t master_seed() const { return key_; }
    std::uint64_t stream_id() const { return ctr_hi_; }

    // Next 64 uniformly random bits.
    std::uint64_t next_u64() {
        if (buf_pos_ == 2) refill();
        return buf_[buf_pos_++];
    }

    // Uniform double in [0, 1), 53 significant bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Single fair coin flip, served from a 64-bit buffer.
    bool next_bool() {
        if (bits_left_ == 0) {
            bit_buf_ = next_u64();
            bits_left_ = 64;
        }
        bool b = (bit_buf_ & 1u) != 0;
        bit_buf_ >>= 1;
        --bits_left_;
        return b;
    }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1;
        do {
            u1 = next_double();
        } while (u1 == 0.0);
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    static constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ULL;
    static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

    void refill() {
        std::uint64_t x0 = ctr_lo_++;
        std::uint64_t x1 = ctr_hi_;
        std::uint64_t k = key_;
        for (int r = 0; r < 10; ++r) {
            const unsigned __int128 p =
                static_cast<unsigned __int128>(kMul) * x0;
            const std::uint64_t hi = static_cast<std::uint64_t>(p >> 64);
            const std::uint64_t lo = static_cast<std::uint64_t>(p);
            x0 = hi ^ k ^ x1;
            x1 = lo;
            k += kWeyl;
        }
        buf_[0] = x0;
        buf_[1] = x1;
        buf_pos_ = 0;
    }

    std::uint64_t key_;
    std::uint64_t ctr_hi_;
    std::uint64_t ctr_lo_ = 0;
    std::uint64_t buf_[2] = {0, 0};
    int buf_pos_ = 2;
    std::uint64_t bit_buf_ = 0;
    int bits_left_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace boldwalk

#endif // BOLDWALK_RNG_HPP
