#pragma once

#include <cstdint>

namespace slabuq {

/// Counter-based random stream with cheap, collision-safe substream
/// derivation.
///
/// The whole pipeline draws from streams keyed by (master_seed,
/// stream_index), so any trial, frame, or dropout sample can be recomputed
/// in isolation and results are bit-identical across runs, platforms, and
/// thread counts. Outputs come from the splitmix64 finalizer over a keyed
/// counter; substreams re-key through a second mix so a child never
/// overlaps its parent's output sequence.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : key_(derive_key(master_seed, stream_index)) {}

    std::uint64_t next_u64() {
        counter_ += 0x9E3779B97F4A7C15ull;
        return finalize(key_ + counter_);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// True with probability p (p <= 0 never, p >= 1 always).
    bool bernoulli(double p) { return next_double() < p; }

    /// Independent child stream. Derivation depends only on this stream's
    /// key and the index, not on how many values have been drawn.
    RngStream substream(std::uint64_t index) const {
        return RngStream(FromKey{}, derive_key(key_ ^ 0x6A09E667F3BCC909ull, index));
    }

private:
    struct FromKey {};
    RngStream(FromKey, std::uint64_t key) : key_(key) {}

    // splitmix64 output scrambler
    static std::uint64_t finalize(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ull;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBull;
        x ^= x >> 31;
        return x;
    }

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t a = finalize(seed + 0x9E3779B97F4A7C15ull);
        std::uint64_t b = finalize(index + 0xD1B54A32D192ED03ull);
        return finalize(a ^ (b + 0x8CB92BA72F3D8DD7ull + (a << 6) + (a >> 2)));
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace slabuq
