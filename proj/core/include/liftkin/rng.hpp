#pragma once

#include <array>
#include <cstdint>

namespace liftkin {

/// Philox-4x32-10 counter-based generator (Salmon et al. 2011).
///
/// Streams are identified by a 64-bit id placed in the upper counter words,
/// so (master_seed, stream_id) -> stream is a pure function and trajectories
/// can be generated independently in any order or thread, bit-identically.
class Philox4x32 {
public:
    Philox4x32(std::uint64_t key, std::uint64_t stream_id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4; // forces refill on first draw
};

/// Random stream with the floating-point draws used by the samplers.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : gen_(master_seed, stream_id) {}

    /// Uniform on (0,1), 53-bit resolution, never exactly 0 or 1.
    double uniform();

    /// Standard normal via Box-Muller (implementation-independent, unlike
    /// std::normal_distribution).
    double normal();

    /// Unit-rate exponential.
    double exponential();

    /// Rademacher +-1.
    double sign();

    std::uint64_t next_u64() { return gen_.next_u64(); }

private:
    Philox4x32 gen_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace liftkin
