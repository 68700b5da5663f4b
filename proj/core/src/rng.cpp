#include "liftkin/rng.hpp"

#include <cmath>
#include <numbers>

namespace liftkin {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::uint32_t mulhi(std::uint32_t a, std::uint32_t b, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    return static_cast<std::uint32_t>(p >> 32);
}

} // namespace

Philox4x32::Philox4x32(std::uint64_t key, std::uint64_t stream_id) {
    key_ = {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    counter_ = {0u, 0u,
                static_cast<std::uint32_t>(stream_id),
                static_cast<std::uint32_t>(stream_id >> 32)};
}

void Philox4x32::refill() {
    std::array<std::uint32_t, 4> x = counter_;
    std::uint32_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        std::uint32_t lo0, lo1;
        const std::uint32_t hi0 = mulhi(kPhiloxM0, x[0], lo0);
        const std::uint32_t hi1 = mulhi(kPhiloxM1, x[2], lo1);
        x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    block_ = x;
    pos_ = 0;
    if (++counter_[0] == 0u)
        ++counter_[1]; // 64-bit block counter; stream words untouched
}

std::uint32_t Philox4x32::next_u32() {
    if (pos_ >= 4)
        refill();
    return block_[static_cast<std::size_t>(pos_++)];
}

std::uint64_t Philox4x32::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double RngStream::uniform() {
    // 53 random bits into (0,1); offset by half an ulp so 0 is impossible
    return (static_cast<double>(gen_.next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

double RngStream::exponential() {
    return -std::log(uniform());
}

double RngStream::sign() {
    return (gen_.next_u32() & 1u) ? 1.0 : -1.0;
}

} // namespace liftkin
