#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace simo {

namespace detail {

// Philox4x32-10 counter-based generator as documented in:
//   "Parallel random numbers: as easy as 1, 2, 3", by John K. Salmon,
//   Mark A. Moraes, Ron O. Dror, and David E. Shaw, SC'11.
// The 64-bit key is the master seed; counter words 2..3 carry the stream id
// and words 0..1 the block index, so streams occupy disjoint counter ranges
// and can be generated in any order.
inline std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                               std::array<std::uint32_t, 4> ctr) {
    auto k0 = static_cast<std::uint32_t>(key);
    auto k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0,
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1,
               static_cast<std::uint32_t>(p0)};
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    return ctr;
}

}  // namespace detail

// One independent random tape per (master_seed, stream_id) pair. Identical
// pairs replay identical sequences; distinct ids never share counter blocks.
class SeededStream {
  public:
    SeededStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept
        : key_(master_seed), id_(stream_id) {}

    std::uint64_t master_seed() const noexcept { return key_; }
    std::uint64_t stream_id() const noexcept { return id_; }

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = detail::philox4x32(
                key_, {static_cast<std::uint32_t>(block_),
                       static_cast<std::uint32_t>(block_ >> 32),
                       static_cast<std::uint32_t>(id_),
                       static_cast<std::uint32_t>(id_ >> 32)});
            ++block_;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on (0,1), never returning either endpoint.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Circularly symmetric complex Gaussian, zero mean, E|z|^2 = 1.
    std::complex<double> next_cn01() {
        const double radius = std::sqrt(-std::log(next_unit()));
        const double angle = 2.0 * std::numbers::pi * next_unit();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    // Exponential with unit mean.
    double next_exponential() { return -std::log(next_unit()); }

    // Uniform integer in [0, n); exact whenever n divides 2^32.
    std::uint32_t next_index(std::uint32_t n) {
        return static_cast<std::uint32_t>((std::uint64_t{next_u32()} * n) >> 32);
    }

  private:
    std::uint64_t key_;
    std::uint64_t id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

}  // namespace simo
