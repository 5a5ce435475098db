#pragma once

#include <array>
#include <cstdint>

namespace ghzlab {

/// Philox4x32-10 counter-based generator. Output depends only on
/// (key, counter), so trial t's randomness is a pure function of
/// (seed, t) and independent streams can be drawn in any order.
class Philox4x32 {
  public:
    explicit Philox4x32(std::uint64_t key) : key_(key) {}

    /// 128 random bits for a 128-bit counter given as two 64-bit halves.
    std::array<std::uint32_t, 4> block(std::uint64_t ctr_lo, std::uint64_t ctr_hi = 0) const {
        std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(ctr_lo),
            static_cast<std::uint32_t>(ctr_lo >> 32),
            static_cast<std::uint32_t>(ctr_hi),
            static_cast<std::uint32_t>(ctr_hi >> 32),
        };
        std::uint32_t k0 = static_cast<std::uint32_t>(key_);
        std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
        round(ctr, k0, k1);
        for (int r = 1; r < 10; ++r) {
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
            round(ctr, k0, k1);
        }
        return ctr;
    }

    std::uint64_t seed() const { return key_; }

  private:
    static void round(std::array<std::uint32_t, 4>& ctr, std::uint32_t k0, std::uint32_t k1) {
        const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
    }

    std::uint64_t key_;
};

/// Fair-bit stream for one trial: bit i of trial t is bit (i mod 128) of
/// Philox block (t, i / 128).
class TrialBitStream {
  public:
    TrialBitStream(std::uint64_t seed, std::uint64_t trial)
        : rng_(seed), trial_(trial) {}

    bool next_bit() {
        if (used_ == 0) {
            block_ = rng_.block(trial_, block_index_++);
        }
        const bool bit = (block_[used_ / 32] >> (used_ % 32)) & 1u;
        used_ = (used_ + 1) % 128;
        return bit;
    }

  private:
    Philox4x32 rng_;
    std::uint64_t trial_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint32_t, 4> block_{};
    unsigned used_ = 0;
};

} // namespace ghzlab
