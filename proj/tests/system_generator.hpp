#pragma once

// Deterministic generator of randomized moment-constraint systems, shared
// by the solver unit tests and the acceptance run. Everything is derived
// from counter-based blocks, so system k is the same in every build.

#include <array>
#include <cstdint>
#include <vector>

#include "ghzlab/probspace.hpp"
#include "ghzlab/rational.hpp"
#include "ghzlab/rng.hpp"

namespace testgen {

class WordStream {
  public:
    explicit WordStream(std::uint64_t stream) : rng_(0xabcdef12345678ull), stream_(stream) {}

    std::uint32_t next() {
        if (used_ == 4) {
            used_ = 0;
            ++block_;
        }
        if (used_ == 0) {
            words_ = rng_.block(stream_, block_);
        }
        return words_[used_++];
    }

  private:
    ghzlab::Philox4x32 rng_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> words_{};
    unsigned used_ = 0;
};

inline std::vector<int> subset_from_mask(int n, std::uint64_t mask) {
    std::vector<int> subset;
    for (int k = 1; k <= n; ++k) {
        if ((mask >> (k - 1)) & 1u) {
            subset.push_back(k);
        }
    }
    return subset;
}

struct GeneratedSystem {
    int n = 0;
    std::vector<ghzlab::MomentConstraint> constraints;
    std::uint64_t extra_mask = 0; // a third subset to probe with moment_range
};

// Two to four variables, one to n+2 constraints over distinct subsets,
// targets drawn from a palette mixing attainable and contradictory
// values so all three solver outcomes occur across the corpus.
inline GeneratedSystem random_moment_system(std::uint64_t index) {
    using ghzlab::Rational;
    auto q = [](long long num, long long den = 1) { return Rational(num) / Rational(den); };
    const std::vector<Rational> palette = {q(0),     q(1),     q(-1),    q(1, 2),
                                           q(-1, 2), q(1, 4),  q(-1, 4), q(1, 3),
                                           q(2, 3),  q(3, 4),  q(-3, 4)};

    WordStream words(index);
    GeneratedSystem sys;
    sys.n = 2 + static_cast<int>(words.next() % 3);
    const std::uint64_t atom_total = std::uint64_t{1} << sys.n;
    const int wanted = 1 + static_cast<int>(words.next() % (sys.n + 2));

    std::vector<std::uint64_t> used_masks;
    for (int c = 0; c < wanted; ++c) {
        const std::uint64_t mask = 1 + words.next() % (atom_total - 1);
        bool duplicate = false;
        for (std::uint64_t seen : used_masks) {
            duplicate = duplicate || seen == mask;
        }
        if (duplicate) {
            continue;
        }
        used_masks.push_back(mask);
        sys.constraints.push_back(
            {subset_from_mask(sys.n, mask), palette[words.next() % palette.size()]});
    }
    sys.extra_mask = 1 + words.next() % (atom_total - 1);
    return sys;
}

} // namespace testgen
