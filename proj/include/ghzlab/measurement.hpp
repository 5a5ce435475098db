#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ghzlab/stats.hpp"

namespace ghzlab {

/// Trial log of repeated joint x-basis measurements: one row per trial
/// with a +/-1 outcome per qubit. Rows are stored as sign patterns
/// (bit k-1 set iff S_k = -1), so each row's full product is the parity
/// of its pattern by construction.
class MeasurementRecord {
  public:
    MeasurementRecord(int n, std::uint64_t seed, std::vector<std::uint64_t> patterns);

    int qubit_count() const { return n_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t trials() const { return patterns_.size(); }
    const std::vector<std::uint64_t>& patterns() const { return patterns_; }

    /// Outcome of qubit k (1-based) in trial t (0-based), +1 or -1.
    int sign(std::uint64_t trial, int qubit) const;

    /// Product of all outcomes in trial t.
    int product(std::uint64_t trial) const;

  private:
    int n_;
    std::uint64_t seed_;
    std::vector<std::uint64_t> patterns_;
};

/// Simulates `trials` joint measurements of the commuting family
/// {sigma_1x, ..., sigma_nx}, each on a freshly prepared GHZ_n state.
/// Outcomes are uniform over the 2^(n-1) sign strings with product +1:
/// qubits 1..n-1 get independent fair signs and qubit n's sign closes the
/// product. Identical (seed, n, trials) reproduces the identical record.
MeasurementRecord sample_joint_x(int n, std::uint64_t trials, std::uint64_t seed);

/// Element t is the product over `subset` of trial t's outcomes.
/// Throws on an empty subset or an out-of-range index.
std::vector<int> subset_product_series(const MeasurementRecord& record,
                                       const std::vector<int>& subset);

enum class RandomnessVerdict { Deterministic, ConsistentWithBernoulliHalf, Rejected };

std::string verdict_name(RandomnessVerdict v);

/// Evidence that a +/-1 series is (or is not) an i.i.d. fair-coin process.
struct RandomnessReport {
    std::vector<int> subset;
    std::uint64_t samples = 0;
    TestStat frequency;
    TestStat runs;
    double alpha = 0.0;
    RandomnessVerdict verdict = RandomnessVerdict::Rejected;
};

/// Frequency test of P(+1) = 1/2 plus a Wald-Wolfowitz runs test.
/// Consistent iff both p-values are >= alpha; a constant series is
/// classified deterministic (the frequency test is degenerate there).
/// Requires at least 100 samples.
RandomnessReport bernoulli_test(const std::vector<int>& series, double alpha);

/// CSV form: optional "# key=value" metadata lines, then the header
/// "t,s1,...,sN,product", then one row per trial with values in {-1,1}.
/// write_csv(parse_csv(text)) reproduces the text bit-exactly.
void write_csv(const MeasurementRecord& record, std::ostream& out);
MeasurementRecord parse_csv(std::istream& in);

} // namespace ghzlab
