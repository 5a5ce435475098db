#pragma once

#include <cstdint>
#include <vector>

#include "ghzlab/rational.hpp"

namespace ghzlab {

struct TestStat {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sided normal-approximation binomial test of P(+1) = 1/2.
TestStat frequency_test(std::uint64_t plus_count, std::uint64_t total);

/// Wald-Wolfowitz runs test for serial independence of a +/-1 series.
/// Degenerate (constant) series get statistic 0 and p-value 1; callers
/// classify those separately.
TestStat runs_test(const std::vector<int>& series);

/// Pearson chi-square goodness-of-fit statistic and p-value for observed
/// counts against the given expected counts (survival function of the
/// chi-square distribution with counts.size()-1 degrees of freedom).
TestStat chi_square_test(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& expected);

/// Shannon entropy in bits of a {p, 1-p} coin, with 0 log 0 = 0. The
/// endpoints and the fair coin are decided on the exact rational, so
/// they return exactly 0.0 and 1.0. p must lie in [0, 1].
double binary_entropy(const Rational& p);

} // namespace ghzlab
