#include "ghzlab/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace ghzlab {

namespace {

double two_sided_normal_p(double z) {
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

} // namespace

TestStat frequency_test(std::uint64_t plus_count, std::uint64_t total) {
    if (total == 0) {
        throw std::invalid_argument("frequency test needs a nonempty series");
    }
    const double m = static_cast<double>(total);
    const double z = (2.0 * static_cast<double>(plus_count) - m) / std::sqrt(m);
    return {z, two_sided_normal_p(z)};
}

TestStat runs_test(const std::vector<int>& series) {
    if (series.empty()) {
        throw std::invalid_argument("runs test needs a nonempty series");
    }
    std::uint64_t n_plus = 0;
    std::uint64_t runs = 1;
    for (std::size_t i = 0; i < series.size(); ++i) {
        n_plus += series[i] > 0;
        if (i > 0 && series[i] != series[i - 1]) {
            ++runs;
        }
    }
    const std::uint64_t n_minus = series.size() - n_plus;
    if (n_plus == 0 || n_minus == 0) {
        return {0.0, 1.0};
    }
    const double n1 = static_cast<double>(n_plus);
    const double n2 = static_cast<double>(n_minus);
    const double n = n1 + n2;
    const double mean = 2.0 * n1 * n2 / n + 1.0;
    const double var = 2.0 * n1 * n2 * (2.0 * n1 * n2 - n) / (n * n * (n - 1.0));
    if (var <= 0.0) {
        return {0.0, 1.0};
    }
    const double z = (static_cast<double>(runs) - mean) / std::sqrt(var);
    return {z, two_sided_normal_p(z)};
}

TestStat chi_square_test(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& expected) {
    if (observed.size() != expected.size() || observed.size() < 2) {
        throw std::invalid_argument("chi-square test needs matching categories (at least 2)");
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) {
            throw std::invalid_argument("chi-square expected counts must be positive");
        }
        const double diff = static_cast<double>(observed[i]) - expected[i];
        stat += diff * diff / expected[i];
    }
    boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
    return {stat, boost::math::cdf(boost::math::complement(dist, stat))};
}

double binary_entropy(const Rational& p) {
    if (p < 0 || p > 1) {
        throw std::invalid_argument("binary_entropy needs p in [0, 1], got " + rational_str(p));
    }
    if (p.is_zero() || p == 1) {
        return 0.0;
    }
    if (p == Rational(1, 2)) {
        return 1.0;
    }
    const double x = static_cast<double>(p);
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

} // namespace ghzlab
