#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzlab/measurement.hpp"
#include "ghzlab/rng.hpp"
#include "ghzlab/stats.hpp"
#include "ghzlab/verify.hpp"

using namespace ghzlab;

TEST_SUITE("measurement") {

TEST_CASE("philox4x32-10 reproduces the published known-answer vectors") {
    // Counter and key words are listed little-endian (word 0 first), the
    // layout used by the reference implementation's kat_vectors file.
    {
        const Philox4x32 rng(0);
        const auto out = rng.block(0, 0);
        CHECK(out[0] == 0x6627e8d5u);
        CHECK(out[1] == 0xe169c58du);
        CHECK(out[2] == 0xbc57ac4cu);
        CHECK(out[3] == 0x9b00dbd8u);
    }
    {
        const Philox4x32 rng(~std::uint64_t{0});
        const auto out = rng.block(~std::uint64_t{0}, ~std::uint64_t{0});
        CHECK(out[0] == 0x408f276du);
        CHECK(out[1] == 0x41c83b0eu);
        CHECK(out[2] == 0xa20bc7c6u);
        CHECK(out[3] == 0x6d5451fdu);
    }
    {
        const Philox4x32 rng(0x299f31d0a4093822ull);
        const auto out = rng.block(0x85a308d3243f6a88ull, 0x0370734413198a2eull);
        CHECK(out[0] == 0xd16cfe09u);
        CHECK(out[1] == 0x94fdccebu);
        CHECK(out[2] == 0x5001e420u);
        CHECK(out[3] == 0x24126ea1u);
    }
}

TEST_CASE("philox blocks are a pure function of key and counter") {
    const Philox4x32 a(123);
    const Philox4x32 b(123);
    CHECK(a.block(5) == b.block(5));
    CHECK(a.block(5) == a.block(5));
    CHECK(a.block(5) != a.block(6));
    CHECK(a.block(5, 0) != a.block(5, 1));
    CHECK(Philox4x32(124).block(5) != a.block(5));
    CHECK(a.seed() == 123);
}

TEST_CASE("trial bit streams walk the block sequence of their trial") {
    const std::uint64_t seed = 99;
    TrialBitStream stream(seed, 7);
    const Philox4x32 rng(seed);
    const auto block0 = rng.block(7, 0);
    const auto block1 = rng.block(7, 1);
    // First 128 bits come from block (7, 0), low bit of word 0 first.
    for (int i = 0; i < 128; ++i) {
        const bool expected = (block0[i / 32] >> (i % 32)) & 1u;
        CHECK(stream.next_bit() == expected);
    }
    // Bit 128 starts block (7, 1).
    CHECK(stream.next_bit() == ((block1[0] & 1u) != 0));

    // Streams for different trials disagree somewhere early on.
    TrialBitStream s1(seed, 0);
    TrialBitStream s2(seed, 1);
    bool differ = false;
    for (int i = 0; i < 64; ++i) {
        differ = differ || (s1.next_bit() != s2.next_bit());
    }
    CHECK(differ);
}

TEST_CASE("sampling is reproducible and trial-pure") {
    const MeasurementRecord a = sample_joint_x(4, 1000, 7);
    const MeasurementRecord b = sample_joint_x(4, 1000, 7);
    CHECK(a.patterns() == b.patterns());
    CHECK(a.seed() == 7);
    CHECK(a.trials() == 1000);
    CHECK(a.qubit_count() == 4);

    // Trial t depends only on (seed, t), so a shorter run is a prefix.
    const MeasurementRecord c = sample_joint_x(4, 250, 7);
    for (std::uint64_t t = 0; t < c.trials(); ++t) {
        CHECK(c.patterns()[t] == a.patterns()[t]);
    }

    const MeasurementRecord d = sample_joint_x(4, 1000, 8);
    CHECK(a.patterns() != d.patterns());
}

TEST_CASE("every sampled trial has full product plus one") {
    for (int n = 1; n <= 6; ++n) {
        const MeasurementRecord record = sample_joint_x(n, 2000, 31);
        for (std::uint64_t t = 0; t < record.trials(); ++t) {
            CHECK(record.product(t) == 1);
            CHECK(std::popcount(record.patterns()[t]) % 2 == 0);
        }
    }
    // One qubit leaves no freedom at all.
    const MeasurementRecord single = sample_joint_x(1, 500, 9);
    for (std::uint64_t t = 0; t < single.trials(); ++t) {
        CHECK(single.patterns()[t] == 0);
        CHECK(single.sign(t, 1) == 1);
    }
}

TEST_CASE("signs and products read back from the stored patterns") {
    // Patterns fixed by hand: bit k-1 set means qubit k measured -1.
    const MeasurementRecord record(3, 0, {0b000, 0b011, 0b101, 0b110});
    CHECK(record.sign(0, 1) == 1);
    CHECK(record.sign(1, 1) == -1);
    CHECK(record.sign(1, 2) == -1);
    CHECK(record.sign(1, 3) == 1);
    CHECK(record.sign(2, 3) == -1);
    CHECK(record.product(0) == 1);
    CHECK(record.product(1) == 1);
    CHECK(record.product(3) == 1);
    CHECK_THROWS_AS(record.sign(0, 0), std::out_of_range);
    CHECK_THROWS_AS(record.sign(0, 4), std::out_of_range);

    CHECK_THROWS_AS(MeasurementRecord(2, 0, {0b100}), std::invalid_argument);
    CHECK_THROWS_AS(MeasurementRecord(0, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(sample_joint_x(0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_joint_x(3, 0, 1), std::invalid_argument);
}

TEST_CASE("subset products multiply the chosen columns") {
    const MeasurementRecord record(3, 0, {0b000, 0b011, 0b101, 0b110});
    CHECK(subset_product_series(record, {1}) == std::vector<int>{1, -1, -1, 1});
    CHECK(subset_product_series(record, {1, 2}) == std::vector<int>{1, 1, -1, -1});
    CHECK(subset_product_series(record, {1, 2, 3}) == std::vector<int>{1, 1, 1, 1});
    CHECK(subset_product_series(record, {3, 1}) == subset_product_series(record, {1, 3}));
    CHECK_THROWS_AS(subset_product_series(record, {}), std::invalid_argument);
    CHECK_THROWS_AS(subset_product_series(record, {0}), std::invalid_argument);
    CHECK_THROWS_AS(subset_product_series(record, {4}), std::invalid_argument);
}

TEST_CASE("marginals of proper subsets are empirically unbiased") {
    const std::uint64_t trials = 100000;
    const MeasurementRecord record = sample_joint_x(4, trials, kDefaultSeed);
    const double bound = 5.0 / std::sqrt(static_cast<double>(trials));
    for (std::uint64_t mask = 1; mask < 15; ++mask) {
        std::vector<int> subset;
        for (int k = 1; k <= 4; ++k) {
            if ((mask >> (k - 1)) & 1u) {
                subset.push_back(k);
            }
        }
        const auto series = subset_product_series(record, subset);
        long long sum = 0;
        for (int s : series) {
            sum += s;
        }
        const double mean = static_cast<double>(sum) / static_cast<double>(trials);
        CHECK(std::abs(mean) < bound);
    }
}

TEST_CASE("sampled patterns are uniform over the admissible sign strings") {
    // The 2^(n-1) even-parity patterns should be equally likely.
    for (int n = 2; n <= 6; ++n) {
        const std::uint64_t trials = 100000;
        const MeasurementRecord record = sample_joint_x(n, trials, kDefaultSeed);
        const std::size_t classes = std::size_t{1} << (n - 1);
        std::vector<std::uint64_t> observed(classes, 0);
        for (std::uint64_t pattern : record.patterns()) {
            // Even-parity patterns are indexed by their low n-1 bits.
            ++observed[pattern & (classes - 1)];
        }
        const std::vector<double> expected(
            classes, static_cast<double>(trials) / static_cast<double>(classes));
        const TestStat gof = chi_square_test(observed, expected);
        CHECK(gof.p_value > 0.001);
    }
}

TEST_CASE("bernoulli test classifies fair, constant and patterned series") {
    const double alpha = 0.01;

    SUBCASE("constant series are deterministic") {
        const std::vector<int> plus(500, 1);
        const RandomnessReport r = bernoulli_test(plus, alpha);
        CHECK(r.verdict == RandomnessVerdict::Deterministic);
        CHECK(r.samples == 500);
        const std::vector<int> minus(500, -1);
        CHECK(bernoulli_test(minus, alpha).verdict == RandomnessVerdict::Deterministic);
    }

    SUBCASE("heavily biased series are rejected by the frequency test") {
        std::vector<int> biased(1000, 1);
        for (std::size_t i = 0; i < biased.size(); i += 10) {
            biased[i] = -1;
        }
        const RandomnessReport r = bernoulli_test(biased, alpha);
        CHECK(r.verdict == RandomnessVerdict::Rejected);
        CHECK(r.frequency.p_value < alpha);
    }

    SUBCASE("a strictly alternating series is rejected by the runs test") {
        std::vector<int> alternating(1000);
        for (std::size_t i = 0; i < alternating.size(); ++i) {
            alternating[i] = i % 2 == 0 ? 1 : -1;
        }
        const RandomnessReport r = bernoulli_test(alternating, alpha);
        CHECK(r.verdict == RandomnessVerdict::Rejected);
        // The frequency test alone cannot see the pattern.
        CHECK(r.frequency.p_value > alpha);
        CHECK(r.runs.p_value < alpha);
    }

    SUBCASE("fair counter-based bits pass both tests") {
        std::vector<int> fair;
        fair.reserve(20000);
        TrialBitStream bits(2024, 0);
        for (int i = 0; i < 20000; ++i) {
            fair.push_back(bits.next_bit() ? 1 : -1);
        }
        const RandomnessReport r = bernoulli_test(fair, alpha);
        CHECK(r.verdict == RandomnessVerdict::ConsistentWithBernoulliHalf);
        CHECK(r.frequency.p_value >= alpha);
        CHECK(r.runs.p_value >= alpha);
    }

    SUBCASE("short series are refused") {
        CHECK_THROWS_AS(bernoulli_test(std::vector<int>(99, 1), alpha),
                        std::invalid_argument);
        CHECK_THROWS_AS(bernoulli_test({}, alpha), std::invalid_argument);
    }

    SUBCASE("verdict names are stable identifiers") {
        CHECK(verdict_name(RandomnessVerdict::Deterministic) == "deterministic");
        CHECK(verdict_name(RandomnessVerdict::ConsistentWithBernoulliHalf) ==
              "consistent-with-Bernoulli(1/2)");
        CHECK(verdict_name(RandomnessVerdict::Rejected) == "rejected");
    }
}

TEST_CASE("csv writing and parsing round-trip bit-exactly") {
    const MeasurementRecord record = sample_joint_x(3, 200, 17);
    std::ostringstream first;
    write_csv(record, first);

    std::istringstream back(first.str());
    const MeasurementRecord parsed = parse_csv(back);
    CHECK(parsed.qubit_count() == record.qubit_count());
    CHECK(parsed.seed() == record.seed());
    CHECK(parsed.patterns() == record.patterns());

    std::ostringstream second;
    write_csv(parsed, second);
    CHECK(second.str() == first.str());

    // Spot-check the layout.
    std::istringstream lines(first.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# seed=17");
    std::getline(lines, line);
    CHECK(line == "# semantics=fresh-preparation-per-trial");
    std::getline(lines, line);
    CHECK(line == "t,s1,s2,s3,product");
}

TEST_CASE("csv parser names the offending line") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_csv(in);
    };

    CHECK_THROWS_WITH_AS(parse("t,s1\n0,1\n"),
                         "record CSV line 1: header must be 't,s1,...,sN,product'",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse("t,s2,product\n0,1,1\n"),
                         "record CSV line 1: header column 2 must be 's1'",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse("t,s1,product\n0,2,1\n"),
                         "record CSV line 2: field 's1' must be 1 or -1",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse("t,s1,s2,product\n0,1,-1,1\n"),
                         "record CSV line 2: field 'product' does not equal the product of "
                         "the outcomes",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse("t,s1,product\n1,1,1\n"),
                         "record CSV line 2: field 't' must increase from 0 by 1",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse("t,s1,product\n0,1,1\n2,1,1\n"),
                         "record CSV line 3: field 't' must increase from 0 by 1",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse("t,s1,product\n0,one,1\n"),
                         "record CSV line 2: field 's1' is not an integer: 'one'",
                         std::invalid_argument);
    CHECK_THROWS_AS(parse(""), std::invalid_argument);
    CHECK_THROWS_AS(parse("t,s1,product\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("# seed notanumber\nt,s1,product\n0,1,1\n"),
                    std::invalid_argument);

    // Unknown metadata keys are tolerated, blank lines are skipped.
    const MeasurementRecord ok =
        parse("# seed=5\n# comment=anything\nt,s1,s2,product\n0,1,1,1\n\n1,-1,-1,1\n");
    CHECK(ok.seed() == 5);
    CHECK(ok.trials() == 2);
    CHECK(ok.patterns() == std::vector<std::uint64_t>{0b00, 0b11});
}

TEST_CASE("statistics helpers behave at the edges") {
    const TestStat even = frequency_test(500, 1000);
    CHECK(even.statistic == 0.0);
    CHECK(even.p_value == doctest::Approx(1.0));

    const TestStat lopsided = frequency_test(900, 1000);
    CHECK(lopsided.p_value < 1e-9);

    const TestStat constant_runs = runs_test(std::vector<int>(100, 1));
    CHECK(constant_runs.p_value == 1.0);

    const TestStat uniform_fit =
        chi_square_test({250, 250, 250, 250}, {250.0, 250.0, 250.0, 250.0});
    CHECK(uniform_fit.statistic == 0.0);
    CHECK(uniform_fit.p_value == doctest::Approx(1.0));

    const TestStat bad_fit = chi_square_test({1000, 0, 0, 0}, {250.0, 250.0, 250.0, 250.0});
    CHECK(bad_fit.p_value < 1e-12);

    CHECK(binary_entropy(Rational(0)) == 0.0);
    CHECK(binary_entropy(Rational(1)) == 0.0);
    CHECK(binary_entropy(Rational(1) / Rational(2)) == 1.0);
    CHECK(binary_entropy(Rational(1) / Rational(4)) ==
          doctest::Approx(0.8112781244591328).epsilon(1e-12));
    CHECK(binary_entropy(Rational(3) / Rational(4)) ==
          binary_entropy(Rational(1) / Rational(4)));
    CHECK_THROWS_AS(binary_entropy(Rational(-1) / Rational(10)), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(Rational(11) / Rational(10)), std::invalid_argument);
}

} // TEST_SUITE
