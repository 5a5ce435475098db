#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "ghzlab/rational.hpp"
#include "ghzlab/simplex.hpp"

using namespace ghzlab;

namespace {

Rational q(long long num, long long den = 1) { return Rational(num) / Rational(den); }

} // namespace

TEST_SUITE("exact") {

TEST_CASE("rational parsing canonicalizes and round-trips") {
    CHECK(parse_rational("1/2") == q(1, 2));
    CHECK(parse_rational("-4/6") == q(-2, 3));
    CHECK(parse_rational("3/-6") == q(-1, 2));
    CHECK(parse_rational("-3/-6") == q(1, 2));
    CHECK(parse_rational("7") == q(7));
    CHECK(parse_rational("-7") == q(-7));
    CHECK(parse_rational("0/5") == q(0));
    CHECK(parse_rational("0") == q(0));
    CHECK(parse_rational("10/4") == q(5, 2));

    CHECK(rational_str(q(1, 2)) == "1/2");
    CHECK(rational_str(q(-2, 3)) == "-2/3");
    CHECK(rational_str(q(5)) == "5");
    CHECK(rational_str(q(-1)) == "-1");
    CHECK(rational_str(q(0)) == "0");
    CHECK(rational_str(q(4, 2)) == "2");

    for (const char* text : {"1/2", "-2/3", "7", "0", "-1", "355/113"}) {
        CHECK(rational_str(parse_rational(text)) == text);
    }
}

TEST_CASE("rational parsing rejects malformed text") {
    for (const char* text : {"", " ", "1/0", "a", "1/2/3", "1.5", "1/ 2", "2/", "/3", "+-1",
                             "0x10", "1e3"}) {
        CHECK_THROWS_AS(parse_rational(text), std::invalid_argument);
    }
}

TEST_CASE("simplex solves a pinned-sum toy problem") {
    // x1 + x2 = 1, x >= 0.
    ExactSimplex lp({{q(1), q(1)}}, {q(1)});
    REQUIRE(lp.find_feasible());
    CHECK(lp.variable_count() == 2);

    const auto lo = lp.minimize({q(1), q(0)});
    REQUIRE(lo.status == LpStatus::Optimal);
    CHECK(lo.value == q(0));
    CHECK(lo.x == std::vector<Rational>{q(0), q(1)});

    const auto hi = lp.maximize({q(1), q(0)});
    REQUIRE(hi.status == LpStatus::Optimal);
    CHECK(hi.value == q(1));
    CHECK(hi.x == std::vector<Rational>{q(1), q(0)});
}

TEST_CASE("simplex detects infeasibility") {
    // x1 + x2 = 1 and x1 + x2 = 2 cannot both hold.
    ExactSimplex lp({{q(1), q(1)}, {q(1), q(1)}}, {q(1), q(2)});
    CHECK_FALSE(lp.find_feasible());

    // Negative right-hand side with nonnegative coefficients.
    ExactSimplex negative({{q(1), q(1)}}, {q(-1)});
    CHECK_FALSE(negative.find_feasible());
}

TEST_CASE("simplex drops redundant rows and still solves") {
    // The second row is the first row doubled.
    ExactSimplex lp({{q(1), q(1)}, {q(2), q(2)}}, {q(1), q(2)});
    REQUIRE(lp.find_feasible());
    const auto r = lp.maximize({q(3), q(1)});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == q(3));
    CHECK(r.x == std::vector<Rational>{q(1), q(0)});
}

TEST_CASE("simplex reports unbounded objectives") {
    // x1 - x2 = 0 leaves the ray x1 = x2 = t free.
    ExactSimplex lp({{q(1), q(-1)}}, {q(0)});
    REQUIRE(lp.find_feasible());
    CHECK(lp.maximize({q(1), q(0)}).status == LpStatus::Unbounded);
    CHECK(lp.minimize({q(-1), q(0)}).status == LpStatus::Unbounded);
    // The same system is bounded below.
    const auto r = lp.minimize({q(1), q(0)});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == q(0));
}

TEST_CASE("simplex handles degenerate vertices with exact arithmetic") {
    // Three constraints meet at (0, 0, 1): x1 + x3 = 1, x2 + x3 = 1,
    // x1 + x2 + x3 = 1. Bland's rule must not cycle here.
    ExactSimplex lp({{q(1), q(0), q(1)}, {q(0), q(1), q(1)}, {q(1), q(1), q(1)}},
                    {q(1), q(1), q(1)});
    REQUIRE(lp.find_feasible());
    const auto r = lp.maximize({q(1), q(1), q(0)});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == q(0));
    CHECK(r.x == std::vector<Rational>{q(0), q(0), q(1)});
}

TEST_CASE("fractional data stays exact through pivoting") {
    // x1/3 + x2/7 = 1/21 forces tiny exact values.
    ExactSimplex lp({{q(1, 3), q(1, 7)}}, {q(1, 21)});
    REQUIRE(lp.find_feasible());
    const auto lo = lp.minimize({q(0), q(1)});
    REQUIRE(lo.status == LpStatus::Optimal);
    CHECK(lo.value == q(0));
    CHECK(lo.x == std::vector<Rational>{q(1, 7), q(0)});
    const auto hi = lp.maximize({q(0), q(1)});
    REQUIRE(hi.status == LpStatus::Optimal);
    CHECK(hi.value == q(1, 3));
    CHECK(hi.x == std::vector<Rational>{q(0), q(1, 3)});
}

TEST_CASE("warm-started objectives match fresh solves") {
    const std::vector<std::vector<Rational>> a = {
        {q(1), q(1), q(1), q(1)},
        {q(1), q(-1), q(1), q(-1)},
    };
    const std::vector<Rational> b = {q(1), q(0)};

    ExactSimplex warm(a, b);
    REQUIRE(warm.find_feasible());

    const std::vector<std::vector<Rational>> objectives = {
        {q(1), q(0), q(0), q(0)},
        {q(0), q(1), q(0), q(0)},
        {q(-1), q(2), q(0), q(1)},
        {q(1), q(1), q(1), q(1)},
        {q(0), q(0), q(0), q(-1)},
    };
    for (const auto& c : objectives) {
        ExactSimplex fresh(a, b);
        REQUIRE(fresh.find_feasible());
        const auto expected_min = fresh.minimize(c);
        const auto expected_max = fresh.maximize(c);

        const auto got_min = warm.minimize(c);
        const auto got_max = warm.maximize(c);
        REQUIRE(got_min.status == expected_min.status);
        REQUIRE(got_max.status == expected_max.status);
        CHECK(got_min.value == expected_min.value);
        CHECK(got_max.value == expected_max.value);
    }
}

TEST_CASE("solutions satisfy the constraints they came from") {
    const std::vector<std::vector<Rational>> a = {
        {q(2), q(1), q(0)},
        {q(0), q(1), q(3)},
    };
    const std::vector<Rational> b = {q(1), q(1)};
    ExactSimplex lp(a, b);
    REQUIRE(lp.find_feasible());
    for (int var = 0; var < 3; ++var) {
        std::vector<Rational> c(3, q(0));
        c[static_cast<std::size_t>(var)] = q(1);
        for (const auto& r : {lp.minimize(c), lp.maximize(c)}) {
            REQUIRE(r.status == LpStatus::Optimal);
            REQUIRE(r.x.size() == 3);
            for (std::size_t row = 0; row < a.size(); ++row) {
                Rational acc(0);
                for (std::size_t col = 0; col < a[row].size(); ++col) {
                    acc += a[row][col] * r.x[col];
                }
                CHECK(acc == b[row]);
            }
            for (const auto& value : r.x) {
                CHECK(value >= 0);
            }
        }
    }
}

TEST_CASE("simplex rejects malformed systems") {
    CHECK_THROWS_AS(ExactSimplex({{q(1), q(1)}}, {q(1), q(2)}), std::invalid_argument);
    CHECK_THROWS_AS(ExactSimplex({{q(1)}, {q(1), q(2)}}, {q(1), q(2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExactSimplex({}, {}), std::invalid_argument);

    ExactSimplex lp({{q(1), q(1)}}, {q(1)});
    REQUIRE(lp.find_feasible());
    CHECK_THROWS_AS(lp.minimize({q(1)}), std::invalid_argument);
    CHECK_THROWS_AS(lp.minimize({q(1), q(0), q(0)}), std::invalid_argument);
}

} // TEST_SUITE
