#include "support.hpp"

#include "sumsetlab/entropy.hpp"

#include "doctest.h"

#include <cmath>

using namespace sumsetlab;
using testing::Gen;

namespace {

// Pascal's triangle in long double, independent of the library's BigInt path.
long double pascal(int n, int k)
{
    std::vector<long double> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<long double> next(static_cast<std::size_t>(i) + 1, 1);
        for (int j = 1; j < i; ++j)
            next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j) - 1] + row[static_cast<std::size_t>(j)];
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

} // namespace

TEST_CASE("binary entropy values")
{
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
    CHECK(binary_entropy(0.1) == doctest::Approx(0.4689955935892812).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(-0.01), Error);
    CHECK_THROWS_AS(binary_entropy(1.01), Error);
    CHECK_THROWS_AS(binary_entropy(std::nan("")), Error);
}

TEST_CASE("binary entropy: symmetry, concavity, range")
{
    Gen g(41);
    for (int i = 0; i < 5000; ++i) {
        const double t = g.unit();
        const double u = g.unit();
        CHECK(std::abs(binary_entropy(t) - binary_entropy(1 - t)) <= 1e-12);
        CHECK(binary_entropy(t) >= 0);
        CHECK(binary_entropy(t) <= 1);
        const double lam = g.unit();
        const double mixed = binary_entropy(lam * t + (1 - lam) * u);
        CHECK(mixed >= lam * binary_entropy(t) + (1 - lam) * binary_entropy(u) - 1e-12);
        // Concave with H(0) = 0, hence subadditive.
        if (t + u <= 1) CHECK(binary_entropy(t + u) <= binary_entropy(t) + binary_entropy(u) + 1e-12);
    }
}

TEST_CASE("binomial against Pascal's triangle")
{
    for (int n = 0; n <= 60; ++n)
        for (int k = 0; k <= n; ++k) CHECK(static_cast<long double>(binomial(n, k)) == pascal(n, k));
    CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
    CHECK_THROWS_AS(binomial(3, 4), Error);
    CHECK_THROWS_AS(binomial(-1, 0), Error);
}

TEST_CASE("sandwich example n = 10, k = 5")
{
    const auto c = binom_sandwich(10, 5);
    CHECK(c.lhs == 252);
    CHECK(c.holds);
    CHECK(to_double(c.rhs) == doctest::Approx(1024.0 / 11).epsilon(1e-12));
    REQUIRE(c.rhs_upper);
    CHECK(to_double(*c.rhs_upper) == doctest::Approx(1024.0).epsilon(1e-12));
    // Outward rounding: the bounds enclose the exact values.
    CHECK(c.rhs <= Rational(1024, 11));
    CHECK(*c.rhs_upper >= 1024);
}

TEST_CASE("sandwich at the edges")
{
    for (int n = 0; n <= 40; ++n) {
        const auto lo = binom_sandwich(n, 0);
        const auto hi = binom_sandwich(n, n);
        CHECK(lo.lhs == 1);
        CHECK(lo.holds);
        CHECK(hi.holds);
    }
    CHECK_THROWS_AS(binom_sandwich(5, 6), Error);
}

TEST_CASE("tail example n = 20, delta = 0.3")
{
    const auto c = binom_tail(20, 0.3);
    CHECK(c.lhs == 60460);
    CHECK(c.holds);
    CHECK(to_double(c.rhs) == doctest::Approx(std::exp2(20 * binary_entropy(0.3))).epsilon(1e-12));
    CHECK(binom_tail(20, Rational(3, 10)).lhs == 60460);
}

TEST_CASE("tail edge cases")
{
    const auto one = binom_tail(1, 0.0);
    CHECK(one.lhs == 1);
    CHECK(one.holds);
    CHECK(binom_tail(0, 0.5).lhs == 1);
    CHECK(binom_tail(10, 0.5).lhs == 638);
    CHECK_THROWS_AS(binom_tail(10, 0.51), Error);
    CHECK_THROWS_AS(binom_tail(10, -0.1), Error);
    CHECK_THROWS_AS(binom_tail(-1, 0.2), Error);
}

TEST_CASE("tail partial sums match brute force for random delta")
{
    Gen g(42);
    for (int i = 0; i < 300; ++i) {
        const int n = static_cast<int>(g.range(1, 80));
        const auto num = g.range(0, 50);
        const Rational delta(num, 100);
        const auto c = binom_tail(n, delta);
        long double partial = 0;
        for (int j = 0; 100 * j <= num * n; ++j) partial += pascal(n, j);
        CHECK(to_double(c.lhs) == doctest::Approx(static_cast<double>(partial)).epsilon(1e-12));
        CHECK(c.holds);
    }
}

TEST_CASE("sweep finds no violations")
{
    const auto s = entropy_sweep(120);
    CHECK(s.sandwich_checks == 121 * 122 / 2);
    CHECK(s.tail_checks == 121 * 51);
    CHECK(s.violations.empty());
    CHECK_THROWS_AS(entropy_sweep(-1), Error);
}
