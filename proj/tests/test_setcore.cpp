#include "support.hpp"

#include "sumsetlab/setcore.hpp"

#include "doctest.h"

#include <cmath>

using namespace sumsetlab;
using testing::Gen;

namespace {

std::vector<std::int64_t> vec(const IntSet& s)
{
    return {s.begin(), s.end()};
}

std::vector<std::int64_t> vec(const CycSet& s)
{
    return {s.begin(), s.end()};
}

void expect_matches(const ConvTable& t, const std::map<std::int64_t, std::int64_t>& oracle)
{
    REQUIRE(t.entries.size() == oracle.size());
    auto it = oracle.begin();
    for (const auto& [x, c] : t.entries) {
        CHECK(x == it->first);
        CHECK(c == it->second);
        ++it;
    }
}

} // namespace

TEST_CASE("IntSet sorts, dedups and bounds magnitudes")
{
    const IntSet s{5, 1, 3, 1, 5};
    CHECK(vec(s) == std::vector<std::int64_t>{1, 3, 5});
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(2));
    CHECK(IntSet::interval(2, 4) == IntSet{2, 3, 4});
    CHECK(IntSet::progression(1, 3, 4) == IntSet{1, 4, 7, 10});
    CHECK(IntSet::interval(3, 2).empty());
    CHECK_THROWS_AS(IntSet({kMaxMagnitude}), Error);
    CHECK_NOTHROW(IntSet({kMaxMagnitude - 1, -(kMaxMagnitude - 1)}));
}

TEST_CASE("CycSet reduces residues")
{
    const CycSet s(7, {-1, 8, 15, 3});
    CHECK(vec(s) == std::vector<std::int64_t>{1, 3, 6});
    CHECK(s.negated() == CycSet(7, {6, 4, 1}));
    CHECK(s.translated(2) == CycSet(7, {3, 5, 1}));
    CHECK(CycSet::full(4).size() == 4);
    CHECK_THROWS_AS(CycSet(0, {}), Error);
}

TEST_CASE("sumset examples")
{
    CHECK(sumset(IntSet{1, 2, 3}, IntSet{1, 2, 3}) == IntSet{2, 3, 4, 5, 6});
    const IntSet a{0, 1, 3, 7};
    const auto s = sumset(a, a);
    CHECK(s == IntSet{0, 1, 2, 3, 4, 6, 7, 8, 10, 14});
    CHECK(s.size() == 10);
    CHECK(sumset(IntSet{0}, IntSet{4, 9}) == IntSet{4, 9});
    CHECK(sumset(IntSet{}, IntSet{4, 9}).empty());
    CHECK(sumset(CycSet(5, {1, 2}), CycSet(5, {4})) == CycSet(5, {0, 1}));
    CHECK_THROWS_AS(sumset(CycSet(5, {1}), CycSet(6, {1})), Error);
}

TEST_CASE("convolution examples")
{
    CHECK(convolution(IntSet{0, 1, 2}, IntSet{0, 1, 2}).at(2) == 3);
    const auto c = convolution(IntSet::interval(0, 9), IntSet::interval(0, 9));
    CHECK(c.at(9) == 10);
    CHECK(c.at(0) == 1);
    CHECK(c.at(18) == 1);
    CHECK(c.at(19) == 0);
    const auto single = convolution(IntSet{0}, IntSet{5});
    REQUIRE(single.entries.size() == 1);
    CHECK(single.entries[0] == std::pair<std::int64_t, std::int64_t>{5, 1});
    CHECK(convolution(IntSet{}, IntSet{1, 2}).entries.empty());
    CHECK(convolution(IntSet{}, IntSet{1, 2}).total() == 0);
}

TEST_CASE("convolution agrees with pair enumeration on every kernel")
{
    Gen g(1);
    for (int round = 0; round < 300; ++round) {
        std::vector<std::int64_t> a, b;
        switch (round % 3) {
        case 0:
            a = g.subset(g.range(-50, 0), g.range(0, 60), 20);
            b = g.subset(g.range(-20, 10), g.range(10, 40), 30);
            break;
        case 1: // two far clusters
            a = g.subset(0, 30, 20);
            for (auto x : g.subset(0, 20, 30)) a.push_back(x + 1'000'000'000);
            b = g.scattered(static_cast<int>(g.range(1, 25)), -1'000'000'000'000, 1'000'000'000'000);
            break;
        default:
            a = g.scattered(static_cast<int>(g.range(0, 40)), -(kMaxMagnitude - 1), kMaxMagnitude - 1);
            b = a;
            break;
        }
        const IntSet sa(a), sb(b);
        const auto oracle = testing::brute_conv(a, b);
        for (std::size_t threshold : {std::size_t{1}, std::size_t{64}, std::size_t{1} << 20}) {
            ConvOptions o;
            o.dense_threshold = threshold;
            const auto t = convolution(sa, sb, o);
            expect_matches(t, oracle);
            CHECK(t.total() == static_cast<std::int64_t>(sa.size() * sb.size()));
        }
        const auto expected = testing::brute_sumset(a, b);
        if (!expected.empty() && (*expected.begin() <= -kMaxMagnitude || *expected.rbegin() >= kMaxMagnitude))
            CHECK_THROWS_AS(sumset(sa, sb), Error);
        else
            CHECK(vec(sumset(sa, sb)) == std::vector<std::int64_t>(expected.begin(), expected.end()));
    }
}

TEST_CASE("cyclic convolution agrees with pair enumeration")
{
    Gen g(2);
    for (int round = 0; round < 200; ++round) {
        const auto n = g.range(1, 90);
        const auto a = g.subset(0, n - 1, static_cast<int>(g.range(1, 64)));
        const auto b = g.subset(0, n - 1, static_cast<int>(g.range(1, 64)));
        const CycSet ca(n, a), cb(n, b);
        for (std::size_t threshold : {std::size_t{1}, std::size_t{1} << 20}) {
            ConvOptions o;
            o.dense_threshold = threshold;
            const auto t = convolution(ca, cb, o);
            expect_matches(t, testing::brute_conv(a, b, n));
            CHECK(t.total() == static_cast<std::int64_t>(a.size() * b.size()));
            for (const auto& [x, c] : t.entries) CHECK(c <= static_cast<std::int64_t>(std::min(a.size(), b.size())));
        }
        // 1_A * 1_{-A}(x) = |A ∩ (A + x)|
        const auto ac = autocorrelation(ca);
        for (std::int64_t x = 0; x < n; ++x) {
            std::int64_t overlap = 0;
            for (auto v : a) overlap += ca.contains(testing::mod(v - x, n)) ? 1 : 0;
            CHECK(ac.at(x) == overlap);
        }
    }
}

TEST_CASE("1_S * 1_{-S} is symmetric about 0")
{
    Gen g(3);
    for (int round = 0; round < 100; ++round) {
        const auto v = g.subset(g.range(-30, 30), g.range(30, 90), 25);
        if (v.empty()) continue;
        std::vector<std::int64_t> neg;
        for (auto x : v) neg.push_back(-x);
        const auto t = convolution(IntSet(v), IntSet(neg));
        CHECK(t.at(0) == static_cast<std::int64_t>(v.size()));
        for (const auto& [x, c] : t.entries) CHECK(t.at(-x) == c);
    }
}

TEST_CASE("truncated_sum examples")
{
    const auto ten = IntSet::interval(0, 9);
    CHECK(truncated_sum(ten, ten, 2) == 36);
    CHECK(truncated_sum(IntSet{0, 1, 3, 7}, IntSet{0, 1, 3, 7}, 1) == 10);
    CHECK(truncated_sum(IntSet{0}, IntSet{0}, 1) == 1);
    CHECK_THROWS_AS(truncated_sum(ten, ten, 0), Error);
}

TEST_CASE("truncated_sum: monotone in t, |A+B| at 1, |A||B| at the max count")
{
    Gen g(4);
    for (int round = 0; round < 150; ++round) {
        const auto a = g.subset(0, g.range(1, 40), 30);
        const auto b = round % 2 ? a : g.subset(-10, g.range(0, 30), 40);
        const IntSet sa(a), sb(b);
        if (sa.empty() || sb.empty()) continue;
        const auto table = convolution(sa, sb);
        CHECK(truncated_sum(sa, sb, 1) == static_cast<std::int64_t>(sumset(sa, sb).size()));
        std::int64_t prev = 0;
        for (std::int64_t t = 1; t <= table.max_count() + 2; ++t) {
            const auto cur = truncated_sum(table, t);
            CHECK(cur == testing::brute_truncated(a, b, t));
            CHECK(cur >= prev);
            prev = cur;
        }
        CHECK(truncated_sum(table, table.max_count()) == static_cast<std::int64_t>(sa.size() * sb.size()));
    }
}

TEST_CASE("truncation monotonicity: S_t >= (t/t') S_t' for t < t'")
{
    Gen g(5);
    for (int round = 0; round < 150; ++round) {
        const auto n = g.range(2, 40);
        const CycSet a(n, g.subset(0, n - 1, 40)), b(n, g.subset(0, n - 1, 40));
        const auto table = convolution(a, b);
        for (int trial = 0; trial < 10; ++trial) {
            const Rational t(g.range(1, 40), g.range(1, 8));
            const Rational tp = t + Rational(g.range(1, 40), g.range(1, 8));
            CHECK(truncated_sum(table, t) * tp >= t * truncated_sum(table, tp));
        }
    }
}

TEST_CASE("mass bound: S_t >= (t/M)|A||B| for t <= M = min(|A|,|B|)")
{
    Gen g(6);
    for (int round = 0; round < 150; ++round) {
        const auto n = g.range(2, 40);
        const CycSet a(n, g.subset(0, n - 1, 40)), b(n, g.subset(0, n - 1, 40));
        const auto m = static_cast<std::int64_t>(std::min(a.size(), b.size()));
        if (m == 0) continue;
        const auto table = convolution(a, b);
        const Rational mass(static_cast<std::int64_t>(a.size() * b.size()));
        for (std::int64_t num = 1; num <= 4 * m; ++num) {
            const Rational t(num, 4);
            CHECK(truncated_sum(table, t) * m >= t * mass);
        }
    }
}

TEST_CASE("rational truncation matches the integer one on integers")
{
    const auto table = convolution(IntSet{0, 1, 3, 7, 8}, IntSet{0, 1, 3, 7, 8});
    for (std::int64_t t = 1; t < 7; ++t) CHECK(truncated_sum(table, Rational(t)) == Rational(truncated_sum(table, t)));
    CHECK(truncated_sum(table, Rational(1, 2)) == Rational(table.support_size(), 2));
}

TEST_CASE("integer Pollard bound holds exhaustively on [0, 12)")
{
    for (std::uint32_t mask = 1; mask < (1U << 12); ++mask) {
        std::vector<std::int64_t> v;
        for (int i = 0; i < 12; ++i)
            if ((mask >> i) & 1U) v.push_back(i);
        const IntSet s(v);
        const auto n = static_cast<std::int64_t>(v.size());
        const auto table = convolution(s, s);
        for (std::int64_t t = 1; t <= n; ++t) REQUIRE(truncated_sum(table, t) >= t * (2 * n - t));
    }
}

TEST_CASE("doubling_report examples")
{
    const auto r = doubling_report(IntSet::interval(0, 9), 1);
    CHECK(r.truncated == 19);
    CHECK(r.delta == Rational(-1, 10));

    auto v = IntSet::interval(0, 998);
    std::vector<std::int64_t> e(v.begin(), v.end());
    e.push_back(1'000'000);
    const auto w = doubling_report(IntSet(e), 10);
    CHECK(w.truncated == 10 * (2 * 999 - 10) + 2 * 999 + 1);
    CHECK(w.truncated == 21879);
    CHECK(w.delta == Rational(1879, 10000));
    CHECK(w.delta_value() == doctest::Approx(0.1879));

    const auto one = doubling_report(IntSet{0}, 1);
    CHECK(one.truncated == 1);
    CHECK(one.delta == -1);
    CHECK_THROWS_AS(doubling_report(IntSet{}, 1), Error);
}

TEST_CASE("scalar inequality s^2 >= t(2s - min(2s, t))")
{
    Gen g(7);
    for (int i = 0; i < 20000; ++i) {
        const double s = -10 + 20 * g.unit();
        const double t = 10 * (1 - g.unit()); // (0, 10]
        CHECK(s * s >= t * (2 * s - std::min(2 * s, t)) - 1e-9);
    }
}

TEST_CASE("intersection triangle inequality")
{
    // |U ∩ (V - v)| + |U ∩ (W - w)| <= |U| + |V ∩ (W - w + v)| in Z/nZ.
    Gen g(8);
    for (int round = 0; round < 3000; ++round) {
        const auto n = g.range(1, 25);
        const CycSet u(n, g.subset(0, n - 1, 32)), vv(n, g.subset(0, n - 1, 32)), ww(n, g.subset(0, n - 1, 32));
        const auto v = g.range(0, n - 1), w = g.range(0, n - 1);
        auto overlap = [&](const CycSet& x, const CycSet& y, std::int64_t shift) {
            std::int64_t c = 0;
            for (auto r : x) c += y.contains(testing::mod(r + shift, n)) ? 1 : 0;
            return c; // |x ∩ (y - shift)|
        };
        const auto lhs = overlap(u, vv, v) + overlap(u, ww, w);
        const auto rhs = static_cast<std::int64_t>(u.size()) + overlap(vv, ww, w - v);
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("is_arithmetic_progression")
{
    CHECK(is_arithmetic_progression(IntSet{}));
    CHECK(is_arithmetic_progression(IntSet{4}));
    CHECK(is_arithmetic_progression(IntSet{4, 100}));
    CHECK(is_arithmetic_progression(IntSet{1, 4, 7}));
    CHECK_FALSE(is_arithmetic_progression(IntSet{1, 4, 8}));
}

TEST_CASE("parse_rational and to_string")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("010") == 10);
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK(to_string(Rational(-3, 4)) == "-3/4");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(floor_of(Rational(-1, 2)) == -1);
    CHECK(ceil_of(Rational(-1, 2)) == 0);
    CHECK(clamp_to_i64(BigInt(1) << 80) == std::numeric_limits<std::int64_t>::max());
}
