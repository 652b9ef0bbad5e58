#include "sumsetlab/setcore.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

namespace sumsetlab {

double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

BigInt floor_of(const Rational& r)
{
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    BigInt q = num / den;
    if (q * den > num) --q;
    return q;
}

BigInt ceil_of(const Rational& r)
{
    return -floor_of(-r);
}

std::int64_t clamp_to_i64(const BigInt& v)
{
    constexpr auto hi = std::numeric_limits<std::int64_t>::max();
    constexpr auto lo = std::numeric_limits<std::int64_t>::min();
    if (v > hi) return hi;
    if (v < lo) return lo;
    return v.convert_to<std::int64_t>();
}

std::string to_string(const Rational& r)
{
    return r.str();
}

namespace {

// Decimal integer literal; boost would read a leading zero as octal.
BigInt parse_decimal_integer(const std::string& text)
{
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    require(i < text.size(), "empty integer literal");
    BigInt v = 0;
    for (; i < text.size(); ++i) {
        require(text[i] >= '0' && text[i] <= '9', "bad digit in number: " + text);
        v = v * 10 + (text[i] - '0');
    }
    return negative ? BigInt(-v) : v;
}

} // namespace

Rational parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_decimal_integer(text.substr(0, slash));
        BigInt den = parse_decimal_integer(text.substr(slash + 1));
        require(den != 0, "rational with zero denominator: " + text);
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_decimal_integer(text));
    // Decimal literal, read exactly as digits / 10^k.
    std::string frac = text.substr(dot + 1);
    std::string whole = text.substr(0, dot);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(parse_decimal_integer(whole + frac), den);
}

// ---------------------------------------------------------------- IntSet

IntSet::IntSet(std::vector<std::int64_t> elements) : elems_(std::move(elements))
{
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    for (auto x : elems_)
        require(x > -kMaxMagnitude && x < kMaxMagnitude, "IntSet element out of supported range");
}

IntSet::IntSet(std::initializer_list<std::int64_t> elements)
    : IntSet(std::vector<std::int64_t>(elements))
{
}

IntSet IntSet::interval(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> v;
    if (hi >= lo) v.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (auto x = lo; x <= hi; ++x) v.push_back(x);
    return IntSet(std::move(v));
}

IntSet IntSet::progression(std::int64_t start, std::int64_t step, std::int64_t length)
{
    require(length >= 0, "progression length must be nonnegative");
    std::vector<std::int64_t> v;
    v.reserve(static_cast<std::size_t>(length));
    for (std::int64_t i = 0; i < length; ++i) v.push_back(start + i * step);
    return IntSet(std::move(v));
}

bool IntSet::contains(std::int64_t x) const
{
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

// ---------------------------------------------------------------- CycSet

CycSet::CycSet(std::int64_t modulus, std::vector<std::int64_t> residues)
    : modulus_(modulus), res_(std::move(residues))
{
    require(modulus >= 1, "CycSet modulus must be >= 1");
    for (auto& r : res_) r = floor_mod(r, modulus_);
    std::sort(res_.begin(), res_.end());
    res_.erase(std::unique(res_.begin(), res_.end()), res_.end());
}

CycSet::CycSet(std::int64_t modulus, std::initializer_list<std::int64_t> residues)
    : CycSet(modulus, std::vector<std::int64_t>(residues))
{
}

CycSet CycSet::full(std::int64_t modulus)
{
    std::vector<std::int64_t> v(static_cast<std::size_t>(modulus));
    for (std::int64_t i = 0; i < modulus; ++i) v[static_cast<std::size_t>(i)] = i;
    return CycSet(modulus, std::move(v));
}

bool CycSet::contains(std::int64_t r) const
{
    return std::binary_search(res_.begin(), res_.end(), floor_mod(r, modulus_));
}

CycSet CycSet::negated() const
{
    std::vector<std::int64_t> v(res_.begin(), res_.end());
    for (auto& r : v) r = -r;
    return CycSet(modulus_, std::move(v));
}

CycSet CycSet::translated(std::int64_t shift) const
{
    std::vector<std::int64_t> v(res_.begin(), res_.end());
    for (auto& r : v) r += floor_mod(shift, modulus_);
    return CycSet(modulus_, std::move(v));
}

// ------------------------------------------------------------- ConvTable

std::int64_t ConvTable::at(std::int64_t x) const
{
    if (domain == Domain::Cyclic) x = floor_mod(x, modulus);
    auto it = std::lower_bound(entries.begin(), entries.end(), x,
                               [](const auto& e, std::int64_t v) { return e.first < v; });
    return (it != entries.end() && it->first == x) ? it->second : 0;
}

std::int64_t ConvTable::total() const
{
    std::int64_t s = 0;
    for (const auto& e : entries) s += e.second;
    return s;
}

std::int64_t ConvTable::max_count() const
{
    std::int64_t m = 0;
    for (const auto& e : entries) m = std::max(m, e.second);
    return m;
}

namespace {

bool same_elements(std::span<const std::int64_t> a, std::span<const std::int64_t> b)
{
    return a.data() == b.data() ||
           (a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin()));
}

// Counts into a dense array indexed by (sum - lo), reducing modulo `mod` when
// mod > 0.
std::vector<std::pair<std::int64_t, std::int64_t>>
dense_counts(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::int64_t lo,
             std::size_t cells, std::int64_t mod)
{
    std::vector<std::int64_t> counts(cells, 0);
    if (mod > 0) {
        for (auto x : a)
            for (auto y : b) {
                auto s = x + y;
                if (s >= mod) s -= mod;
                ++counts[static_cast<std::size_t>(s)];
            }
    } else {
        for (auto x : a)
            for (auto y : b) ++counts[static_cast<std::size_t>(x + y - lo)];
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::size_t i = 0; i < cells; ++i)
        if (counts[i] != 0) out.emplace_back(static_cast<std::int64_t>(i) + lo, counts[i]);
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>>
sparse_counts(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::int64_t mod)
{
    auto reduce = [mod](std::int64_t s) {
        if (mod > 0 && s >= mod) s -= mod;
        return s;
    };
    // Each stored sum carries a weight; the symmetric case stores i<j pairs
    // once with weight 2.
    std::vector<std::pair<std::int64_t, std::int64_t>> sums;
    if (same_elements(a, b)) {
        sums.reserve(a.size() * (a.size() + 1) / 2);
        for (std::size_t i = 0; i < a.size(); ++i) {
            sums.emplace_back(reduce(a[i] + a[i]), 1);
            for (std::size_t j = i + 1; j < a.size(); ++j) sums.emplace_back(reduce(a[i] + a[j]), 2);
        }
    } else {
        sums.reserve(a.size() * b.size());
        for (auto x : a)
            for (auto y : b) sums.emplace_back(reduce(x + y), 1);
    }
    std::sort(sums.begin(), sums.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& [s, w] : sums) {
        if (!out.empty() && out.back().first == s)
            out.back().second += w;
        else
            out.emplace_back(s, w);
    }
    return out;
}

struct Cluster {
    std::size_t from, to; // element index range [from, to)
    std::int64_t lo, hi;
};

// Greedy runs whose span stays within `width`.
std::vector<Cluster> clusters(std::span<const std::int64_t> v, std::int64_t width)
{
    std::vector<Cluster> out;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i + 1;
        while (j < v.size() && v[j] - v[i] <= width) ++j;
        out.push_back({i, j, v[i], v[j - 1]});
        i = j;
    }
    return out;
}

using Entries = std::vector<std::pair<std::int64_t, std::int64_t>>;

void merge_sorted_entries(Entries& all, Entries& out)
{
    std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (const auto& [s, w] : all) {
        if (!out.empty() && out.back().first == s)
            out.back().second += w;
        else
            out.emplace_back(s, w);
    }
}

// Integer convolution with a huge output span: split both sets into
// bounded-span clusters and convolve cluster pairs densely when the pair is
// dense enough, pairwise otherwise.
Entries clustered_counts(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                         std::size_t threshold)
{
    const auto width = static_cast<std::int64_t>(threshold / 2);
    const bool symmetric = same_elements(a, b);
    const auto ca = clusters(a, width);
    const auto cb = symmetric ? ca : clusters(b, width);

    Entries all;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        for (std::size_t j = symmetric ? i : 0; j < cb.size(); ++j) {
            const auto& x = ca[i];
            const auto& y = cb[j];
            const std::int64_t weight = (symmetric && i != j) ? 2 : 1;
            const auto xa = a.subspan(x.from, x.to - x.from);
            const auto yb = b.subspan(y.from, y.to - y.from);
            const auto cells = static_cast<std::size_t>(x.hi - x.lo + y.hi - y.lo + 1);
            if (cells <= 4 * xa.size() * yb.size()) {
                for (auto e : dense_counts(xa, yb, x.lo + y.lo, cells, 0))
                    all.emplace_back(e.first, e.second * weight);
            } else {
                for (auto e : sparse_counts(xa, yb, 0)) all.emplace_back(e.first, e.second * weight);
            }
        }
    }
    Entries out;
    merge_sorted_entries(all, out);
    return out;
}

} // namespace

ConvTable convolution(const IntSet& a, const IntSet& b, const ConvOptions& opts)
{
    ConvTable t;
    t.domain = ConvTable::Domain::Integers;
    if (a.empty() || b.empty()) return t;
    t.lo = a.min() + b.min();
    t.hi = a.max() + b.max();
    const auto span = static_cast<std::uint64_t>(t.hi - t.lo) + 1;
    if (span <= opts.dense_threshold)
        t.entries = dense_counts(a.elements(), b.elements(), t.lo, static_cast<std::size_t>(span), 0);
    else
        t.entries = clustered_counts(a.elements(), b.elements(), opts.dense_threshold);
    return t;
}

ConvTable convolution(const CycSet& a, const CycSet& b, const ConvOptions& opts)
{
    require(a.modulus() == b.modulus(), "modulus mismatch in convolution");
    ConvTable t;
    t.domain = ConvTable::Domain::Cyclic;
    t.modulus = a.modulus();
    t.lo = 0;
    t.hi = a.modulus() - 1;
    if (a.empty() || b.empty()) return t;
    if (static_cast<std::uint64_t>(a.modulus()) <= opts.dense_threshold)
        t.entries = dense_counts(a.residues(), b.residues(), 0,
                                 static_cast<std::size_t>(a.modulus()), a.modulus());
    else
        t.entries = sparse_counts(a.residues(), b.residues(), a.modulus());
    return t;
}

ConvTable autocorrelation(const CycSet& a, const ConvOptions& opts)
{
    return convolution(a, a.negated(), opts);
}

IntSet sumset(const IntSet& a, const IntSet& b)
{
    auto table = convolution(a, b);
    std::vector<std::int64_t> v;
    v.reserve(table.entries.size());
    for (const auto& e : table.entries) v.push_back(e.first);
    return IntSet(std::move(v));
}

CycSet sumset(const CycSet& a, const CycSet& b)
{
    auto table = convolution(a, b);
    std::vector<std::int64_t> v;
    v.reserve(table.entries.size());
    for (const auto& e : table.entries) v.push_back(e.first);
    return CycSet(a.modulus(), std::move(v));
}

std::int64_t truncated_sum(const ConvTable& table, std::int64_t t)
{
    require(t >= 1, "truncation threshold must be >= 1");
    std::int64_t s = 0;
    for (const auto& e : table.entries) s += std::min(e.second, t);
    return s;
}

Rational truncated_sum(const ConvTable& table, const Rational& t)
{
    require(t > 0, "truncation threshold must be positive");
    // Split into counts below the threshold (exact integers) and those capped at t.
    const auto cap = clamp_to_i64(ceil_of(t));
    std::int64_t below = 0;
    std::int64_t capped = 0;
    for (const auto& e : table.entries) {
        if (e.second < cap)
            below += e.second;
        else
            ++capped;
    }
    return Rational(below) + Rational(capped) * t;
}

std::int64_t truncated_sum(const IntSet& a, const IntSet& b, std::int64_t t)
{
    return truncated_sum(convolution(a, b), t);
}

std::int64_t truncated_sum(const CycSet& a, const CycSet& b, std::int64_t t)
{
    return truncated_sum(convolution(a, b), t);
}

DoublingReport doubling_report(const ConvTable& self_conv, std::int64_t n, std::int64_t t)
{
    require(n >= 1, "doubling report needs a nonempty set");
    require(t >= 1, "doubling report needs t >= 1");
    DoublingReport r;
    r.n = n;
    r.t = t;
    r.truncated = truncated_sum(self_conv, t);
    r.delta = Rational(BigInt(r.truncated), BigInt(n) * t) - 2;
    return r;
}

DoublingReport doubling_report(const IntSet& s, std::int64_t t)
{
    require(!s.empty(), "doubling report needs a nonempty set");
    return doubling_report(convolution(s, s), static_cast<std::int64_t>(s.size()), t);
}

bool is_arithmetic_progression(const IntSet& s)
{
    if (s.size() <= 2) return true;
    auto e = s.elements();
    const auto d = e[1] - e[0];
    for (std::size_t i = 2; i < e.size(); ++i)
        if (e[i] - e[i - 1] != d) return false;
    return true;
}

} // namespace sumsetlab
