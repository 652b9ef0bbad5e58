#include "sumsetlab/bounds.hpp"

#include <algorithm>
#include <numeric>

namespace sumsetlab {

bool BoundCheck::evaluate() const
{
    switch (relation) {
    case Relation::AtLeast: return lhs >= rhs;
    case Relation::AtMost: return lhs <= rhs;
    case Relation::Within: return rhs_upper && rhs <= lhs && lhs <= *rhs_upper;
    }
    return false;
}

BoundCheck make_check(std::string name, BoundCheck::Relation rel, Rational lhs, Rational rhs,
                      std::optional<Rational> rhs_upper, nlohmann::json witness)
{
    BoundCheck c;
    c.name = std::move(name);
    c.relation = rel;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.rhs_upper = std::move(rhs_upper);
    c.witness = std::move(witness);
    c.holds = c.evaluate();
    return c;
}

// ------------------------------------------------------------ APDescriptor

APDescriptor APDescriptor::make(std::int64_t start, std::int64_t step, std::int64_t length,
                                std::optional<std::int64_t> modulus)
{
    require(length >= 1, "progression length must be >= 1");
    APDescriptor ap;
    ap.length = length;
    ap.modulus = modulus;
    if (modulus) {
        const auto n = *modulus;
        require(n >= 1, "progression modulus must be >= 1");
        ap.start = floor_mod(start, n);
        ap.step = floor_mod(step, n);
        if (length > 1) {
            require(ap.step != 0, "progression step must be nonzero mod n");
            const auto order = n / std::gcd(ap.step, n);
            require(length <= order, "progression wraps onto itself");
        }
    } else {
        ap.start = start;
        ap.step = step;
        require(length == 1 || step != 0, "progression step must be nonzero");
    }
    return ap;
}

std::vector<std::int64_t> APDescriptor::elements() const
{
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(length));
    if (modulus) {
        auto x = start;
        for (std::int64_t i = 0; i < length; ++i) {
            out.push_back(x);
            x = floor_mod(x + step, *modulus);
        }
    } else {
        for (std::int64_t i = 0; i < length; ++i) out.push_back(start + i * step);
    }
    return out;
}

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// ------------------------------------------------------------------ Pollard

BoundCheck pollard_check(const CycSet& a, const CycSet& b, std::int64_t t)
{
    require(a.modulus() == b.modulus(), "pollard: modulus mismatch");
    const auto p = a.modulus();
    require(is_prime(p), "pollard: modulus must be prime");
    const auto na = static_cast<std::int64_t>(a.size());
    const auto nb = static_cast<std::int64_t>(b.size());
    const auto lo = std::max<std::int64_t>(0, na + nb - p);
    const auto hi = std::min(na, nb);
    require(t >= lo && t <= hi, "pollard: t outside [max(0,|A|+|B|-p), min(|A|,|B|)]");

    // t = 0 makes both sides zero; truncated_sum itself wants t >= 1.
    const std::int64_t lhs = t == 0 ? 0 : truncated_sum(a, b, t);
    nlohmann::json w = {{"p", p},
                        {"A", std::vector<std::int64_t>(a.begin(), a.end())},
                        {"B", std::vector<std::int64_t>(b.begin(), b.end())},
                        {"t", t}};
    return make_check("pollard", BoundCheck::Relation::AtLeast, Rational(lhs),
                      Rational(t * (na + nb - t)), std::nullopt, std::move(w));
}

// ------------------------------------------------------------------ Freiman

APDescriptor minimal_covering_progression(const IntSet& s)
{
    require(!s.empty(), "covering progression of an empty set");
    if (s.size() == 1) return APDescriptor::make(s.min(), 1, 1);
    std::int64_t g = 0;
    for (auto x : s) g = std::gcd(g, x - s.min());
    return APDescriptor::make(s.min(), g, (s.max() - s.min()) / g + 1);
}

FreimanReport freiman_3k3_check(const IntSet& s)
{
    require(s.size() >= 2, "freiman: need |S| >= 2");
    FreimanReport r;
    r.set_size = static_cast<std::int64_t>(s.size());
    r.sumset_size = static_cast<std::int64_t>(sumset(s, s).size());
    r.hypothesis_met = r.sumset_size < 3 * r.set_size - 3;
    if (!r.hypothesis_met) return r;

    r.cover = minimal_covering_progression(s);
    nlohmann::json w = {{"S", std::vector<std::int64_t>(s.begin(), s.end())},
                        {"sumset_size", r.sumset_size},
                        {"ap", {{"start", r.cover->start}, {"step", r.cover->step},
                                {"length", r.cover->length}}}};
    r.check = make_check("freiman_3k3", BoundCheck::Relation::AtLeast,
                         Rational(r.sumset_size - r.set_size + 1), Rational(r.cover->length),
                         std::nullopt, std::move(w));
    return r;
}

// ------------------------------------------------------------ intersections

APDescriptor normalize_step(const APDescriptor& ap)
{
    if (!ap.modulus || ap.length == 1) return ap;
    const auto p = *ap.modulus;
    if (2 * ap.step <= p) return ap;
    const auto last = floor_mod(ap.start + (ap.length - 1) * ap.step, p);
    return APDescriptor::make(last, p - ap.step, ap.length, p);
}

std::optional<APDescriptor> as_progression_with_step(const std::vector<std::int64_t>& elems,
                                                     std::int64_t d, std::int64_t p)
{
    if (elems.empty()) return std::nullopt;
    std::vector<std::int64_t> sorted(elems);
    for (auto& x : sorted) x = floor_mod(x, p);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const auto len = static_cast<std::int64_t>(sorted.size());
    d = floor_mod(d, p);
    if (len == 1) return APDescriptor::make(sorted[0], d == 0 ? 1 : d, 1, p);
    if (d == 0) return std::nullopt;

    auto has = [&](std::int64_t x) { return std::binary_search(sorted.begin(), sorted.end(), x); };
    const auto order = p / std::gcd(d, p);
    if (len > order) return std::nullopt;

    std::optional<std::int64_t> head;
    for (auto x : sorted)
        if (!has(floor_mod(x - d, p))) {
            head = x;
            break;
        }
    if (!head) {
        // Closed under -d: a single full cycle is still a progression.
        if (len != order) return std::nullopt;
        head = sorted[0];
    }
    auto x = *head;
    for (std::int64_t i = 0; i < len; ++i, x = floor_mod(x + d, p))
        if (!has(x)) return std::nullopt;
    return normalize_step(APDescriptor::make(*head, d, len, p));
}

ApIntersectResult ap_intersect(const APDescriptor& pp, const APDescriptor& qq)
{
    require(pp.modulus && qq.modulus, "ap_intersect: both progressions must live in Z/pZ");
    require(*pp.modulus == *qq.modulus, "ap_intersect: modulus mismatch");
    const auto p = *pp.modulus;
    require(is_prime(p), "ap_intersect: modulus must be prime");

    auto pe = pp.elements();
    std::sort(pe.begin(), pe.end());
    ApIntersectResult r;
    for (auto x : qq.elements())
        if (std::binary_search(pe.begin(), pe.end(), x)) r.intersection.push_back(x);
    std::sort(r.intersection.begin(), r.intersection.end());

    const auto inter = static_cast<std::int64_t>(r.intersection.size());
    if (4 * pp.length > p) {
        r.reason = "|P| > p/4";
        return r;
    }
    if (2 * inter < qq.length + 2) {
        r.reason = "|P∩Q| < |Q|/2 + 1";
        return r;
    }
    r.hypothesis_met = true;
    r.progression = as_progression_with_step(r.intersection, qq.step, p);
    ensure(r.progression.has_value(),
           "ap_intersect: intersection is not a progression with Q's common difference");
    return r;
}

} // namespace sumsetlab
