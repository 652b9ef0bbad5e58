#include "sumsetlab/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace sumsetlab {

namespace {

Rational clamped_delta(const Rational& delta)
{
    return delta < 0 ? Rational(0) : delta;
}

IntSet slice(const IntSet& s, std::size_t from, std::size_t to)
{
    auto e = s.elements();
    return IntSet(std::vector<std::int64_t>(e.begin() + static_cast<std::ptrdiff_t>(from),
                                            e.begin() + static_cast<std::ptrdiff_t>(to)));
}

// Element of `candidates` maximizing sum_{b in middle} table(x + b); the
// smallest one wins ties.
std::int64_t best_witness(const IntSet& candidates, const IntSet& middle, const ConvTable& table)
{
    std::int64_t best = candidates.min();
    std::int64_t best_score = -1;
    for (auto x : candidates) {
        std::int64_t score = 0;
        for (auto b : middle) score += table.at(x + b);
        if (score > best_score) {
            best_score = score;
            best = x;
        }
    }
    return best;
}

NotMet not_met(std::string stage, std::string reason)
{
    return NotMet{std::move(stage), std::move(reason)};
}

// Counts of residues of `set` modulo d, keyed by residue.
std::map<std::int64_t, std::int64_t> residue_counts(const CycSet& set, std::int64_t d)
{
    std::map<std::int64_t, std::int64_t> out;
    for (auto r : set) ++out[r % d];
    return out;
}

std::int64_t lookup(const std::map<std::int64_t, std::int64_t>& m, std::int64_t key)
{
    auto it = m.find(key);
    return it == m.end() ? 0 : it->second;
}

} // namespace

// --------------------------------------------------------------------- wrap

Rational WrapResult::sum_bound() const
{
    const Rational nt = Rational(report.n) * report.t;
    return (1 + 2 * clamped_delta(report.delta)) * nt + 6 * report.t * report.t;
}

bool WrapResult::size_ok() const
{
    return static_cast<std::int64_t>(wrapped.size()) >= report.n - 2 * report.t;
}

bool WrapResult::sum_ok() const
{
    return Rational(truncated) <= sum_bound();
}

WrapResult wrap(const IntSet& s, std::int64_t t)
{
    require(!s.empty(), "wrap: empty set");
    require(t >= 1, "wrap: t must be >= 1");
    return wrap(s, doubling_report(s, t));
}

WrapResult wrap(const IntSet& s, const DoublingReport& report)
{
    const auto n_elems = static_cast<std::int64_t>(s.size());
    const auto t = report.t;
    require(report.n == n_elems, "wrap: report does not belong to this set");
    require(n_elems > 2 * t, "wrap: need |S| > 2t");

    const auto tt = static_cast<std::size_t>(t);
    const IntSet left = slice(s, 0, tt);
    const IntSet middle = slice(s, tt, s.size() - tt);
    const IntSet right = slice(s, s.size() - tt, s.size());

    const auto a = best_witness(left, middle, convolution(left, middle));
    const auto c = best_witness(right, middle, convolution(middle, right));
    ensure(c > a, "wrap: right witness must exceed left witness");

    WrapResult w;
    w.report = report;
    w.witness_a = a;
    w.witness_c = c;
    w.x = a;
    w.n = c - a;
    std::vector<std::int64_t> residues;
    for (auto v : s)
        if (v >= a && v < c) residues.push_back(v);
    w.wrapped = CycSet(w.n, std::move(residues));
    w.truncated = truncated_sum(w.wrapped, w.wrapped, t);
    return w;
}

// ----------------------------------------------------------- find_subgroup

Outcome<SubgroupResult> find_subgroup(const CycSet& a, const CycSet& b, const Rational& t,
                                      const Rational& eta)
{
    require(a.modulus() == b.modulus(), "find_subgroup: modulus mismatch");
    require(a.size() == b.size() && !a.empty(), "find_subgroup: need |A| = |B| > 0");
    require(t > 0 && eta > 0, "find_subgroup: t and eta must be positive");
    const auto n = a.modulus();
    const auto size = static_cast<std::int64_t>(a.size());
    const Rational big_n(size);

    if (eta + t / big_n > Rational(1, 2)) return not_met("precondition", "eta + t/N > 1/2");

    const auto sum_ab = convolution(a, b);
    if (truncated_sum(sum_ab, t) > (1 + eta) * big_n * t)
        return not_met("hypothesis", "sum min(1_A*1_B, t) > (1+eta) N t");

    // Integer thresholds for integer-valued counts.
    const auto two_t = clamp_to_i64(ceil_of(2 * t));
    const auto large = clamp_to_i64(ceil_of((1 - eta) * big_n));

    const auto auto_a = autocorrelation(a);
    const auto auto_b = autocorrelation(b);
    std::vector<std::int64_t> h;
    for (const auto& [x, cnt] : auto_a.entries)
        if (cnt >= two_t) h.push_back(x);
    std::vector<std::int64_t> h_b;
    for (const auto& [x, cnt] : auto_b.entries)
        if (cnt >= two_t) h_b.push_back(x);
    if (h != h_b)
        return not_met("boundary", "A and B autocorrelations disagree on the threshold set");
    for (auto x : h)
        if (auto_a.at(x) < large || auto_b.at(x) < large)
            return not_met("boundary", "autocorrelation in [2t, (1-eta)N) on the threshold set");

    // h is sorted and contains 0 (the autocorrelation at 0 is N >= 2t).
    ensure(!h.empty() && h.front() == 0, "find_subgroup: threshold set misses 0");
    const std::int64_t gen = h.size() > 1 ? h[1] : n;
    const std::int64_t d = std::gcd(gen, n);
    bool closed = static_cast<std::int64_t>(h.size()) == n / d;
    for (std::size_t i = 0; closed && i < h.size(); ++i)
        closed = h[i] == static_cast<std::int64_t>(i) * d;
    if (!closed) return not_met("closure", "threshold set is not a subgroup");

    if (Rational(static_cast<std::int64_t>(h.size())) > (1 + eta) * big_n)
        return not_met("size", "|H| > (1+eta) N");

    SubgroupResult r;
    r.modulus = n;
    r.step = d;
    r.subgroup = CycSet(n, std::vector<std::int64_t>(h));
    r.t = t;
    r.eta = eta;

    std::int64_t best = -1;
    for (const auto& [x, cnt] : sum_ab.entries)
        if (cnt > best) {
            best = cnt;
            r.x0 = x;
        }
    for (const auto& [x, cnt] : sum_ab.entries)
        if (x % d == r.x0 % d) r.coset_pairs += cnt;

    // |(A + b) ∩ C| depends only on (x0 - b) mod d; likewise for B + a.
    const auto count_a = residue_counts(a, d);
    const auto count_b = residue_counts(b, d);
    std::int64_t best_b = -1;
    for (auto y : b) {
        const auto v = lookup(count_a, floor_mod(r.x0 - y, d));
        if (v > best_b) {
            best_b = v;
            r.witness_b = y;
        }
    }
    std::int64_t best_a = -1;
    for (auto y : a) {
        const auto v = lookup(count_b, floor_mod(r.x0 - y, d));
        if (v > best_a) {
            best_a = v;
            r.witness_a = y;
        }
    }
    r.coset_a = floor_mod(r.x0 - r.witness_b, d);
    r.coset_b = floor_mod(r.x0 - r.witness_a, d);
    r.outside_a = size - lookup(count_a, r.coset_a);
    r.outside_b = size - lookup(count_b, r.coset_b);
    if (Rational(r.outside_a + r.outside_b) > t)
        return not_met("outside", "|A \\ C_A| + |B \\ C_B| > t");
    return r;
}

// ----------------------------------------------------- recover_progression

namespace {

// Grows the progression over exceptional points of its residue class while
// the length stays within `budget`, maximizing the number absorbed (then
// minimizing length, then preferring fewer left extensions).
APDescriptor absorb(const APDescriptor& core, const std::vector<std::int64_t>& exceptional,
                    std::int64_t budget)
{
    const auto d = core.step;
    const auto lo = core.start;
    const auto hi = core.start + (core.length - 1) * d;
    std::vector<std::int64_t> left;  // descending
    std::vector<std::int64_t> right; // ascending
    for (auto e : exceptional) {
        if (floor_mod(e - lo, d) != 0) continue;
        if (e < lo) left.push_back(e);
        if (e > hi) right.push_back(e);
    }
    std::sort(left.rbegin(), left.rend());
    std::sort(right.begin(), right.end());

    std::size_t best_i = 0, best_j = 0;
    std::int64_t best_len = core.length;
    for (std::size_t i = 0; i <= left.size(); ++i) {
        const auto new_lo = i == 0 ? lo : left[i - 1];
        if ((hi - new_lo) / d + 1 > budget) break;
        std::size_t j = 0;
        while (j < right.size() && (right[j] - new_lo) / d + 1 <= budget) ++j;
        const auto new_hi = j == 0 ? hi : right[j - 1];
        const auto len = (new_hi - new_lo) / d + 1;
        if (i + j > best_i + best_j || (i + j == best_i + best_j && len < best_len)) {
            best_i = i;
            best_j = j;
            best_len = len;
        }
    }
    const auto new_lo = best_i == 0 ? lo : left[best_i - 1];
    return APDescriptor::make(new_lo, d, best_len);
}

} // namespace

Outcome<ProgressionCover> recover_progression(const IntSet& s, std::int64_t t)
{
    require(!s.empty(), "recover_progression: empty set");
    require(t >= 1, "recover_progression: t must be >= 1");
    const auto big_n = static_cast<std::int64_t>(s.size());
    const auto report = doubling_report(s, t);
    const Rational delta = clamped_delta(report.delta);
    if (delta + Rational(5 * t, big_n) > Rational(1, 4))
        return not_met("hypothesis", "delta + 5t/N > 1/4");

    const auto w = wrap(s, report);
    ensure(w.size_ok(), "wrap: |S'| < N - 2t");
    ensure(w.sum_ok(), "wrap: folded truncated sum above (1+2 delta) N t + 6 t^2");

    const auto m = static_cast<std::int64_t>(w.wrapped.size());
    const Rational length_bound = (1 + 2 * delta) * big_n + 6 * t;
    const Rational eta = (length_bound - m) / m;
    ensure(3 * m >= (2 + 4 * delta) * big_n + 14 * t, "recover: 3|S'| < (2+4 delta) N + 14 t");

    auto sub = find_subgroup(w.wrapped, w.wrapped, Rational(t), eta);
    if (!met(sub)) {
        auto nm = std::get<NotMet>(sub);
        nm.stage = "subgroup/" + nm.stage;
        return nm;
    }
    const auto& g = std::get<SubgroupResult>(sub);
    const auto d = g.step;

    // Preimage of the coset inside the window [x, x + n).
    const auto start = w.x + floor_mod(g.coset_a - w.x, d);
    const APDescriptor unwrapped = APDescriptor::make(start, d, w.n / d);

    std::vector<std::int64_t> inside, outside;
    const auto end = w.x + w.n;
    for (auto v : s) {
        if (v >= w.x && v < end && floor_mod(v - unwrapped.start, d) == 0)
            inside.push_back(v);
        else
            outside.push_back(v);
    }
    ensure(!inside.empty(), "recover: nothing left on the recovered coset");

    // Tighten to the hull of the covered points, then absorb exceptional
    // points of the same class while the length bound allows.
    const APDescriptor hull =
        APDescriptor::make(inside.front(), d, (inside.back() - inside.front()) / d + 1);
    const auto budget = clamp_to_i64(floor_of(length_bound));
    const APDescriptor p = absorb(hull, outside, budget);

    std::vector<std::int64_t> covered, exceptional;
    const auto p_last = p.start + (p.length - 1) * d;
    for (auto v : s) {
        if (v >= p.start && v <= p_last && floor_mod(v - p.start, d) == 0)
            covered.push_back(v);
        else
            exceptional.push_back(v);
    }

    ProgressionCover cover;
    cover.progression = p;
    cover.covered = IntSet(std::move(covered));
    cover.exceptional = IntSet(std::move(exceptional));
    cover.delta = report.delta;
    cover.t = t;
    cover.length_bound = length_bound;
    cover.exceptional_bound = Rational(5 * t, 2);
    cover.wrap_modulus = w.n;
    cover.wrap_start = w.x;
    cover.subgroup_step = d;
    cover.eta = eta;
    cover.folded_outside = g.outside_a;
    cover.folded_outside_ok = 2 * g.outside_a <= t;

    ensure(Rational(p.length) <= length_bound, "recover: progression longer than bound");
    ensure(2 * static_cast<std::int64_t>(cover.exceptional.size()) <= 5 * t,
           "recover: more than 5t/2 exceptional points");
    return cover;
}

} // namespace sumsetlab
