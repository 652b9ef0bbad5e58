#include "sumsetlab/randomsum.hpp"
#include "sumsetlab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace sumsetlab {

std::string to_string(Condition c)
{
    switch (c) {
    case Condition::None: return "none";
    case Condition::ContainsOne: return "contains-one";
    case Condition::NotContainsOne: return "not-contains-one";
    }
    return "none";
}

std::string to_string(Method m)
{
    return m == Method::ExactBracket ? "exact-bracket" : "monte-carlo";
}

Condition parse_condition(const std::string& s)
{
    if (s == "none") return Condition::None;
    if (s == "contains-one") return Condition::ContainsOne;
    if (s == "not-contains-one") return Condition::NotContainsOne;
    throw Error("unknown condition: " + s);
}

double tail_bound(std::int64_t m)
{
    require(m >= 0, "tail_bound: M must be >= 0");
    const double r = std::sqrt(0.75);
    return std::pow(0.75, static_cast<double>(m) / 2.0) / (1.0 - r);
}

MissProfile miss_profile(const std::vector<bool>& membership)
{
    MissProfile p;
    p.sampled = membership;
    const auto m = static_cast<std::int64_t>(membership.size());
    auto in = [&](std::int64_t x) { return x >= 1 && x <= m && membership[static_cast<std::size_t>(x - 1)]; };
    p.contains_one = in(1);
    for (std::int64_t s = 1; s <= m + 1; ++s) {
        bool hit = false;
        for (std::int64_t u = 1; 2 * u <= s && !hit; ++u) hit = in(u) && in(s - u);
        if (!hit) p.missing.push_back(s);
    }
    return p;
}

int count_misses(const std::vector<std::uint64_t>& words, int m_max)
{
    auto bit = [&](int i) { return (words[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1U; };
    int misses = 0;
    for (int s = 1; s <= m_max + 1; ++s) {
        bool hit = false;
        for (int u = 1; 2 * u <= s; ++u)
            if (bit(u) & bit(s - u)) {
                hit = true;
                break;
            }
        misses += hit ? 0 : 1;
    }
    return misses;
}

std::uint64_t MissHistogram::at_least(int k, Condition cond) const
{
    std::uint64_t total_count = 0;
    const auto from = static_cast<std::size_t>(std::max(k, 0));
    for (int c = 0; c < 2; ++c) {
        if (cond == Condition::ContainsOne && c == 0) continue;
        if (cond == Condition::NotContainsOne && c == 1) continue;
        for (std::size_t j = from; j < counts[static_cast<std::size_t>(c)].size(); ++j)
            total_count += counts[static_cast<std::size_t>(c)][j];
    }
    return total_count;
}

namespace {

using Bins = std::array<std::vector<std::uint64_t>, 2>;

Bins empty_bins(int m)
{
    Bins b;
    b[0].assign(static_cast<std::size_t>(m) + 2, 0);
    b[1].assign(static_cast<std::size_t>(m) + 2, 0);
    return b;
}

void merge(Bins& into, const Bins& from)
{
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < into[c].size(); ++j) into[c][j] += from[c][j];
}

// Decides elements j..m in turn. Before j is decided, whether j ∈ A+A is
// already fixed by the elements below it.
void enumerate_from(int j, int m, std::uint64_t set, std::uint64_t sums, int misses, Bins& bins)
{
    if (j > m) {
        misses += static_cast<int>(~(sums >> (m + 1)) & 1U);
        ++bins[(set >> 1) & 1U][static_cast<std::size_t>(misses)];
        return;
    }
    misses += static_cast<int>(~(sums >> j) & 1U);
    enumerate_from(j + 1, m, set, sums, misses, bins);
    enumerate_from(j + 1, m, set | (std::uint64_t{1} << j),
                   sums | (set << j) | (std::uint64_t{1} << (2 * j)), misses, bins);
}

} // namespace

MissHistogram enumerate_misses(int m)
{
    require(m >= 0 && m <= kMaxExactBudget, "exact enumeration: M over budget");
    const int prefix = std::min(m, 12);
    const std::int64_t tasks = std::int64_t{1} << prefix;

    Bins total = empty_bins(m);
#pragma omp parallel num_threads(thread_limit())
    {
        Bins local = empty_bins(m);
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t mask = 0; mask < tasks; ++mask) {
            std::uint64_t set = 0, sums = 0;
            int misses = 0;
            for (int j = 1; j <= prefix; ++j) {
                misses += static_cast<int>(~(sums >> j) & 1U);
                if ((mask >> (j - 1)) & 1) {
                    sums |= (set << j) | (std::uint64_t{1} << (2 * j));
                    set |= std::uint64_t{1} << j;
                }
            }
            enumerate_from(prefix + 1, m, set, sums, misses, local);
        }
#pragma omp critical
        merge(total, local);
    }

    MissHistogram h;
    h.m = m;
    h.total = std::uint64_t{1} << m;
    h.counts = std::move(total);
    return h;
}

MissHistogram sample_misses(int m, std::uint64_t samples, std::uint64_t seed)
{
    require(m >= 1, "sampling needs M >= 1");
    require(samples >= 1, "sampling needs at least one sample");
    const auto words = static_cast<std::size_t>(m / 64 + 1);
    const int top_bits = (m + 1) % 64; // bits 0..m are meaningful
    const auto n = static_cast<std::int64_t>(samples);

    Bins total = empty_bins(m);
#pragma omp parallel num_threads(thread_limit())
    {
        Bins local = empty_bins(m);
        std::vector<std::uint64_t> bits(words);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            CounterRng rng(seed, static_cast<std::uint64_t>(i));
            for (auto& w : bits) w = rng.next();
            bits[0] &= ~std::uint64_t{1};
            if (top_bits != 0) bits.back() &= (std::uint64_t{1} << top_bits) - 1;
            const int misses = count_misses(bits, m);
            ++local[(bits[0] >> 1) & 1U][static_cast<std::size_t>(misses)];
        }
#pragma omp critical
        merge(total, local);
    }

    MissHistogram h;
    h.m = m;
    h.total = samples;
    h.counts = std::move(total);
    return h;
}

ProbEstimate estimate(const MissHistogram& h, int k, Condition cond, Method method, int offset,
                      std::uint64_t seed)
{
    ProbEstimate e;
    e.k = k;
    e.method = method;
    e.condition = cond;
    e.m = h.m;
    const auto hits = h.at_least(k + offset, cond);
    e.point = static_cast<double>(hits) / static_cast<double>(h.total);
    e.lower = e.point;
    e.upper = std::min(1.0, e.point + tail_bound(h.m + 1));
    if (method == Method::MonteCarlo) {
        e.samples = h.total;
        e.seed = seed;
        e.std_error = std::sqrt(e.point * (1.0 - e.point) / static_cast<double>(h.total));
    }
    return e;
}

std::vector<ProbEstimate> exact_miss_distribution(int m, int kmax, Condition cond)
{
    require(kmax >= 0, "kmax must be >= 0");
    const auto h = enumerate_misses(m);
    std::vector<ProbEstimate> out;
    for (int k = 0; k <= kmax; ++k) out.push_back(estimate(h, k, cond, Method::ExactBracket));
    return out;
}

ProbEstimate mc_estimate(int k, std::uint64_t samples, std::optional<int> m, std::uint64_t seed,
                         Condition cond)
{
    require(k >= 0, "k must be >= 0");
    const int trunc = m.value_or(std::max(10 * k, 200));
    require(trunc >= 10 * k, "Monte Carlo truncation must satisfy M >= 10k");
    const auto h = sample_misses(trunc, samples, seed);
    return estimate(h, k, cond, Method::MonteCarlo, 0, seed);
}

PkTable pk_table(const PkOptions& opts)
{
    require(opts.kmax >= 2, "pk table needs kmax >= 2");
    require(opts.exact_budget <= kMaxExactBudget, "exact budget above enumeration cap");
    const int offset = opts.count_forced_miss ? 0 : 1;
    auto exact_row = [&](int k) { return opts.exact_budget >= 0 && 10 * k <= opts.exact_budget; };

    std::optional<MissHistogram> exact;
    if (exact_row(0)) exact = enumerate_misses(opts.exact_budget);
    std::optional<MissHistogram> sampled;
    if (!exact_row(opts.kmax))
        sampled = sample_misses(std::max(10 * (opts.kmax + offset), 200), opts.samples, opts.seed);

    PkTable table;
    table.count_forced_miss = opts.count_forced_miss;
    for (int k = 0; k <= opts.kmax; ++k) {
        PkRow row;
        row.k = k;
        row.estimate = exact_row(k)
                           ? estimate(*exact, k, Condition::None, Method::ExactBracket, offset)
                           : estimate(*sampled, k, Condition::None, Method::MonteCarlo, offset, opts.seed);
        const double scale = std::pow(2.0, k / 2.0);
        row.pk = scale * row.estimate.point;
        row.pk_sigma = scale * row.estimate.std_error;
        (k % 2 == 0 ? table.parity_even : table.parity_odd).emplace_back(k, row.pk);
        table.rows.push_back(row);
    }

    for (int k = 2; k <= opts.kmax; ++k) {
        const auto& cur = table.rows[static_cast<std::size_t>(k)];
        const auto& prev = table.rows[static_cast<std::size_t>(k - 2)];
        bool violated;
        if (cur.estimate.method == Method::MonteCarlo && prev.estimate.method == Method::MonteCarlo) {
            const double sigma = std::hypot(cur.pk_sigma, prev.pk_sigma);
            violated = cur.pk < prev.pk - 3 * sigma;
        } else {
            // Compare the certain part of p_{k-2} with the most p_k can be.
            const double cur_hi = cur.estimate.method == Method::MonteCarlo
                                      ? cur.pk + 3 * cur.pk_sigma
                                      : std::pow(2.0, k / 2.0) * cur.estimate.upper;
            const double prev_lo = prev.estimate.method == Method::MonteCarlo
                                       ? prev.pk - 3 * prev.pk_sigma
                                       : std::pow(2.0, (k - 2) / 2.0) * prev.estimate.lower;
            violated = cur_hi < prev_lo;
        }
        if (violated) table.violations.push_back(k);
    }
    return table;
}

ShiftIdentity shift_identity_exact(const MissHistogram& h, int k)
{
    require(k >= 2, "shift identity needs k >= 2");
    const double n = static_cast<double>(h.total);
    ShiftIdentity s;
    s.k = k;
    s.joint = static_cast<double>(h.at_least(k, Condition::NotContainsOne)) / n;
    s.half_prev = 0.5 * static_cast<double>(h.at_least(k - 2)) / n;
    s.tolerance = tail_bound(h.m + 1);
    s.holds = std::abs(s.joint - s.half_prev) <= s.tolerance;
    return s;
}

ShiftIdentity shift_identity_mc(const MissHistogram& h, int k)
{
    require(k >= 2, "shift identity needs k >= 2");
    // Per-sample z = 1[miss >= k, 1 ∉ A] - 1[miss >= k-2]/2 has mean zero
    // when the identity holds.
    double sum = 0, sum_sq = 0;
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < h.counts[c].size(); ++j) {
            const double z = ((static_cast<int>(j) >= k && c == 0) ? 1.0 : 0.0) -
                             (static_cast<int>(j) >= k - 2 ? 0.5 : 0.0);
            const double w = static_cast<double>(h.counts[c][j]);
            sum += w * z;
            sum_sq += w * z * z;
        }
    const double n = static_cast<double>(h.total);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    ShiftIdentity s;
    s.k = k;
    s.joint = static_cast<double>(h.at_least(k, Condition::NotContainsOne)) / n;
    s.half_prev = 0.5 * static_cast<double>(h.at_least(k - 2)) / n;
    s.tolerance = 3.0 * std::sqrt(var / n);
    s.holds = std::abs(mean) <= s.tolerance;
    return s;
}

bool shift_identity_counts(const MissHistogram& at_m, const MissHistogram& at_m_minus_2, int k)
{
    require(k >= 2, "shift identity needs k >= 2");
    require(at_m.m == at_m_minus_2.m + 2, "shift identity: truncations must differ by 2");
    require(at_m.total == 4 * at_m_minus_2.total, "shift identity: needs exact enumerations");
    return at_m.at_least(k, Condition::NotContainsOne) == 2 * at_m_minus_2.at_least(k - 2);
}

std::pair<double, double> increment_estimate(const MissHistogram& h, int k)
{
    const double n = static_cast<double>(h.total);
    const double p = static_cast<double>(h.at_least(k, Condition::ContainsOne)) / n;
    const double scale = std::pow(2.0, k / 2.0);
    return {scale * p, scale * std::sqrt(p * (1.0 - p) / n)};
}

} // namespace sumsetlab
