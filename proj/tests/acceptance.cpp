// Acceptance run: one PASS/FAIL line per criterion.
//
// Three criteria are false as literally stated (equality at t = |S|-1,
// the tail inequality at k = 1, 2, and the decay of the increments). Those
// print FAIL with the counterexample, and the corrected statement is checked
// alongside. The exit status is nonzero only when something fails that is
// not one of these known statement defects.

#include "sumsetlab/io.hpp"
#include "sumsetlab/parallel.hpp"
#include "sumsetlab/randomsum.hpp"
#include "sumsetlab/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace sumsetlab;

namespace {

constexpr std::uint64_t kSamples = 1'000'000;
constexpr std::uint64_t kSeed = 0;
constexpr int kKmax = 12;
const std::set<int> kKnownDefects = {2, 7, 10};

int passed = 0, failed = 0, unexpected = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail, bool corrected_ok = true)
{
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << ": " << detail << '\n';
    if (ok) {
        ++passed;
        return;
    }
    ++failed;
    if (!kKnownDefects.count(id) || !corrected_ok) ++unexpected;
}

std::string fixed(double v, int digits = 3)
{
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << v;
    return s.str();
}

std::string counts(const SuiteReport& r)
{
    return std::to_string(r.instances) + " instances, " + std::to_string(r.qualifying) + " qualifying, " +
           std::to_string(r.violations) + " violations, " + fixed(r.seconds, 2) + "s";
}

} // namespace

int main()
{
    std::cout << "acceptance: threads " << thread_limit() << ", samples " << kSamples << ", seed " << kSeed
              << '\n';

    {
        const auto r = verify_pollard_exhaustive(11);
        report(1, "Pollard bound, exhaustive for p <= 11", r.ok() && r.seconds < 300, counts(r));
    }

    {
        const auto r = verify_equality(12);
        const auto literal = r.details["non_ap_equalities_at_t_eq_N_minus_1"].get<std::int64_t>();
        std::string detail = std::to_string(literal + r.violations) + " misclassifications over S in [0,12), " +
                             "1 <= t < |S|";
        if (literal > 0) {
            const auto& ex = r.details["examples_at_t_eq_N_minus_1"][0];
            detail += "; all at t = |S|-1, where equality means S is symmetric (e.g. S = " + ex["S"].dump() +
                      ", t = " + ex["t"].dump() + "); for t <= |S|-2 and the symmetric form at t = |S|-1: " +
                      std::to_string(r.violations) + " violations";
        }
        report(2, "equality iff AP", literal + r.violations == 0, detail, r.ok());
    }

    {
        const auto ex = verify_wrap_exhaustive(12);
        const auto rnd = verify_wrap_random(1000, kSeed);
        report(3, "wrap contract", ex.ok() && rnd.ok(),
               "exhaustive S in [0,12]: " + counts(ex) + "; random |S| <= 400: " + counts(rnd));
    }

    {
        const auto rnd = verify_recover(1000, kSeed);
        const auto worked = verify_worked_example();
        report(4, "progression recovery contract", rnd.ok() && worked.ok() && rnd.qualifying == 1000,
               "random: " + counts(rnd) + "; S = {0..998} u {10^6}, t = 10: exceptional set " +
                   (worked.ok() ? "exactly {10^6}" : "wrong"));
    }

    {
        const auto r = verify_ap_intersect(61);
        report(5, "AP intersection mod p <= 61", r.ok(), counts(r));
    }

    {
        const auto r = verify_entropy(500);
        report(6, "entropy bounds on binomials, n <= 500", r.ok() && r.seconds < 60, counts(r));
    }

    {
        int bad = 0;
        std::string first;
        for (int k = 1; k <= 40; ++k) {
            const double lhs = tail_bound(10 * k), rhs = std::ldexp(1.0, -k);
            if (lhs < rhs) continue;
            ++bad;
            first += (first.empty() ? "" : ", ") + ("k=" + std::to_string(k) + ": " + fixed(lhs) + " >= " +
                                                    fixed(rhs));
        }
        const auto corrected = verify_tail(40);
        std::string detail = std::to_string(bad) + " of 40 values of k fail";
        if (bad) detail += " (" + first + "); for 3 <= k <= 40: " + std::to_string(corrected.violations) + " fail";
        report(7, "tail(10k) < 2^-k for 1 <= k <= 40", bad == 0, detail, corrected.ok());
    }

    const auto mc = sample_misses(std::max(10 * kKmax, 200), kSamples, kSeed);

    {
        PkOptions o;
        o.kmax = kKmax;
        o.samples = kSamples;
        o.seed = kSeed;
        const auto r = verify_parity(o);
        // Exact clause: k whose bracket at the largest enumerable M is
        // narrower than half of |p_k - p_{k-2}|.
        const auto h = enumerate_misses(o.exact_budget);
        const double width = tail_bound(h.m + 1);
        int applicable = 0, exact_bad = 0;
        for (int k = 2; k <= kKmax; ++k) {
            const double n = static_cast<double>(h.total);
            const double pk = std::pow(2.0, k / 2.0) * static_cast<double>(h.at_least(k)) / n;
            const double prev = std::pow(2.0, (k - 2) / 2.0) * static_cast<double>(h.at_least(k - 2)) / n;
            if (std::pow(2.0, k / 2.0) * width >= std::abs(pk - prev) / 2) continue;
            ++applicable;
            exact_bad += pk < prev ? 1 : 0;
        }
        report(8, "p_k >= p_{k-2} - 3 sigma for 4 <= k <= 12", r.ok() && exact_bad == 0,
               std::to_string(r.violations) + " Monte Carlo violations; exact brackets at M = " +
                   std::to_string(h.m) + " apply to " + std::to_string(applicable) + " values of k (width " +
                   fixed(width) + " times 2^{k/2}), " + std::to_string(exact_bad) + " violations");
    }

    {
        const auto ex = verify_shift_exact(20, 5);
        const auto sampled = verify_shift_mc(mc, kKmax);
        report(9, "shift identity", ex.ok() && sampled.ok(),
               "exact M = 20, k <= 5: " + counts(ex) + "; Monte Carlo k <= 12: " + counts(sampled));
    }

    {
        const auto r = verify_scaling(mc, 6, kKmax);
        const auto& rises = r.details["increment_rises_beyond_3_sigma"];
        std::string detail = "max ratio between neighbouring parity terms " +
                             fixed(r.details["parity_ratio_max"].get<double>()) + " (limit " +
                             fixed(r.details["band_limit"].get<double>()) + "); increments 2^{k/2} P(miss >= k, 1 in A):";
        for (const auto& row : r.details["rows"]) detail += " " + fixed(row["increment"].get<double>());
        detail += "; " + std::to_string(rises.size()) + " rises beyond 3 sigma";
        for (const auto& x : rises)
            detail += " (k=" + x["k"].dump() + ", z=" + fixed(x["z"].get<double>(), 1) + ")";
        report(10, "p_k band and increment decay for 6 <= k <= 12", r.ok() && rises.empty(), detail, r.ok());
    }

    std::cout << "acceptance: " << passed << " passed, " << failed << " failed (" << failed - unexpected
              << " known statement defects, " << unexpected << " unexpected)\n";
    return unexpected == 0 ? 0 : 1;
}
