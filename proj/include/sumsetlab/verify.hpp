#pragma once

// Property suites behind `verify`. Each suite enumerates or samples
// instances, checks one statement, and keeps the first few failures.

#include "sumsetlab/randomsum.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sumsetlab {

struct SuiteReport {
    std::string name;
    std::int64_t instances = 0;  // everything examined
    std::int64_t qualifying = 0; // instances where the hypothesis holds
    std::int64_t violations = 0;
    nlohmann::json samples = nlohmann::json::array(); // first failures, or notes
    nlohmann::json details = nlohmann::json::object();
    double seconds = 0;          // wall time, kept out of the JSON output

    bool ok() const { return violations == 0; }
};

struct VerifyOptions {
    int pollard_pmax = 11;
    std::int64_t pollard_random = 100'000;
    int pollard_random_pmax = 31;
    int equality_n = 12;            // S ⊆ [0, n)
    int freiman_nmax = 14;          // S ⊆ [0, nmax]
    int apintersect_pmax = 61;
    int wrap_n = 12;                // S ⊆ [0, n]
    std::int64_t wrap_random = 1000;
    std::int64_t recover_random = 1000;
    int entropy_nmax = 500;
    int tail_kmax = 40;
    int shift_exact_m = 20;
    int shift_exact_kmax = 5;
    int kmax = 12;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    int exact_budget = 20;
};

SuiteReport verify_pollard_exhaustive(int pmax);
SuiteReport verify_pollard_random(std::int64_t instances, int pmax, std::uint64_t seed);
SuiteReport verify_equality(int n);
SuiteReport verify_freiman(int nmax);
SuiteReport verify_ap_intersect(int pmax);
SuiteReport verify_wrap_exhaustive(int n);
SuiteReport verify_wrap_random(std::int64_t instances, std::uint64_t seed);
SuiteReport verify_recover(std::int64_t instances, std::uint64_t seed);
SuiteReport verify_worked_example();
SuiteReport verify_entropy(int nmax);
SuiteReport verify_tail(int kmax);
SuiteReport verify_shift_exact(int m, int kmax);
SuiteReport verify_shift_mc(const MissHistogram& h, int kmax);
SuiteReport verify_parity(const PkOptions& opts);

/// p_k against p_{k-1} on [kmin, kmax] must stay within a ratio of
/// sqrt(2) * 1.1. The spread over the window and the increments
/// 2^{k/2} P(miss >= k and 1 ∈ A) are reported in details.
SuiteReport verify_scaling(const MissHistogram& h, int kmin, int kmax);

std::vector<SuiteReport> verify_all(const VerifyOptions& opts);

nlohmann::json to_json(const SuiteReport& r);

/// One instance of the randomized progression-plus-outliers family used by
/// verify_recover: returns the set and a t meeting delta + 5t/N <= 1/4.
struct RecoverInstance {
    std::vector<std::int64_t> elements;
    std::int64_t t = 0;
    std::int64_t length = 0;
    std::int64_t step = 0;
    int outliers = 0;
};
RecoverInstance recover_instance(std::uint64_t seed, std::uint64_t index);

} // namespace sumsetlab
