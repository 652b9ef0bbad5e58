#pragma once

// Missing elements of A+A for a random A ⊆ N = {1, 2, 3, ...}, each element
// included independently with probability 1/2.
//
// Convention: N starts at 1, so 1 is never a sum and |N \ (A+A)| >= 1 always.
// Under this convention the map A -> A+1 adds exactly two missing elements,
// which is what makes p_k - p_{k-2} = 2^{k/2} P(miss >= k and 1 ∈ A) exact.
//
// Only A ∩ [1, M] is ever sampled. Whether m ∈ A+A for m <= M+1 is fully
// decided by that prefix, so "misses" below always means misses in [1, M+1];
// the probability that some m > M+1 is missed is at most tail_bound(M+1).

#include "sumsetlab/common.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumsetlab {

inline constexpr int kMaxExactBudget = 28;

/// SplitMix64 stream keyed by (seed, stream index). Each Monte Carlo sample
/// owns one stream, so results do not depend on how samples are scheduled.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : state_(mix(seed ^ mix(stream + kGolden))) {}

    std::uint64_t next()
    {
        state_ += kGolden;
        return mix(state_);
    }

    static constexpr std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t state_;
};

enum class Condition { None, ContainsOne, NotContainsOne };
enum class Method { ExactBracket, MonteCarlo };

std::string to_string(Condition c);
std::string to_string(Method m);
Condition parse_condition(const std::string& s);

/// sum_{m > M} (3/4)^{(m-1)/2}, in closed form.
double tail_bound(std::int64_t m);

struct MissProfile {
    std::vector<bool> sampled;           // sampled[i] <=> (i+1) ∈ A, i < M
    std::vector<std::int64_t> missing;   // m in [1, M+1] with m ∉ A+A
    bool contains_one = false;
};

/// Direct construction from membership bits of {1..M}.
MissProfile miss_profile(const std::vector<bool>& membership);

/// Number of misses in [1, M+1] for membership bits packed little-endian
/// (bit i of the words <=> i ∈ A; bit 0 unused).
int count_misses(const std::vector<std::uint64_t>& words, int m_max);

/// counts[c][j]: number of sets with (1 ∈ A) == c and exactly j misses.
struct MissHistogram {
    int m = 0;
    std::uint64_t total = 0;
    std::array<std::vector<std::uint64_t>, 2> counts;

    std::uint64_t at_least(int k, Condition cond = Condition::None) const;
};

/// Exhaustive over all 2^M subsets of {1..M}; M <= kMaxExactBudget.
MissHistogram enumerate_misses(int m);

/// `samples` independent draws of A ∩ [1, M].
MissHistogram sample_misses(int m, std::uint64_t samples, std::uint64_t seed);

struct ProbEstimate {
    int k = 0;
    Method method = Method::ExactBracket;
    Condition condition = Condition::None;
    double lower = 0, upper = 0, point = 0;
    double std_error = 0; // Monte Carlo only
    int m = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// P(miss >= k [and condition]) from a histogram. `offset` is added to k
/// before thresholding (offset 1 = the forced miss of 1 is not counted).
ProbEstimate estimate(const MissHistogram& h, int k, Condition cond, Method method,
                      int offset = 0, std::uint64_t seed = 0);

std::vector<ProbEstimate> exact_miss_distribution(int m, int kmax,
                                                  Condition cond = Condition::None);

/// Default truncation max(10k, 200).
ProbEstimate mc_estimate(int k, std::uint64_t samples, std::optional<int> m, std::uint64_t seed,
                         Condition cond = Condition::None);

struct PkRow {
    int k = 0;
    ProbEstimate estimate;
    double pk = 0;
    double pk_sigma = 0;
};

struct PkOptions {
    int kmax = 12;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    int exact_budget = 20;  // rows with 10k <= budget are enumerated exactly
    bool count_forced_miss = true;
};

struct PkTable {
    std::vector<PkRow> rows;
    std::vector<std::pair<int, double>> parity_even;
    std::vector<std::pair<int, double>> parity_odd;
    std::vector<int> violations; // k with p_k clearly below p_{k-2}
    bool count_forced_miss = true;
};

PkTable pk_table(const PkOptions& opts);

/// P(miss >= k and 1 ∉ A) against P(miss >= k-2)/2.
struct ShiftIdentity {
    int k = 0;
    double joint = 0;      // P(miss >= k and 1 ∉ A)
    double half_prev = 0;  // P(miss >= k-2) / 2
    double tolerance = 0;  // bracket width (exact) or 3 sigma (Monte Carlo)
    bool holds = false;
};

ShiftIdentity shift_identity_exact(const MissHistogram& h, int k);
ShiftIdentity shift_identity_mc(const MissHistogram& h, int k);

/// Finite-truncation form, exact in integers: #{miss_M >= k, 1 ∉ A} at
/// truncation M equals 2 * #{miss_{M-2} >= k-2} at truncation M-2.
bool shift_identity_counts(const MissHistogram& at_m, const MissHistogram& at_m_minus_2, int k);

/// 2^{k/2} P(miss >= k and 1 ∈ A) with its standard error.
std::pair<double, double> increment_estimate(const MissHistogram& h, int k);

} // namespace sumsetlab
