#pragma once

#include "sumsetlab/common.hpp"
#include "sumsetlab/setcore.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumsetlab {

/// Uniform report for one evaluated inequality.
///
/// AtLeast: holds == (lhs >= rhs). AtMost: holds == (lhs <= rhs).
/// Within: holds == (rhs <= lhs <= rhs_upper).
struct BoundCheck {
    enum class Relation { AtLeast, AtMost, Within };

    std::string name;
    Relation relation = Relation::AtLeast;
    Rational lhs;
    Rational rhs;
    std::optional<Rational> rhs_upper;
    bool holds = false;
    nlohmann::json witness = nlohmann::json::object();

    bool evaluate() const;
};

BoundCheck make_check(std::string name, BoundCheck::Relation rel, Rational lhs, Rational rhs,
                      std::optional<Rational> rhs_upper = std::nullopt,
                      nlohmann::json witness = nlohmann::json::object());

/// Arithmetic progression {start + i*step : 0 <= i < length}, in Z or in Z/nZ.
struct APDescriptor {
    std::int64_t start = 0;
    std::int64_t step = 1;
    std::int64_t length = 1;
    std::optional<std::int64_t> modulus; // nullopt: the integers

    /// Validates the invariants (length >= 1, distinct elements in Z/nZ).
    static APDescriptor make(std::int64_t start, std::int64_t step, std::int64_t length,
                             std::optional<std::int64_t> modulus = std::nullopt);

    std::vector<std::int64_t> elements() const;
    friend bool operator==(const APDescriptor&, const APDescriptor&) = default;
};

/// Deterministic trial division.
bool is_prime(std::int64_t n);

/// Pollard in Z/pZ: sum_x min(1_A*1_B(x), t) >= t(|A|+|B|-t) for
/// max(0, |A|+|B|-p) <= t <= min(|A|,|B|). Throws Error on a composite
/// modulus or t outside that window.
BoundCheck pollard_check(const CycSet& a, const CycSet& b, std::int64_t t);

struct FreimanReport {
    std::int64_t set_size = 0;
    std::int64_t sumset_size = 0;
    bool hypothesis_met = false;       // |S+S| < 3|S| - 3
    std::optional<APDescriptor> cover; // minimal AP containing S (when met)
    std::optional<BoundCheck> check;   // length bound |S+S| - |S| + 1 >= |cover|
};

/// Smallest AP in Z containing s (step = gcd of gaps; size-1 sets get step 1).
APDescriptor minimal_covering_progression(const IntSet& s);

FreimanReport freiman_3k3_check(const IntSet& s);

/// Normalizes a progression in Z/pZ so that its step lies in (0, p/2],
/// reversing it when the step is negated.
APDescriptor normalize_step(const APDescriptor& ap);

/// If `elems` (residues mod p, any order) form an AP with step +-d, returns it.
std::optional<APDescriptor> as_progression_with_step(const std::vector<std::int64_t>& elems,
                                                     std::int64_t d, std::int64_t p);

struct ApIntersectResult {
    bool hypothesis_met = false;
    std::string reason;                     // why the hypothesis failed
    std::optional<APDescriptor> progression; // P ∩ Q, step equal to Q's up to sign
    std::vector<std::int64_t> intersection;  // P ∩ Q as a sorted residue list
};

/// Intersection of two progressions in Z/pZ. When |P| <= p/4 and
/// |P∩Q| >= |Q|/2 + 1 (real-valued reading) the intersection must be an AP
/// with Q's common difference; a failure there throws ContractViolation.
ApIntersectResult ap_intersect(const APDescriptor& p, const APDescriptor& q);

} // namespace sumsetlab
