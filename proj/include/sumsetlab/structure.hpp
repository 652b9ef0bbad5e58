#pragma once

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/common.hpp"
#include "sumsetlab/setcore.hpp"

#include <cstdint>
#include <string>

namespace sumsetlab {

/// Result of folding S onto Z/nZ through the window [x, x + n).
struct WrapResult {
    std::int64_t n = 0;        // modulus c - a
    std::int64_t x = 0;        // window start, equal to the chosen a
    CycSet wrapped;            // (S ∩ [x, x+n)) mod n
    std::int64_t truncated = 0; // sum_y min(1_{S'}*1_{S'}(y), t) on Z/nZ
    std::int64_t witness_a = 0;
    std::int64_t witness_c = 0;
    DoublingReport report;     // hypothesis data for S itself

    /// (1 + 2 max(delta, 0)) N t + 6 t^2
    Rational sum_bound() const;
    bool size_ok() const;      // |S'| >= N - 2t
    bool sum_ok() const;       // truncated <= sum_bound()
};

/// Splits S into its t smallest, N-2t middle and t largest elements, picks
/// the left/right witnesses maximizing the pair-count score (smallest on
/// ties) and folds S modulo their difference. Requires N > 2t.
WrapResult wrap(const IntSet& s, std::int64_t t);
WrapResult wrap(const IntSet& s, const DoublingReport& report);

/// Subgroup H = dZ/nZ and cosets of H that contain all but a few points of
/// A and B.
struct SubgroupResult {
    std::int64_t modulus = 0;
    std::int64_t step = 0;      // d, with H = dZ/nZ
    CycSet subgroup;
    std::int64_t x0 = 0;        // argmax of 1_A*1_B, C = H + x0
    std::int64_t witness_a = 0;
    std::int64_t witness_b = 0;
    std::int64_t coset_a = 0;   // C_A = coset_a + H (residue mod d)
    std::int64_t coset_b = 0;
    std::int64_t outside_a = 0; // |A \ C_A|
    std::int64_t outside_b = 0; // |B \ C_B|
    std::int64_t coset_pairs = 0; // #{(a,b) : a + b ∈ C}
    Rational t;
    Rational eta;
};

/// Requires |A| = |B| = N > 0, t > 0, eta > 0 (throws Error otherwise).
/// Returns NotMet when eta + t/N > 1/2, when the truncated-sum inequality
/// fails, or when any derived structure (the threshold set, its closure,
/// its size, or the outside counts) disagrees with what that inequality
/// forces; NotMet::stage names which.
Outcome<SubgroupResult> find_subgroup(const CycSet& a, const CycSet& b, const Rational& t,
                                      const Rational& eta);

/// A progression in Z covering S up to a few exceptional points.
struct ProgressionCover {
    APDescriptor progression;
    IntSet covered;
    IntSet exceptional;
    Rational delta;            // as measured, may be negative
    std::int64_t t = 0;
    Rational length_bound;     // (1 + 2 max(delta,0)) N + 6t
    Rational exceptional_bound; // 5t/2

    std::int64_t wrap_modulus = 0;
    std::int64_t wrap_start = 0;
    std::int64_t subgroup_step = 0;
    Rational eta;
    std::int64_t folded_outside = 0; // points of S' off the coset (per set)
    bool folded_outside_ok = true;   // folded_outside <= t/2, logged only
};

/// Full pipeline: doubling report, wrap, subgroup/coset recovery on the
/// folded set, unwrap to an AP in Z. NotMet when delta + 5t/N > 1/4
/// (negative delta is clamped to 0) or when a stage rejects its input.
Outcome<ProgressionCover> recover_progression(const IntSet& s, std::int64_t t);

} // namespace sumsetlab
