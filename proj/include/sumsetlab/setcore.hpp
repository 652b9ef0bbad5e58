#pragma once

#include "sumsetlab/common.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace sumsetlab {

// Largest element magnitude accepted by IntSet. Pairwise sums stay well
// inside int64_t.
inline constexpr std::int64_t kMaxMagnitude = std::int64_t{1} << 61;

/// Finite set of integers, stored strictly increasing.
class IntSet {
public:
    IntSet() = default;
    /// Sorts and removes duplicates; throws Error on elements beyond kMaxMagnitude.
    explicit IntSet(std::vector<std::int64_t> elements);
    IntSet(std::initializer_list<std::int64_t> elements);

    static IntSet interval(std::int64_t lo, std::int64_t hi); // [lo, hi]
    static IntSet progression(std::int64_t start, std::int64_t step, std::int64_t length);

    std::span<const std::int64_t> elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    std::int64_t min() const { return elems_.front(); }
    std::int64_t max() const { return elems_.back(); }
    bool contains(std::int64_t x) const;

    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    friend bool operator==(const IntSet&, const IntSet&) = default;

private:
    std::vector<std::int64_t> elems_;
};

/// Subset of Z/nZ; residues stored strictly increasing in [0, n).
class CycSet {
public:
    CycSet() = default;
    /// Reduces every input modulo n, then sorts and deduplicates.
    CycSet(std::int64_t modulus, std::vector<std::int64_t> residues);
    CycSet(std::int64_t modulus, std::initializer_list<std::int64_t> residues);

    static CycSet full(std::int64_t modulus);

    std::int64_t modulus() const { return modulus_; }
    std::span<const std::int64_t> residues() const { return res_; }
    std::size_t size() const { return res_.size(); }
    bool empty() const { return res_.empty(); }
    bool contains(std::int64_t r) const;

    auto begin() const { return res_.begin(); }
    auto end() const { return res_.end(); }

    CycSet negated() const;
    CycSet translated(std::int64_t shift) const;

    friend bool operator==(const CycSet&, const CycSet&) = default;

private:
    std::int64_t modulus_ = 1;
    std::vector<std::int64_t> res_;
};

inline std::int64_t floor_mod(std::int64_t x, std::int64_t n)
{
    std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

/// Representation counts of a convolution of two indicator functions.
/// Only points with a nonzero count are stored, sorted by point.
struct ConvTable {
    enum class Domain { Integers, Cyclic };

    Domain domain = Domain::Integers;
    std::int64_t lo = 0;      // integers: smallest possible sum
    std::int64_t hi = -1;     // integers: largest possible sum
    std::int64_t modulus = 0; // cyclic only
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;

    std::int64_t at(std::int64_t x) const;
    std::int64_t total() const;
    std::int64_t max_count() const;
    std::size_t support_size() const { return entries.size(); }
};

struct ConvOptions {
    // Output spans (or moduli) up to this many cells use a dense counting
    // array; larger ones fall back to sorting the pairwise sums.
    std::size_t dense_threshold = std::size_t{1} << 20;
};

/// Throws Error when a sum falls outside the IntSet range.
IntSet sumset(const IntSet& a, const IntSet& b);
CycSet sumset(const CycSet& a, const CycSet& b);

ConvTable convolution(const IntSet& a, const IntSet& b, const ConvOptions& opts = {});
ConvTable convolution(const CycSet& a, const CycSet& b, const ConvOptions& opts = {});

/// 1_A * 1_{-A}(x) = |A ∩ (A + x)| on Z/nZ.
ConvTable autocorrelation(const CycSet& a, const ConvOptions& opts = {});

/// Sum over x of min(table(x), t).
std::int64_t truncated_sum(const ConvTable& table, std::int64_t t);
Rational truncated_sum(const ConvTable& table, const Rational& t);

std::int64_t truncated_sum(const IntSet& a, const IntSet& b, std::int64_t t);
std::int64_t truncated_sum(const CycSet& a, const CycSet& b, std::int64_t t);

/// N, t, T = sum_x min(1_S*1_S(x), t) and delta = T/(N t) - 2.
struct DoublingReport {
    std::int64_t n = 0;
    std::int64_t t = 0;
    std::int64_t truncated = 0;
    Rational delta;

    double delta_value() const { return to_double(delta); }
};

DoublingReport doubling_report(const IntSet& s, std::int64_t t);
DoublingReport doubling_report(const ConvTable& self_conv, std::int64_t n, std::int64_t t);

/// True for sets of size <= 2 and for sets with a constant gap.
bool is_arithmetic_progression(const IntSet& s);

} // namespace sumsetlab
