#pragma once

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/common.hpp"

#include <cstdint>
#include <vector>

namespace sumsetlab {

/// H(t) = t log2(1/t) + (1-t) log2(1/(1-t)), with H(0) = H(1) = 0.
/// Throws Error for t outside [0, 1].
double binary_entropy(double t);

BigInt binomial(int n, int k);

/// 2^{nH(k/n)} / (n+1) <= C(n,k) <= 2^{nH(k/n)}, as a Within check on the
/// exact binomial. Entropy-side bounds are rounded outward.
BoundCheck binom_sandwich(int n, int k);

/// sum_{j <= floor(delta n)} C(n,j) <= 2^{nH(delta)} for delta in [0, 1/2].
BoundCheck binom_tail(int n, const Rational& delta);
BoundCheck binom_tail(int n, double delta);

struct EntropySweep {
    std::int64_t sandwich_checks = 0;
    std::int64_t tail_checks = 0;
    std::vector<BoundCheck> violations;
};

/// Both inequalities for all 0 <= n <= nmax, all k, and delta = j/grid.
EntropySweep entropy_sweep(int nmax, int grid = 100);

} // namespace sumsetlab
