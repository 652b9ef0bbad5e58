#include "sumsetlab/entropy.hpp"

#include <cfloat>
#include <charconv>
#include <cmath>
#include <numbers>

namespace sumsetlab {

double binary_entropy(double t)
{
    require(t >= 0.0 && t <= 1.0, "binary_entropy: t outside [0, 1]");
    if (t == 0.0 || t == 1.0) return 0.0;
    // Evaluate on the half closer to 0; 1 - t is exact for t >= 1/2.
    const double u = t <= 0.5 ? t : 1.0 - t;
    return (-u * std::log(u) - (1.0 - u) * std::log1p(-u)) / std::numbers::ln2;
}

BigInt binomial(int n, int k)
{
    require(n >= 0 && k >= 0 && k <= n, "binomial: need 0 <= k <= n");
    k = std::min(k, n - k);
    BigInt c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

namespace {

// Exponent slack covering the rounding in n * H(.), then one ulp outward on
// the power itself.
double exponent_margin(int n)
{
    return 16.0 * DBL_EPSILON * (n + 1);
}

double pow2_up(double e)
{
    return std::nextafter(std::exp2(e + std::abs(e) * DBL_EPSILON), HUGE_VAL);
}

double pow2_down(double e)
{
    return std::nextafter(std::exp2(e - std::abs(e) * DBL_EPSILON), 0.0);
}

BoundCheck sandwich_from(int n, int k, const BigInt& c)
{
    const double e = n == 0 ? 0.0 : n * binary_entropy(static_cast<double>(k) / n);
    const double m = exponent_margin(n);
    const Rational upper(pow2_up(e + m));
    const Rational lower = Rational(pow2_down(e - m)) / (n + 1);
    return make_check("binom_sandwich", BoundCheck::Relation::Within, Rational(c), lower, upper,
                      {{"n", n}, {"k", k}, {"exponent", e}});
}

BoundCheck tail_from(int n, const Rational& delta, const BigInt& partial)
{
    const double e = n * binary_entropy(to_double(delta));
    return make_check("binom_tail", BoundCheck::Relation::AtMost, Rational(partial),
                      Rational(pow2_up(e + exponent_margin(n))), std::nullopt,
                      {{"n", n}, {"delta", to_string(delta)}, {"exponent", e}});
}

int floor_index(int n, const Rational& delta)
{
    return static_cast<int>(clamp_to_i64(floor_of(delta * n)));
}

} // namespace

BoundCheck binom_sandwich(int n, int k)
{
    require(n >= 0 && k >= 0 && k <= n, "binom_sandwich: need 0 <= k <= n");
    return sandwich_from(n, k, binomial(n, k));
}

BoundCheck binom_tail(int n, const Rational& delta)
{
    require(n >= 0, "binom_tail: n must be >= 0");
    require(delta >= 0 && delta <= Rational(1, 2), "binom_tail: delta outside [0, 1/2]");
    BigInt partial = 0;
    const int top = floor_index(n, delta);
    for (int j = 0; j <= top; ++j) partial += binomial(n, j);
    return tail_from(n, delta, partial);
}

BoundCheck binom_tail(int n, double delta)
{
    require(std::isfinite(delta), "binom_tail: delta must be finite");
    // Shortest decimal that round-trips, so 0.3 means 3/10 rather than the
    // binary double just below it (which would move floor(delta n)).
    char buf[400];
    const auto res = std::to_chars(buf, buf + sizeof buf, delta, std::chars_format::fixed);
    require(res.ec == std::errc{}, "binom_tail: cannot format delta");
    return binom_tail(n, parse_rational(std::string(buf, res.ptr)));
}

EntropySweep entropy_sweep(int nmax, int grid)
{
    require(nmax >= 0 && grid >= 2, "entropy_sweep: bad range");
    EntropySweep sweep;
    std::vector<BigInt> row{1};
    for (int n = 0; n <= nmax; ++n) {
        if (n > 0) {
            std::vector<BigInt> next(static_cast<std::size_t>(n) + 1);
            next.front() = next.back() = 1;
            for (int k = 1; k < n; ++k)
                next[static_cast<std::size_t>(k)] =
                    row[static_cast<std::size_t>(k) - 1] + row[static_cast<std::size_t>(k)];
            row = std::move(next);
        }
        for (int k = 0; k <= n; ++k) {
            auto c = sandwich_from(n, k, row[static_cast<std::size_t>(k)]);
            ++sweep.sandwich_checks;
            if (!c.holds) sweep.violations.push_back(std::move(c));
        }
        std::vector<BigInt> prefix(row.size());
        BigInt acc = 0;
        for (std::size_t j = 0; j < row.size(); ++j) prefix[j] = acc += row[j];
        for (int j = 0; 2 * j <= grid; ++j) {
            const Rational delta(j, grid);
            auto c = tail_from(n, delta, prefix[static_cast<std::size_t>(floor_index(n, delta))]);
            ++sweep.tail_checks;
            if (!c.holds) sweep.violations.push_back(std::move(c));
        }
    }
    return sweep;
}

} // namespace sumsetlab
