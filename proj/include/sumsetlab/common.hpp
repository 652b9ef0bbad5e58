#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace sumsetlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Bad arguments or inputs (wrong kind, out-of-range parameter, modulus mismatch).
class Error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An internal contract that should hold by construction was found broken.
// Seeing one of these means a bug, or a counterexample to a proven statement.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Outcome when the hypothesis of a conditional statement does not hold for
// the given input. This is a legitimate runtime result, not an error.
struct NotMet {
    std::string stage;
    std::string reason;
};

template <class T>
using Outcome = std::variant<T, NotMet>;

template <class T>
bool met(const Outcome<T>& o) { return std::holds_alternative<T>(o); }

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    return Rational(BigInt(num), BigInt(den));
}

double to_double(const Rational& r);
BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);
// Saturating conversion to int64_t.
std::int64_t clamp_to_i64(const BigInt& v);
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

inline void require(bool cond, const std::string& what)
{
    if (!cond) throw Error(what);
}

inline void ensure(bool cond, const std::string& what)
{
    if (!cond) throw ContractViolation(what);
}

} // namespace sumsetlab
