#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "birkhoff/errors.hpp"

namespace birkhoff {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. boost keeps it reduced with a positive denominator,
// which is exactly the invariant the rest of the library relies on.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

// base^e by repeated squaring, e >= 0.
inline Rational rational_pow(Rational base, unsigned long e) {
    Rational out = 1;
    while (e != 0) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

inline BigInt bigint_pow(BigInt base, unsigned long e) {
    BigInt out = 1;
    while (e != 0) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

// k(k-1)...(k-d+1) as an exact integer; 1 when d == 0.
inline BigInt falling_factorial(int k, int d) {
    BigInt out = 1;
    for (int i = 0; i < d; ++i) out *= (k - i);
    return out;
}

inline BigInt factorial(int k) { return falling_factorial(k, k); }

// Binomial coefficient with n >= 0.
inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    return falling_factorial(n, k) / factorial(k);
}

namespace detail {
inline BigInt parse_integer_token(const std::string& text) {
    std::string t = text;
    if (!t.empty() && t.front() == '+') t.erase(t.begin());
    if (t.empty()) throw InputError("empty integer in rational literal");
    std::size_t digits_from = (t.front() == '-') ? 1 : 0;
    if (t.size() == digits_from) throw InputError("malformed integer in rational literal: " + text);
    for (std::size_t i = digits_from; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9')
            throw InputError("malformed integer in rational literal: " + text);
    return BigInt(t);
}
}  // namespace detail

// Accepts "7", "-3", "3/4", "-6/8" (reduced on construction). Rejects zero
// denominators and any other text.
inline Rational parse_rational(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string::npos) return Rational(detail::parse_integer_token(text));
    const BigInt num = detail::parse_integer_token(text.substr(0, slash));
    const BigInt den = detail::parse_integer_token(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in rational literal: " + text);
    return Rational(num, den);
}

// "n" for integers, "n/d" otherwise (d > 0, fraction reduced).
inline std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace birkhoff
