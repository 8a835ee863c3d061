#ifndef JACOBI_MV_RATIONAL_HPP
#define JACOBI_MV_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <jacobi_mv/errors.hpp>

namespace jacobi_mv
{

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p" or an exact decimal such as "-0.25". Never goes through floating point.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto fail = [&]() -> Rational { throw error(errc::invalid_input, "not a rational number: '" + s + "'"); };
    if (s.empty()) {
        return fail();
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos || s.find('.', dot + 1) != std::string::npos) {
            return fail();
        }
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const auto frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") {
            return fail();
        }
        if (digits.front() == '+') {
            digits.erase(0, 1);
        }
        Integer num;
        if (num.set_str(digits, 10) != 0) {
            return fail();
        }
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    if (s.front() == '+') {
        s.erase(0, 1);
    }
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) {
        return fail();
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline Integer floor(const Rational& q)
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

inline Rational power(Rational base, long exponent)
{
    if (exponent < 0) {
        base = 1 / base;
        exponent = -exponent;
    }
    Rational out = 1;
    while (exponent > 0) {
        if (exponent & 1) {
            out *= base;
        }
        base *= base;
        exponent >>= 1;
    }
    return out;
}

/// num/den in lowest terms; the two-argument mpq constructor does not reduce.
inline Rational ratio(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw error(errc::invalid_input, "zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Integer factorial(unsigned long n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

/// Exact rationals decide zero exactly; double uses a relative tolerance.
template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x, const Rational& /*scale*/ = 1) { return sgn(x) == 0; }
    static int sign(const Rational& x, const Rational& scale = 1) { return is_zero(x, scale) ? 0 : sgn(x); }
    static Rational magnitude(const Rational& x) { return abs(x); }
    static Rational from_rational(const Rational& q) { return q; }
    static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr double relative_tolerance = 1e-10;
    static bool is_zero(double x, double scale = 1.0)
    {
        return std::abs(x) <= relative_tolerance * (scale > 1.0 ? scale : 1.0);
    }
    static int sign(double x, double scale = 1.0) { return is_zero(x, scale) ? 0 : (x > 0 ? 1 : -1); }
    static double magnitude(double x) { return std::abs(x); }
    static double from_rational(const Rational& q) { return q.get_d(); }
    static std::string to_string(double x) { return std::to_string(x); }
};

} // namespace jacobi_mv

#endif
