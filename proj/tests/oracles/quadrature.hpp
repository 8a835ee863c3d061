#ifndef ORACLES_QUADRATURE_HPP
#define ORACLES_QUADRATURE_HPP

// Moments and total masses of the classical weights by double-exponential
// quadrature in 50-digit floating point.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <gmpxx.h>

namespace oracle
{

using real = boost::multiprecision::cpp_bin_float_50;

inline real to_real(const mpq_class& q)
{
    return real(q.get_num().get_str()) / real(q.get_den().get_str());
}

inline real gaussian_integral(int k)
{
    boost::math::quadrature::sinh_sinh<real> integrator;
    return integrator.integrate([k](real x) -> real {
        if (x == 0) {
            return k == 0 ? real(1) : real(0);
        }
        const real v = exp(k * log(abs(x)) - x * x);
        return (k % 2 != 0 && x < 0) ? real(-v) : v;
    });
}

inline real gamma_integral(const mpq_class& alpha, int k)
{
    const real al = to_real(alpha);
    boost::math::quadrature::exp_sinh<real> integrator;
    return integrator.integrate([&](real x) -> real { return x > 0 ? real(exp((k + al) * log(x) - x)) : real(0); });
}

inline real beta_integral(const mpq_class& a, const mpq_class& b, int k)
{
    const real ra = to_real(a);
    const real rb = to_real(b);
    boost::math::quadrature::tanh_sinh<real> integrator;
    // The two-argument form passes the signed distance to the nearer endpoint,
    // which keeps (1-x)^a and (1+x)^b accurate near the singular ends.
    return integrator.integrate([&](real x, real xc) -> real {
        const real one_minus = x > 0 ? real(abs(xc)) : real(1 - x);
        const real one_plus = x < 0 ? real(abs(xc)) : real(1 + x);
        return pow(x, k) * pow(one_minus, ra) * pow(one_plus, rb);
    });
}

inline bool close(const real& x, const real& y, const real& rel)
{
    const real scale = std::max(real(1), std::max(abs(x), abs(y)));
    return abs(x - y) <= rel * scale;
}

} // namespace oracle

#endif
