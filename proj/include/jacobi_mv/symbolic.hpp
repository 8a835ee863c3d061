#ifndef JACOBI_MV_SYMBOLIC_HPP
#define JACOBI_MV_SYMBOLIC_HPP

#include <cmath>
#include <iterator>
#include <map>
#include <numbers>
#include <string>

#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/rational.hpp>

namespace jacobi_mv
{

/// A real number of the form  q * pi^p * 2^t * prod_c Gamma(c)^{e_c}
/// with q, p rational, t in [0,1) and each Gamma core c in (0,1) \ {1/2}.
///
/// Gamma at any rational argument that is not a non-positive integer reduces to
/// a rational multiple of one core via Gamma(x+1) = x Gamma(x); Gamma(1) = 1 and
/// Gamma(1/2) = pi^{1/2}. The representation is canonical, so equality is structural.
class SymbolicReal
{
public:
    SymbolicReal() = default;
    SymbolicReal(const Rational& q) : m_coeff(q) { normalize(); } // NOLINT: implicit by intent

    static SymbolicReal pi_power(const Rational& p)
    {
        SymbolicReal s(1);
        s.m_pi = p;
        return s;
    }

    static SymbolicReal two_power(const Rational& t)
    {
        SymbolicReal s(1);
        const Integer whole = floor(t);
        s.m_two = t - Rational(whole);
        s.m_coeff = power(Rational(2), whole.get_si());
        return s;
    }

    static SymbolicReal gamma(Rational x)
    {
        if (is_integer(x) && x <= 0) {
            throw error(errc::singular_parameter, "Gamma has a pole at " + x.get_str());
        }
        Rational factor = 1;
        while (x > 1) {
            x -= 1;
            factor *= x;
        }
        while (x <= 0) {
            factor /= x;
            x += 1;
        }
        SymbolicReal s(factor);
        if (x == 1) {
            return s;
        }
        if (x == Rational(1, 2)) {
            s.m_pi = Rational(1, 2);
            return s;
        }
        s.m_gamma[x] = 1;
        return s;
    }

    const Rational& coefficient() const noexcept { return m_coeff; }
    const Rational& pi_exponent() const noexcept { return m_pi; }
    const Rational& two_exponent() const noexcept { return m_two; }
    const std::map<Rational, int>& gamma_cores() const noexcept { return m_gamma; }

    bool is_zero() const { return m_coeff == 0; }
    bool is_rational() const { return m_pi == 0 && m_two == 0 && m_gamma.empty(); }

    Rational to_rational() const
    {
        if (!is_rational()) {
            throw error(errc::internal_consistency, "symbolic value " + str() + " is not rational");
        }
        return m_coeff;
    }

    double to_double() const
    {
        double v = m_coeff.get_d() * std::pow(std::numbers::pi, m_pi.get_d()) * std::pow(2.0, m_two.get_d());
        for (const auto& [c, e] : m_gamma) {
            v *= std::pow(std::tgamma(c.get_d()), e);
        }
        return v;
    }

    SymbolicReal& operator*=(const SymbolicReal& o)
    {
        m_coeff *= o.m_coeff;
        m_pi += o.m_pi;
        m_two += o.m_two;
        if (m_two >= 1) {
            m_two -= 1;
            m_coeff *= 2;
        }
        for (const auto& [c, e] : o.m_gamma) {
            m_gamma[c] += e;
        }
        normalize();
        return *this;
    }

    SymbolicReal inverse() const
    {
        if (is_zero()) {
            throw error(errc::singular_parameter, "division by a zero symbolic value");
        }
        SymbolicReal s;
        s.m_coeff = 1 / m_coeff;
        s.m_pi = -m_pi;
        if (m_two != 0) {
            s.m_two = 1 - m_two;
            s.m_coeff /= 2;
        }
        for (const auto& [c, e] : m_gamma) {
            s.m_gamma[c] = -e;
        }
        return s;
    }

    SymbolicReal& operator/=(const SymbolicReal& o) { return *this *= o.inverse(); }

    friend SymbolicReal operator*(SymbolicReal a, const SymbolicReal& b) { return a *= b; }
    friend SymbolicReal operator/(SymbolicReal a, const SymbolicReal& b) { return a /= b; }

    SymbolicReal pow(int k) const
    {
        SymbolicReal out(1);
        const SymbolicReal base = k < 0 ? inverse() : *this;
        for (int i = 0; i < (k < 0 ? -k : k); ++i) {
            out *= base;
        }
        return out;
    }

    friend bool operator==(const SymbolicReal& a, const SymbolicReal& b)
    {
        return a.m_coeff == b.m_coeff && a.m_pi == b.m_pi && a.m_two == b.m_two && a.m_gamma == b.m_gamma;
    }

    /// e.g. "1/2 * pi^(1)", "pi^(1)", "3 * 2^(1/2) * Gamma(1/3)^(2)"
    std::string str() const
    {
        if (is_zero()) {
            return "0";
        }
        std::string s;
        auto append = [&](const std::string& piece) { s += (s.empty() ? "" : " * ") + piece; };
        if (m_coeff != 1 || is_rational()) {
            append(m_coeff.get_str());
        }
        if (m_two != 0) {
            append("2^(" + m_two.get_str() + ")");
        }
        if (m_pi != 0) {
            append("pi^(" + m_pi.get_str() + ")");
        }
        for (const auto& [c, e] : m_gamma) {
            append("Gamma(" + c.get_str() + ")^(" + std::to_string(e) + ")");
        }
        return s;
    }

private:
    void normalize()
    {
        if (m_coeff == 0) {
            m_pi = 0;
            m_two = 0;
            m_gamma.clear();
            return;
        }
        for (auto it = m_gamma.begin(); it != m_gamma.end();) {
            it = it->second == 0 ? m_gamma.erase(it) : std::next(it);
        }
    }

    Rational m_coeff = 0;
    Rational m_pi = 0;
    Rational m_two = 0;
    std::map<Rational, int> m_gamma;
};

} // namespace jacobi_mv

#endif
