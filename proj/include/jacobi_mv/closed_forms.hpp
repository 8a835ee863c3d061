#ifndef JACOBI_MV_CLOSED_FORMS_HPP
#define JACOBI_MV_CLOSED_FORMS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <jacobi_mv/cap_operators.hpp>
#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/jacobi_sequences.hpp>
#include <jacobi_mv/linalg.hpp>
#include <jacobi_mv/moments.hpp>
#include <jacobi_mv/multiindex.hpp>
#include <jacobi_mv/orthodecomp.hpp>
#include <jacobi_mv/polynomial.hpp>
#include <jacobi_mv/rational.hpp>
#include <jacobi_mv/symbolic.hpp>

namespace jacobi_mv
{

enum class family { hermite, laguerre, jacobi, gegenbauer, chebyshev1, chebyshev2, legendre };

inline std::string to_string(family f)
{
    switch (f) {
    case family::hermite:
        return "hermite";
    case family::laguerre:
        return "laguerre";
    case family::jacobi:
        return "jacobi";
    case family::gegenbauer:
        return "gegenbauer";
    case family::chebyshev1:
        return "chebyshev1";
    case family::chebyshev2:
        return "chebyshev2";
    case family::legendre:
        return "legendre";
    }
    return "?";
}

inline family family_from_string(std::string_view s)
{
    for (auto f : {family::hermite, family::laguerre, family::jacobi, family::gegenbauer, family::chebyshev1,
                   family::chebyshev2, family::legendre}) {
        if (to_string(f) == s) {
            return f;
        }
    }
    throw error(errc::unsupported_parameter, "unknown family '" + std::string(s) + "'");
}

/// A tensor-product classical family in d variables.
///
/// Hermite: weight e^{-|x|^2} on R^d. Laguerre: prod x_i^{alpha_i} e^{-x_i} on
/// the positive orthant. Jacobi: prod (1-x_i)^{a_i} (1+x_i)^{b_i} on [-1,1]^d.
/// Gegenbauer, both Chebyshev kinds and Legendre are Jacobi with
/// a_i = b_i = lambda_i - 1/2 and lambda_i = lambda, 0, 1, 1/2 respectively.
struct FamilySpec {
    family kind = family::hermite;
    std::size_t d = 1;
    std::vector<Rational> alpha;
    std::vector<Rational> a;
    std::vector<Rational> b;
    std::vector<Rational> lambda;

    static FamilySpec hermite(std::size_t d) { return make(family::hermite, d); }

    static FamilySpec laguerre(std::vector<Rational> alpha)
    {
        FamilySpec s = make(family::laguerre, alpha.size());
        s.alpha = std::move(alpha);
        s.validate();
        return s;
    }

    static FamilySpec jacobi(std::vector<Rational> a, std::vector<Rational> b)
    {
        FamilySpec s = make(family::jacobi, a.size());
        s.a = std::move(a);
        s.b = std::move(b);
        s.validate();
        return s;
    }

    static FamilySpec gegenbauer(std::vector<Rational> lambda)
    {
        FamilySpec s = make(family::gegenbauer, lambda.size());
        s.lambda = std::move(lambda);
        s.validate();
        return s;
    }

    static FamilySpec chebyshev1(std::size_t d) { return make(family::chebyshev1, d); }
    static FamilySpec chebyshev2(std::size_t d) { return make(family::chebyshev2, d); }
    static FamilySpec legendre(std::size_t d) { return make(family::legendre, d); }

    bool jacobi_like() const noexcept { return kind != family::hermite && kind != family::laguerre; }

    /// Effective Jacobi parameters of coordinate i (jacobi-like families only).
    Rational jacobi_a(std::size_t i) const
    {
        switch (kind) {
        case family::jacobi:
            return a.at(i);
        case family::gegenbauer:
            return lambda.at(i) - Rational(1, 2);
        case family::chebyshev1:
            return Rational(-1, 2);
        case family::chebyshev2:
            return Rational(1, 2);
        case family::legendre:
            return 0;
        default:
            throw error(errc::unsupported_parameter, to_string(kind) + " has no Jacobi parameters");
        }
    }

    Rational jacobi_b(std::size_t i) const { return kind == family::jacobi ? b.at(i) : jacobi_a(i); }

    /// lambda_i for the Gegenbauer-type families.
    Rational gegenbauer_lambda(std::size_t i) const
    {
        switch (kind) {
        case family::gegenbauer:
            return lambda.at(i);
        case family::chebyshev1:
            return 0;
        case family::chebyshev2:
            return 1;
        case family::legendre:
            return Rational(1, 2);
        default:
            throw error(errc::unsupported_parameter, to_string(kind) + " has no lambda parameter");
        }
    }

    void validate() const
    {
        if (d == 0) {
            throw error(errc::invalid_dimension, "d must be at least 1");
        }
        auto need = [&](const std::vector<Rational>& v, const char* name) {
            if (v.size() != d) {
                throw error(errc::dimension_mismatch, std::string(name) + " needs " + std::to_string(d) + " values");
            }
        };
        switch (kind) {
        case family::laguerre:
            need(alpha, "alpha");
            for (const auto& x : alpha) {
                if (x <= -1) {
                    throw error(errc::parameter_out_of_range, "alpha must exceed -1, got " + x.get_str());
                }
            }
            break;
        case family::jacobi:
            need(a, "a");
            need(b, "b");
            for (std::size_t i = 0; i < d; ++i) {
                if (a[i] <= -1 || b[i] <= -1) {
                    throw error(errc::parameter_out_of_range, "a and b must exceed -1");
                }
            }
            break;
        case family::gegenbauer:
            need(lambda, "lambda");
            for (const auto& x : lambda) {
                if (x <= Rational(-1, 2)) {
                    throw error(errc::parameter_out_of_range, "lambda must exceed -1/2, got " + x.get_str());
                }
            }
            break;
        default:
            break;
        }
    }

    /// The normalized moment functional of the weight.
    MomentFunctional functional() const
    {
        switch (kind) {
        case family::hermite:
            return MomentFunctional::gaussian_product(d);
        case family::laguerre:
            return MomentFunctional::gamma_product(alpha);
        default: {
            std::vector<Rational> pa(d);
            std::vector<Rational> pb(d);
            for (std::size_t i = 0; i < d; ++i) {
                pa[i] = jacobi_a(i);
                pb[i] = jacobi_b(i);
            }
            return MomentFunctional::beta_product(pa, pb);
        }
        }
    }

    /// Total mass of the unnormalized weight.
    SymbolicReal mass_factor() const { return functional().mass_factor(); }

    std::string describe() const
    {
        std::string s = to_string(kind) + " d=" + std::to_string(d);
        auto list = [&](const char* name, const std::vector<Rational>& v) {
            s += std::string(" ") + name + "=";
            for (std::size_t i = 0; i < v.size(); ++i) {
                s += (i ? "," : "") + v[i].get_str();
            }
        };
        if (kind == family::laguerre) {
            list("alpha", alpha);
        } else if (kind == family::jacobi) {
            list("a", a);
            list("b", b);
        } else if (kind == family::gegenbauer) {
            list("lambda", lambda);
        }
        return s;
    }

private:
    static FamilySpec make(family f, std::size_t d)
    {
        FamilySpec s;
        s.kind = f;
        s.d = d;
        if (d == 0) {
            throw error(errc::invalid_dimension, "d must be at least 1");
        }
        return s;
    }
};

namespace detail
{

inline Rational checked_div(const Rational& num, const Rational& den, const std::string& what)
{
    if (den == 0) {
        throw error(errc::singular_parameter, what + " has a vanishing denominator");
    }
    return num / den;
}

/// x P_k = A_k P_{k+1} + B_k P_k + C_k P_{k-1} for the Jacobi polynomials.
/// At k = 0 the common factor (s+1) of A_0, and (a+b) of B_0, is cancelled so
/// that s = -1 and s = 0 need no special casing.
inline Rational jacobi_upper(const Rational& a, const Rational& b, int k)
{
    const Rational s = a + b;
    if (k == 0) {
        return checked_div(2, s + 2, "Jacobi creation factor");
    }
    return checked_div(2 * Rational(k + 1) * (k + s + 1), (2 * k + s + 1) * (2 * k + s + 2), "Jacobi creation factor");
}

inline Rational jacobi_middle(const Rational& a, const Rational& b, int k)
{
    const Rational s = a + b;
    if (k == 0) {
        return checked_div(b - a, s + 2, "Jacobi preservation coefficient");
    }
    return checked_div(b * b - a * a, (2 * k + s) * (2 * k + s + 2), "Jacobi preservation coefficient");
}

inline Rational jacobi_lower(const Rational& a, const Rational& b, int k)
{
    const Rational s = a + b;
    return checked_div(2 * (k + a) * (k + b), (2 * k + s) * (2 * k + s + 1), "Jacobi annihilation coefficient");
}

/// One-variable family polynomial of degree k as a coefficient vector.
inline std::vector<Rational> family_polynomial_1d(const FamilySpec& spec, std::size_t i, int k)
{
    using Coeffs = std::vector<Rational>;
    auto times_x = [](const Coeffs& p) {
        Coeffs out(p.size() + 1, Rational(0));
        for (std::size_t e = 0; e < p.size(); ++e) {
            out[e + 1] = p[e];
        }
        return out;
    };
    auto axpy = [](Coeffs& y, const Rational& s, const Coeffs& x) {
        if (y.size() < x.size()) {
            y.resize(x.size(), Rational(0));
        }
        for (std::size_t e = 0; e < x.size(); ++e) {
            y[e] += s * x[e];
        }
    };
    Coeffs prev;
    Coeffs cur{Rational(1)};
    for (int n = 0; n < k; ++n) {
        Coeffs next;
        switch (spec.kind) {
        case family::hermite:
            next = times_x(cur);
            for (auto& c : next) {
                c *= 2;
            }
            axpy(next, Rational(-2 * n), prev);
            break;
        case family::laguerre: {
            const Rational& al = spec.alpha[i];
            next = times_x(cur);
            for (auto& c : next) {
                c = -c;
            }
            axpy(next, 2 * n + al + 1, cur);
            axpy(next, -(n + al), prev);
            for (auto& c : next) {
                c /= n + 1;
            }
            break;
        }
        default: {
            const Rational a = spec.jacobi_a(i);
            const Rational b = spec.jacobi_b(i);
            next = times_x(cur);
            axpy(next, -jacobi_middle(a, b, n), cur);
            if (n > 0) {
                axpy(next, -jacobi_lower(a, b, n), prev);
            }
            const Rational up = jacobi_upper(a, b, n);
            for (auto& c : next) {
                c /= up;
            }
            break;
        }
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Squared L2 norm of the one-variable polynomial of degree k under the
/// unnormalized weight.
inline SymbolicReal family_norm_squared_1d(const FamilySpec& spec, std::size_t i, int k)
{
    switch (spec.kind) {
    case family::hermite:
        return SymbolicReal(Rational(factorial(static_cast<unsigned long>(k)) * power(Rational(2), k))) *
               SymbolicReal::pi_power(Rational(1, 2));
    case family::laguerre:
        return SymbolicReal::gamma(spec.alpha[i] + k + 1) / SymbolicReal(Rational(factorial(static_cast<unsigned long>(k))));
    default: {
        const Rational a = spec.jacobi_a(i);
        const Rational b = spec.jacobi_b(i);
        const Rational s = a + b;
        SymbolicReal v = SymbolicReal::two_power(s + 1) * SymbolicReal::gamma(a + k + 1) * SymbolicReal::gamma(b + k + 1);
        if (k == 0) {
            return v / SymbolicReal::gamma(s + 2);
        }
        return v / (SymbolicReal(Rational(factorial(static_cast<unsigned long>(k)) * (2 * k + s + 1))) *
                    SymbolicReal::gamma(s + k + 1));
    }
    }
}

/// Scalar c with a+ P_k = c P_{k+1} in one variable.
inline Rational creation_factor_1d(const FamilySpec& spec, std::size_t i, int k)
{
    switch (spec.kind) {
    case family::hermite:
        return Rational(1, 2);
    case family::laguerre:
        return Rational(-(k + 1));
    default:
        return jacobi_upper(spec.jacobi_a(i), spec.jacobi_b(i), k);
    }
}

inline void check_multi(const FamilySpec& spec, const MultiIndex& beta)
{
    if (beta.dim() != spec.d) {
        throw error(errc::dimension_mismatch, "index dimension " + std::to_string(beta.dim()) + " differs from d=" +
                                                  std::to_string(spec.d));
    }
}

} // namespace detail

/// Tensor product of the one-variable family polynomials, with the classical
/// normalization (Hermite leading coefficient 2^k, Laguerre (-1)^k/k!, Jacobi
/// P_k(1) = (a+1)_k/k!).
inline Polynomial<Rational> family_polynomial(const FamilySpec& spec, const MultiIndex& beta)
{
    spec.validate();
    detail::check_multi(spec, beta);
    auto p = Polynomial<Rational>::constant(spec.d, Rational(1));
    for (std::size_t i = 0; i < spec.d; ++i) {
        const auto c = detail::family_polynomial_1d(spec, i, beta[i]);
        Polynomial<Rational> factor(spec.d);
        for (std::size_t e = 0; e < c.size(); ++e) {
            factor.add_term(MultiIndex(spec.d).raised(i, static_cast<int>(e)), c[e]);
        }
        p = mul(p, factor);
    }
    return p;
}

inline SymbolicReal family_norm_squared(const FamilySpec& spec, const MultiIndex& beta)
{
    spec.validate();
    detail::check_multi(spec, beta);
    SymbolicReal v(Rational(1));
    for (std::size_t i = 0; i < spec.d; ++i) {
        v *= detail::family_norm_squared_1d(spec, i, beta[i]);
    }
    return v;
}

struct CreationPower {
    Rational factor;
    MultiIndex result;
};

/// (a+_i)^m P_base = factor * P_{base + m e_i}; coordinate i is 0-based.
inline CreationPower creation_power(const FamilySpec& spec, const MultiIndex& base, std::size_t i, int m)
{
    spec.validate();
    detail::check_multi(spec, base);
    if (i >= spec.d) {
        throw error(errc::invalid_index, "coordinate " + std::to_string(i) + " outside 0.." +
                                             std::to_string(spec.d - 1));
    }
    if (m < 1) {
        throw error(errc::invalid_index, "power must be at least 1");
    }
    Rational f = 1;
    for (int p = 0; p < m; ++p) {
        f *= detail::creation_factor_1d(spec, i, base[i] + p);
    }
    return {f, base.raised(i, m)};
}

/// Diagonal entry of Omega_n for one class, in the unnormalized (weight
/// with its natural mass) convention.
inline SymbolicReal closed_form_omega_value(const FamilySpec& spec, const OccupationVector& nbar)
{
    spec.validate();
    detail::check_multi(spec, nbar);
    const SymbolicReal nfact(Rational(factorial_of(nbar)));
    switch (spec.kind) {
    case family::hermite:
        return SymbolicReal(power(Rational(1, 2), nbar.degree())) * SymbolicReal::pi_power(ratio(static_cast<long>(spec.d), 2)) *
               nfact;
    case family::laguerre: {
        SymbolicReal v = nfact;
        for (std::size_t l = 0; l < spec.d; ++l) {
            v *= SymbolicReal::gamma(nbar[l] + spec.alpha[l] + 1);
        }
        return v;
    }
    default: {
        Rational sum_ab = 0;
        SymbolicReal v(Rational(1));
        for (std::size_t i = 0; i < spec.d; ++i) {
            const Rational a = spec.jacobi_a(i);
            const Rational b = spec.jacobi_b(i);
            const Rational s = a + b;
            sum_ab += s;
            Rational prod = 1;
            for (int p = 0; p < nbar[i]; ++p) {
                prod *= detail::jacobi_upper(a, b, p);
            }
            v *= SymbolicReal(prod * prod);
            const int n = nbar[i];
            v *= SymbolicReal::gamma(n + a + 1) * SymbolicReal::gamma(n + b + 1);
            if (n == 0) {
                v /= SymbolicReal::gamma(s + 2);
            } else {
                v /= SymbolicReal(Rational(2 * n + s + 1)) * SymbolicReal::gamma(n + s + 1);
            }
        }
        return SymbolicReal::two_power(sum_ab + static_cast<long>(spec.d)) * v / nfact;
    }
    }
}

/// Entry of alpha_{e_l|n} for the class nbar (the matrix is diagonal).
inline Rational closed_form_alpha_value(const FamilySpec& spec, const OccupationVector& nbar, std::size_t l)
{
    spec.validate();
    detail::check_multi(spec, nbar);
    if (l >= spec.d) {
        throw error(errc::invalid_index, "coordinate " + std::to_string(l) + " outside 0.." +
                                             std::to_string(spec.d - 1));
    }
    switch (spec.kind) {
    case family::hermite:
        return 0;
    case family::laguerre:
        return 2 * nbar[l] + spec.alpha[l] + 1;
    default:
        return detail::jacobi_middle(spec.jacobi_a(l), spec.jacobi_b(l), nbar[l]);
    }
}

struct ClosedFormEntry {
    OccupationVector nbar;
    /// Unnormalized value.
    SymbolicReal omega;
    /// omega divided by the mass factor.
    Rational omega_normalized;
    /// Diagonal entry of alpha_{e_l|n}, l = 0..d-1.
    std::vector<Rational> alpha;
};

inline std::vector<ClosedFormEntry> closed_form_entries(const FamilySpec& spec, int n)
{
    const SymbolicReal mass = spec.mass_factor();
    std::vector<ClosedFormEntry> out;
    const auto classes = enumerate_classes(spec.d, n);
    for (const auto& nbar : classes.classes()) {
        ClosedFormEntry e{nbar, closed_form_omega_value(spec, nbar), 0, {}};
        const SymbolicReal normalized = e.omega / mass;
        if (!normalized.is_rational()) {
            throw error(errc::internal_consistency, "normalized closed form for " + nbar.str() +
                                                        " is not rational: " + normalized.str());
        }
        e.omega_normalized = normalized.to_rational();
        for (std::size_t l = 0; l < spec.d; ++l) {
            e.alpha.push_back(closed_form_alpha_value(spec, nbar, l));
        }
        out.push_back(std::move(e));
    }
    return out;
}

/// Diagonal Omega_n in the normalized convention.
inline Matrix<Rational> closed_form_omega(const FamilySpec& spec, int n)
{
    const auto entries = closed_form_entries(spec, n);
    Matrix<Rational> m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i].omega_normalized;
    }
    return m;
}

inline Matrix<Rational> closed_form_alpha(const FamilySpec& spec, int n, std::size_t l)
{
    const auto classes = enumerate_classes(spec.d, n);
    Matrix<Rational> m(classes.size(), classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        m(i, i) = closed_form_alpha_value(spec, classes[i], l);
    }
    return m;
}

/// The Omega formula written directly in lambda for the Gegenbauer-type
/// families, evaluated literally term by term: Gegenbauer in general, plus the
/// separate forms for Chebyshev (both kinds) and Legendre. Returns nullopt where
/// the literal expression divides by zero or hits a Gamma pole. Not defined
/// for Hermite, Laguerre and Jacobi.
inline std::optional<SymbolicReal> specialized_omega_value(const FamilySpec& spec, const OccupationVector& nbar)
{
    spec.validate();
    detail::check_multi(spec, nbar);
    if (!spec.jacobi_like() || spec.kind == family::jacobi) {
        return std::nullopt;
    }
    const SymbolicReal nfact(Rational(factorial_of(nbar)));
    SymbolicReal v(Rational(1));
    try {
        for (std::size_t i = 0; i < spec.d; ++i) {
            const int n = nbar[i];
            Rational prod = 1;
            SymbolicReal tail;
            switch (spec.kind) {
            case family::chebyshev1:
                for (int p = 0; p < n; ++p) {
                    prod *= Rational(p + 1, 2 * p + 1);
                }
                if (n == 0) {
                    return std::nullopt;
                }
                tail = SymbolicReal::gamma(n + Rational(1, 2)).pow(2) /
                       (SymbolicReal(Rational(2 * n)) * SymbolicReal::gamma(Rational(n)));
                break;
            case family::chebyshev2:
                for (int p = 0; p < n; ++p) {
                    prod *= Rational(p + 2, 2 * p + 3);
                }
                tail = SymbolicReal(Rational(4)) * SymbolicReal::gamma(n + Rational(3, 2)).pow(2) /
                       (SymbolicReal(Rational(2 * n + 2)) * SymbolicReal::gamma(Rational(n + 2)));
                break;
            case family::legendre:
                for (int p = 0; p < n; ++p) {
                    prod *= Rational((p + 1) * (p + 1), 2 * p + 1);
                }
                tail = SymbolicReal(Rational(2)) * SymbolicReal::gamma(Rational(n + 1)) /
                       SymbolicReal(Rational(2 * n + 1));
                break;
            default: {
                const Rational lam = spec.gegenbauer_lambda(i);
                for (int p = 0; p < n; ++p) {
                    const Rational den = (p + lam) * (2 * p + 2 * lam + 1);
                    if (den == 0) {
                        return std::nullopt;
                    }
                    prod *= (p + 1) * (2 * lam + p) / den;
                }
                if (2 * n + 2 * lam == 0) {
                    return std::nullopt;
                }
                tail = SymbolicReal::two_power(2 * lam) * SymbolicReal::gamma(n + lam + Rational(1, 2)).pow(2) /
                       (SymbolicReal(Rational(2 * n + 2 * lam)) * SymbolicReal::gamma(n + 2 * lam));
                break;
            }
            }
            v *= SymbolicReal(prod * prod) * tail;
        }
    } catch (const error& e) {
        if (e.code() == errc::singular_parameter) {
            return std::nullopt;
        }
        throw;
    }
    return v / nfact;
}

struct ClosedFormComparison {
    int n;
    OccupationVector nbar;
    Rational pipeline_omega;
    Rational closed_omega;
    bool omega_match;
    std::vector<Rational> pipeline_alpha;
    std::vector<Rational> closed_alpha;
    bool alpha_match;
    /// Normalized value of specialized_omega_value, when it is defined.
    std::optional<Rational> specialized_omega;
    /// "agrees", "differs", "undefined", or "n/a" for families without one.
    std::string specialized_status;
};

struct CreationComparison {
    std::size_t coordinate;
    MultiIndex base;
    int power;
    Rational expected;
    std::optional<Rational> observed;
    bool match;
};

struct FamilyReport {
    FamilySpec spec;
    int max_level = 0;
    std::vector<ClosedFormComparison> entries;
    /// Off-diagonal entries of every pipeline Omega and alpha are zero.
    bool diagonal = true;
    std::vector<CreationComparison> creation;
    /// Pipeline agrees with the master formula everywhere, and the creation
    /// factors agree. Differences in specialized formulas do not affect it.
    bool passed = true;
    std::vector<std::string> specialized_discrepancies;
    std::string witness;
};

namespace detail
{

/// Observed factor c with (a+_i)^m P_base = c P_{base+m e_i}, read off the
/// pipeline operators. nullopt when the image is not a multiple of the target.
inline std::optional<Rational> observed_creation_power(const CapOperatorSet<Rational>& ops, const FamilySpec& spec,
                                                       const MultiIndex& base, std::size_t i, int m)
{
    const auto& b = ops.basis();
    const int n = base.degree();
    auto coords_of = [&](const MultiIndex& beta) {
        auto coords = b.expand(b.indexer().dense(family_polynomial(spec, beta)));
        for (int k = 0; k <= b.max_degree(); ++k) {
            if (k == beta.degree()) {
                continue;
            }
            for (const auto& x : coords[static_cast<std::size_t>(k)]) {
                if (x != 0) {
                    throw error(errc::internal_consistency, "family polynomial " + beta.str() +
                                                                " is not orthogonal to lower degrees");
                }
            }
        }
        return coords[static_cast<std::size_t>(beta.degree())];
    };
    auto v = coords_of(base);
    for (int p = 0; p < m; ++p) {
        v = ops.plus(i, n + p) * v;
    }
    const auto target = coords_of(base.raised(i, m));
    std::optional<Rational> c;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (target[k] == 0) {
            if (v[k] != 0) {
                return std::nullopt;
            }
            continue;
        }
        const Rational r = v[k] / target[k];
        if (c && *c != r) {
            return std::nullopt;
        }
        c = r;
    }
    return c;
}

} // namespace detail

/// Runs moments -> decomposition -> operators -> sequences for the family and
/// compares Omega (normalized) and alpha with the closed forms, exactly. Also
/// compares creation_power with iterated pipeline creators for m <= max_power
/// from every base index of degree <= max_level - max_power.
inline FamilyReport verify_family(const FamilySpec& spec, int max_level, int max_power = 3)
{
    spec.validate();
    FamilyReport report;
    report.spec = spec;
    report.max_level = max_level;
    const int degree = std::max(max_level + 1, max_power);
    const auto ops = build_cap_operators(decompose<Rational>(spec.functional(), degree));
    const auto seq = compute(ops, max_level);
    const SymbolicReal mass = spec.mass_factor();
    auto fail = [&](const std::string& why) {
        if (report.passed) {
            report.witness = why;
        }
        report.passed = false;
    };

    for (int n = 0; n <= max_level; ++n) {
        const auto entries = closed_form_entries(spec, n);
        const auto& om = seq.omega(n);
        for (std::size_t r = 0; r < om.rows(); ++r) {
            for (std::size_t c = 0; c < om.cols(); ++c) {
                bool off = r != c && om(r, c) != 0;
                for (std::size_t l = 0; l < spec.d; ++l) {
                    off = off || (r != c && seq.alpha(l, n)(r, c) != 0);
                }
                if (off) {
                    report.diagonal = false;
                    fail("off-diagonal entry at level " + std::to_string(n));
                }
            }
        }
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto& e = entries[k];
            ClosedFormComparison cmp{n, e.nbar, om(k, k), e.omega_normalized, om(k, k) == e.omega_normalized,
                                     {}, e.alpha, true, std::nullopt, "n/a"};
            for (std::size_t l = 0; l < spec.d; ++l) {
                cmp.pipeline_alpha.push_back(seq.alpha(l, n)(k, k));
                cmp.alpha_match = cmp.alpha_match && cmp.pipeline_alpha.back() == e.alpha[l];
            }
            if (!cmp.omega_match) {
                fail("Omega mismatch at " + e.nbar.str() + ": pipeline " + cmp.pipeline_omega.get_str() +
                     ", closed form " + cmp.closed_omega.get_str());
            }
            if (!cmp.alpha_match) {
                fail("alpha mismatch at " + e.nbar.str());
            }
            if (spec.jacobi_like() && spec.kind != family::jacobi) {
                if (const auto sv = specialized_omega_value(spec, e.nbar)) {
                    const SymbolicReal normalized = *sv / mass;
                    if (normalized.is_rational()) {
                        cmp.specialized_omega = normalized.to_rational();
                        cmp.specialized_status = *cmp.specialized_omega == cmp.pipeline_omega ? "agrees" : "differs";
                    } else {
                        cmp.specialized_status = "differs";
                    }
                } else {
                    cmp.specialized_status = "undefined";
                }
                if (cmp.specialized_status != "agrees") {
                    report.specialized_discrepancies.push_back(
                        to_string(spec.kind) + " specialized formula " + cmp.specialized_status + " at " +
                        e.nbar.str() + ": pipeline " + cmp.pipeline_omega.get_str() +
                        (cmp.specialized_omega ? ", formula " + cmp.specialized_omega->get_str() : std::string()));
                }
            }
            report.entries.push_back(std::move(cmp));
        }
    }

    for (std::size_t i = 0; i < spec.d; ++i) {
        for (int m = 1; m <= max_power; ++m) {
            for (int n = 0; n + m <= degree; ++n) {
                const auto bases = enumerate_classes(spec.d, n);
                for (const auto& base : bases.classes()) {
                    const auto expected = creation_power(spec, base, i, m);
                    const auto observed = detail::observed_creation_power(ops, spec, base, i, m);
                    const bool ok = observed && *observed == expected.factor;
                    report.creation.push_back({i, base, m, expected.factor, observed, ok});
                    if (!ok) {
                        fail("creation power mismatch from " + base.str() + ", coordinate " + std::to_string(i + 1) +
                             ", m=" + std::to_string(m));
                    }
                }
            }
        }
    }
    return report;
}

} // namespace jacobi_mv

#endif
