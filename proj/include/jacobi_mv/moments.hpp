#ifndef JACOBI_MV_MOMENTS_HPP
#define JACOBI_MV_MOMENTS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/multiindex.hpp>
#include <jacobi_mv/polynomial.hpp>
#include <jacobi_mv/rational.hpp>
#include <jacobi_mv/symbolic.hpp>

namespace jacobi_mv
{

// One-dimensional normalized moments. All three are exact for rational parameters.

/// E[x^k] under e^{-x^2}/sqrt(pi): (2j)!/(4^j j!) for k = 2j, zero for odd k.
inline Rational gaussian_moment_1d(int k)
{
    if (k % 2 != 0) {
        return 0;
    }
    const int j = k / 2;
    return ratio(factorial(static_cast<unsigned long>(k)),
                 Integer(factorial(static_cast<unsigned long>(j)) * power(Rational(4), j).get_num()));
}

/// E[x^k] under x^alpha e^{-x}/Gamma(alpha+1) on (0, inf): prod_{p=1..k} (alpha + p).
inline Rational gamma_moment_1d(const Rational& alpha, int k)
{
    Rational m = 1;
    for (int p = 1; p <= k; ++p) {
        m *= alpha + p;
    }
    return m;
}

/// E[x^k], k = 0..k_max, under (1-x)^a (1+x)^b normalized on [-1, 1].
///
/// Generated by the integration-by-parts recurrence
///   (a+b+2+k) m_{k+1} = (b-a) m_k + k m_{k-1},
/// and cross-checked against the binomial expansion of x = 2t - 1 with
/// t ~ Beta(b+1, a+1), E[t^k] = prod_{i<k} (b+1+i)/(a+b+2+i).
inline std::vector<Rational> beta_moments_1d(const Rational& a, const Rational& b, int k_max)
{
    std::vector<Rational> m(static_cast<std::size_t>(k_max) + 1);
    m[0] = 1;
    for (int k = 0; k < k_max; ++k) {
        const Rational prev = k > 0 ? m[static_cast<std::size_t>(k) - 1] : Rational(0);
        m[static_cast<std::size_t>(k) + 1] = ((b - a) * m[static_cast<std::size_t>(k)] + k * prev) / (a + b + 2 + k);
    }

    std::vector<Rational> t_moment(static_cast<std::size_t>(k_max) + 1);
    t_moment[0] = 1;
    for (int k = 1; k <= k_max; ++k) {
        t_moment[static_cast<std::size_t>(k)] =
            t_moment[static_cast<std::size_t>(k) - 1] * (b + k) / (a + b + 1 + k);
    }
    for (int k = 0; k <= k_max; ++k) {
        Rational via_binomial = 0;
        for (int i = 0; i <= k; ++i) {
            const Rational term = Rational(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(i))) *
                                  power(Rational(2), i) * t_moment[static_cast<std::size_t>(i)];
            via_binomial += ((k - i) % 2 == 0) ? term : Rational(-term);
        }
        if (via_binomial != m[static_cast<std::size_t>(k)]) {
            throw error(errc::internal_consistency, "beta moment recurrence disagrees with binomial route at k=" +
                                                         std::to_string(k));
        }
    }
    return m;
}

struct GaussianProduct {
};

struct GammaProduct {
    std::vector<Rational> alpha;
};

struct BetaProduct {
    std::vector<Rational> a;
    std::vector<Rational> b;
};

struct Atom {
    std::vector<Rational> x;
    Rational w;
};

struct AtomicMeasure {
    std::vector<Atom> atoms;
};

struct MomentTable {
    int max_degree = 0;
    std::map<MultiIndex, Rational, CanonicalLess> values;
};

/// A normalized state phi on the polynomial algebra, phi(1) = 1.
///
/// The three product providers are the probability versions of the classical
/// weights e^{-|x|^2}, x^alpha e^{-|x|_1} and prod (1-x_j)^{a_j}(1+x_j)^{b_j};
/// mass_factor() recovers the total mass of the unnormalized weight.
class MomentFunctional
{
public:
    using provider_type = std::variant<GaussianProduct, GammaProduct, BetaProduct, AtomicMeasure, MomentTable>;

    static MomentFunctional gaussian_product(std::size_t d)
    {
        check_dim(d);
        return MomentFunctional(d, GaussianProduct{});
    }

    static MomentFunctional gamma_product(std::vector<Rational> alpha)
    {
        check_dim(alpha.size());
        for (const auto& x : alpha) {
            check_gt_minus_one(x, "alpha");
        }
        const auto d = alpha.size();
        return MomentFunctional(d, GammaProduct{std::move(alpha)});
    }

    static MomentFunctional beta_product(std::vector<Rational> a, std::vector<Rational> b)
    {
        check_dim(a.size());
        if (a.size() != b.size()) {
            throw error(errc::dimension_mismatch, "a and b have different lengths");
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            check_gt_minus_one(a[i], "a");
            check_gt_minus_one(b[i], "b");
        }
        const auto d = a.size();
        return MomentFunctional(d, BetaProduct{std::move(a), std::move(b)});
    }

    static MomentFunctional atomic(std::size_t d, std::vector<Atom> atoms)
    {
        check_dim(d);
        if (atoms.empty()) {
            throw error(errc::invalid_input, "atomic measure needs at least one atom");
        }
        Rational total = 0;
        std::set<std::vector<Rational>> seen;
        for (const auto& atom : atoms) {
            if (atom.x.size() != d) {
                throw error(errc::dimension_mismatch, "atom coordinate count differs from d");
            }
            if (atom.w <= 0) {
                throw error(errc::invalid_input, "atom weights must be positive");
            }
            if (!seen.insert(atom.x).second) {
                throw error(errc::invalid_input, "atoms must be pairwise distinct");
            }
            total += atom.w;
        }
        if (total != 1) {
            throw error(errc::invalid_input, "atom weights sum to " + total.get_str() + ", expected 1");
        }
        return MomentFunctional(d, AtomicMeasure{std::move(atoms)});
    }

    static MomentFunctional table(std::size_t d, MomentTable t)
    {
        check_dim(d);
        if (t.max_degree < 0) {
            throw error(errc::invalid_input, "max_degree must be non-negative");
        }
        for (const auto& [beta, v] : t.values) {
            if (beta.dim() != d) {
                throw error(errc::dimension_mismatch, "moment table entry " + beta.str() + " has wrong length");
            }
            if (beta.degree() > t.max_degree) {
                throw error(errc::invalid_input, "moment table entry " + beta.str() + " exceeds max_degree");
            }
        }
        auto it = t.values.find(MultiIndex(d));
        if (it == t.values.end() || it->second != 1) {
            throw error(errc::not_a_state, "moment table must have phi(1) = 1");
        }
        return MomentFunctional(d, std::move(t));
    }

    std::size_t dim() const noexcept { return m_d; }
    const provider_type& provider() const noexcept { return m_provider; }

    /// Highest total degree for which moments are available; nullopt means unbounded.
    std::optional<int> max_degree() const
    {
        if (const auto* t = std::get_if<MomentTable>(&m_provider)) {
            return t->max_degree;
        }
        return std::nullopt;
    }

    bool has_mass_factor() const
    {
        return std::holds_alternative<GaussianProduct>(m_provider) ||
               std::holds_alternative<GammaProduct>(m_provider) || std::holds_alternative<BetaProduct>(m_provider);
    }

    /// phi(x^beta)
    Rational moment(const MultiIndex& beta) const
    {
        if (beta.dim() != m_d) {
            throw error(errc::dimension_mismatch, "moment index has wrong length");
        }
        return std::visit([&](const auto& p) { return moment_of(p, beta); }, m_provider);
    }

    /// phi(p q); coefficients are real so no conjugation is needed.
    Rational inner_product(const Polynomial<Rational>& p, const Polynomial<Rational>& q) const
    {
        if (p.dim() != m_d || q.dim() != m_d) {
            throw error(errc::dimension_mismatch, "polynomial dimension differs from functional");
        }
        Rational s = 0;
        for (const auto& [a, ca] : p.terms()) {
            for (const auto& [b, cb] : q.terms()) {
                s += ca * cb * moment(a + b);
            }
        }
        return s;
    }

    /// Total mass of the unnormalized classical weight.
    ///   Hermite:  pi^{d/2}
    ///   Laguerre: prod Gamma(alpha_j + 1)
    ///   Jacobi:   prod 2^{a_j+b_j+1} Gamma(a_j+1) Gamma(b_j+1) / Gamma(a_j+b_j+2)
    SymbolicReal mass_factor() const
    {
        if (std::holds_alternative<GaussianProduct>(m_provider)) {
            return SymbolicReal::pi_power(ratio(static_cast<long>(m_d), 2));
        }
        if (const auto* g = std::get_if<GammaProduct>(&m_provider)) {
            SymbolicReal m(1);
            for (const auto& al : g->alpha) {
                m *= SymbolicReal::gamma(al + 1);
            }
            return m;
        }
        if (const auto* bp = std::get_if<BetaProduct>(&m_provider)) {
            SymbolicReal m(1);
            for (std::size_t j = 0; j < m_d; ++j) {
                const Rational& a = bp->a[j];
                const Rational& b = bp->b[j];
                m *= SymbolicReal::two_power(a + b + 1) * SymbolicReal::gamma(a + 1) * SymbolicReal::gamma(b + 1) /
                     SymbolicReal::gamma(a + b + 2);
            }
            return m;
        }
        throw error(errc::no_mass_factor, "atomic and tabulated functionals carry no weight mass");
    }

    std::string describe() const
    {
        struct Describer {
            std::string operator()(const GaussianProduct&) const { return "gaussian_product"; }
            std::string operator()(const GammaProduct&) const { return "gamma_product"; }
            std::string operator()(const BetaProduct&) const { return "beta_product"; }
            std::string operator()(const AtomicMeasure& a) const
            {
                return "atomic(" + std::to_string(a.atoms.size()) + " atoms)";
            }
            std::string operator()(const MomentTable&) const { return "table"; }
        };
        return std::visit(Describer{}, m_provider);
    }

private:
    MomentFunctional(std::size_t d, provider_type p) : m_d(d), m_provider(std::move(p)) {}

    static void check_dim(std::size_t d)
    {
        if (d == 0) {
            throw error(errc::invalid_dimension, "d must be at least 1");
        }
    }

    static void check_gt_minus_one(const Rational& x, const char* name)
    {
        if (x <= -1) {
            throw error(errc::parameter_out_of_range, std::string(name) + " = " + x.get_str() + " must exceed -1");
        }
    }

    static Rational moment_of(const GaussianProduct&, const MultiIndex& beta)
    {
        Rational m = 1;
        for (int e : beta.entries()) {
            m *= gaussian_moment_1d(e);
        }
        return m;
    }

    static Rational moment_of(const GammaProduct& g, const MultiIndex& beta)
    {
        Rational m = 1;
        for (std::size_t i = 0; i < beta.dim(); ++i) {
            m *= gamma_moment_1d(g.alpha[i], beta[i]);
        }
        return m;
    }

    static Rational moment_of(const BetaProduct& bp, const MultiIndex& beta)
    {
        Rational m = 1;
        for (std::size_t i = 0; i < beta.dim(); ++i) {
            m *= beta_moments_1d(bp.a[i], bp.b[i], beta[i]).back();
        }
        return m;
    }

    static Rational moment_of(const AtomicMeasure& a, const MultiIndex& beta)
    {
        Rational m = 0;
        for (const auto& atom : a.atoms) {
            Rational v = atom.w;
            for (std::size_t i = 0; i < beta.dim(); ++i) {
                v *= power(atom.x[i], beta[i]);
            }
            m += v;
        }
        return m;
    }

    static Rational moment_of(const MomentTable& t, const MultiIndex& beta)
    {
        if (beta.degree() > t.max_degree) {
            throw error(errc::insufficient_moments, "moment " + beta.str() + " beyond table max_degree " +
                                                        std::to_string(t.max_degree));
        }
        auto it = t.values.find(beta);
        if (it == t.values.end()) {
            throw error(errc::insufficient_moments, "moment " + beta.str() + " missing from table");
        }
        return it->second;
    }

    std::size_t m_d;
    provider_type m_provider;
};

} // namespace jacobi_mv

#endif
