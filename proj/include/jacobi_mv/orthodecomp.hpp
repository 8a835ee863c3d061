#ifndef JACOBI_MV_ORTHODECOMP_HPP
#define JACOBI_MV_ORTHODECOMP_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/linalg.hpp>
#include <jacobi_mv/moments.hpp>
#include <jacobi_mv/multiindex.hpp>
#include <jacobi_mv/polynomial.hpp>
#include <jacobi_mv/rational.hpp>

namespace jacobi_mv
{

/// The phi-orthogonal graded decomposition P_{N]} = P_0 + P_1 + ... + P_N.
///
/// Degree n carries one basis polynomial per degree-n monomial; its only
/// degree-n term is a nonzero multiple of that monomial (the "label").
/// Basis polynomials of one degree are orthogonal to every lower degree but
/// not to each other; their pairwise inner products form gram(n), which may be
/// singular for degenerate functionals. Zero-norm vectors are kept and flagged.
///
/// Polynomials are stored densely over the graded monomial basis up to degree
/// N, so inner products reduce to the moment matrix H[a][b] = phi(x^{a+b}).
template <typename T = Rational>
class GradedOrthogonalBasis
{
public:
    using vector_type = std::vector<T>;

    std::size_t dim() const noexcept { return m_indexer.d(); }
    int max_degree() const noexcept { return m_indexer.max_degree(); }
    const MonomialIndexer& indexer() const noexcept { return m_indexer; }
    const Matrix<T>& moment_matrix() const noexcept { return m_moments; }

    std::size_t size(int n) const { return level(n).polys.size(); }
    const vector_type& dense(int n, std::size_t i) const { return level(n).polys.at(i); }
    const T& leading_coefficient(int n, std::size_t i) const { return level(n).leading.at(i); }
    const MultiIndex& label(int n, std::size_t i) const { return m_indexer[m_indexer.slice_begin(n) + i]; }
    const Matrix<T>& gram(int n) const { return level(n).gram; }
    const SymmetricFactorization<T>& factorization(int n) const { return level(n).factor; }
    std::size_t rank(int n) const { return level(n).factor.rank(); }

    std::vector<bool> null_mask(int n) const
    {
        const auto& g = gram(n);
        std::vector<bool> mask(g.rows());
        for (std::size_t i = 0; i < g.rows(); ++i) {
            mask[i] = g(i, i) == 0;
        }
        return mask;
    }

    Polynomial<T> polynomial(int n, std::size_t i) const
    {
        const auto& v = dense(n, i);
        return m_indexer.sparse(std::span<const T>(v));
    }

    /// <u, v> = u^T H v for dense coefficient vectors.
    T inner(const vector_type& u, const vector_type& v) const { return dot(u, apply_moments(v)); }

    vector_type apply_moments(const vector_type& v) const
    {
        vector_type out(v.size(), T(0));
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (v[b] == 0) {
                continue;
            }
            for (std::size_t a = 0; a < v.size(); ++a) {
                out[a] += m_moments(a, b) * v[b];
            }
        }
        return out;
    }

    /// Coordinates of f in the direct sum: result[k] holds the coefficients of
    /// the degree-k basis polynomials. This is exact triangular back substitution;
    /// the degree-k part is an orthogonal projection of f onto P_k.
    std::vector<vector_type> expand(vector_type f) const
    {
        if (f.size() != m_indexer.size()) {
            throw error(errc::dimension_mismatch, "dense polynomial has wrong length");
        }
        std::vector<vector_type> coords(static_cast<std::size_t>(max_degree()) + 1);
        for (int n = max_degree(); n >= 0; --n) {
            const auto& lv = level(n);
            auto& c = coords[static_cast<std::size_t>(n)];
            c.assign(lv.polys.size(), T(0));
            const std::size_t begin = m_indexer.slice_begin(n);
            for (std::size_t i = 0; i < lv.polys.size(); ++i) {
                const T top = f[begin + i];
                if (top == 0) {
                    continue;
                }
                c[i] = top / lv.leading[i];
                const auto& p = lv.polys[i];
                for (std::size_t a = 0; a < f.size(); ++a) {
                    if (p[a] != 0) {
                        f[a] -= c[i] * p[a];
                    }
                }
                if constexpr (!scalar_traits<T>::exact) {
                    f[begin + i] = 0;
                }
            }
        }
        if constexpr (scalar_traits<T>::exact) {
            for (const auto& x : f) {
                if (x != 0) {
                    throw error(errc::internal_consistency, "basis does not span the polynomial space");
                }
            }
        }
        return coords;
    }

    /// Dense polynomial sum_i c_i p_i over degree n.
    vector_type combine(int n, const vector_type& c) const
    {
        const auto& lv = level(n);
        vector_type out(m_indexer.size(), T(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) {
                continue;
            }
            for (std::size_t a = 0; a < out.size(); ++a) {
                out[a] += c[i] * lv.polys[i][a];
            }
        }
        return out;
    }

    /// The P_n component of p.
    Polynomial<T> project(const Polynomial<T>& p, int n) const
    {
        if (n < 0 || n > max_degree()) {
            throw error(errc::invalid_index, "projection degree " + std::to_string(n) + " outside 0.." +
                                                 std::to_string(max_degree()));
        }
        if (p.dim() != dim()) {
            throw error(errc::dimension_mismatch, "polynomial dimension differs from basis");
        }
        if (p.degree() > max_degree()) {
            throw error(errc::invalid_index, "polynomial degree exceeds basis max_degree");
        }
        const auto coords = expand(m_indexer.dense(p));
        const auto v = combine(n, coords[static_cast<std::size_t>(n)]);
        return m_indexer.sparse(std::span<const T>(v));
    }

    /// True when sum_i c_i p_i (degree n) has zero norm, i.e. gram(n) c = 0.
    bool is_null(int n, const vector_type& c) const
    {
        const auto g = gram(n) * c;
        T scale = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const T m = scalar_traits<T>::magnitude(gram(n)(i, i));
            if (m > scale) {
                scale = m;
            }
        }
        for (const auto& x : g) {
            if (!scalar_traits<T>::is_zero(x, scale)) {
                return false;
            }
        }
        return true;
    }

    const std::string& source() const noexcept { return m_source; }

    template <typename U>
    friend GradedOrthogonalBasis<U> decompose(const MomentFunctional&, int);
    template <typename U>
    friend GradedOrthogonalBasis<U> basis_from_polynomials(const MomentFunctional&,
                                                           const std::vector<std::vector<Polynomial<U>>>&);
    template <typename U>
    friend GradedOrthogonalBasis<U> rescaled(const GradedOrthogonalBasis<U>&, const std::vector<std::vector<U>>&);

private:
    struct Level {
        std::vector<vector_type> polys;
        std::vector<T> leading;
        Matrix<T> gram;
        SymmetricFactorization<T> factor{Matrix<T>()};
    };

    GradedOrthogonalBasis(const MomentFunctional& f, int max_degree)
        : m_indexer(f.dim(), max_degree), m_source(f.describe())
    {
        if (max_degree < 0) {
            throw error(errc::invalid_index, "max_degree must be non-negative");
        }
        if (auto avail = f.max_degree(); avail && *avail < 2 * max_degree) {
            throw error(errc::insufficient_moments, "need moments to degree " + std::to_string(2 * max_degree) +
                                                        ", table provides " + std::to_string(*avail));
        }
        const std::size_t k = m_indexer.size();
        m_moments = Matrix<T>(k, k);
        std::map<MultiIndex, T, CanonicalLess> cache;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a; b < k; ++b) {
                const MultiIndex e = m_indexer[a] + m_indexer[b];
                auto it = cache.find(e);
                if (it == cache.end()) {
                    it = cache.emplace(e, scalar_traits<T>::from_rational(f.moment(e))).first;
                }
                m_moments(a, b) = it->second;
                m_moments(b, a) = it->second;
            }
        }
        m_levels.resize(static_cast<std::size_t>(max_degree) + 1);
    }

    const Level& level(int n) const
    {
        if (n < 0 || n > max_degree()) {
            throw error(errc::invalid_index, "degree " + std::to_string(n) + " outside basis range 0.." +
                                                 std::to_string(max_degree()));
        }
        return m_levels[static_cast<std::size_t>(n)];
    }

    /// Fills gram and factorization of degree n from its polynomials.
    void finish_level(int n, std::vector<vector_type>& images)
    {
        auto& lv = m_levels[static_cast<std::size_t>(n)];
        const std::size_t m = lv.polys.size();
        images.clear();
        for (const auto& p : lv.polys) {
            images.push_back(apply_moments(p));
        }
        lv.gram = Matrix<T>(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i; j < m; ++j) {
                lv.gram(i, j) = dot(lv.polys[i], images[j]);
                lv.gram(j, i) = lv.gram(i, j);
            }
        }
        lv.factor = SymmetricFactorization<T>(lv.gram);
        if (!lv.factor.is_psd()) {
            throw error(errc::not_a_state, "Gram matrix at degree " + std::to_string(n) +
                                               " is not positive semidefinite (" + lv.factor.witness().value_or("") +
                                               "); the input is not a moment sequence");
        }
    }

    MonomialIndexer m_indexer;
    Matrix<T> m_moments;
    std::vector<Level> m_levels;
    std::vector<std::vector<vector_type>> m_images;
    std::string m_source;
};

/// Degreewise Gram-Schmidt against lower degrees: each degree-n monomial minus
/// its projection onto P_{n-1]}. Rank-deficient Grams use the basic solution
/// of the normal equations (null directions set to zero).
template <typename T = Rational>
GradedOrthogonalBasis<T> decompose(const MomentFunctional& f, int max_degree)
{
    GradedOrthogonalBasis<T> basis(f, max_degree);
    const auto& idx = basis.m_indexer;
    const std::size_t k = idx.size();
    basis.m_images.resize(static_cast<std::size_t>(max_degree) + 1);

    for (int n = 0; n <= max_degree; ++n) {
        auto& lv = basis.m_levels[static_cast<std::size_t>(n)];
        for (std::size_t q = idx.slice_begin(n); q < idx.slice_end(n); ++q) {
            typename GradedOrthogonalBasis<T>::vector_type v(k, T(0));
            v[q] = 1;
            for (int lower = 0; lower < n; ++lower) {
                const auto& images = basis.m_images[static_cast<std::size_t>(lower)];
                const auto& low = basis.m_levels[static_cast<std::size_t>(lower)];
                std::vector<T> rhs(images.size());
                for (std::size_t g = 0; g < images.size(); ++g) {
                    rhs[g] = images[g][q];
                }
                const auto c = low.factor.solve(rhs);
                if (!c) {
                    throw error(errc::not_a_state, "normal equations inconsistent at degree " +
                                                       std::to_string(lower) + "; the input is not a moment sequence");
                }
                for (std::size_t g = 0; g < c->size(); ++g) {
                    if ((*c)[g] == 0) {
                        continue;
                    }
                    for (std::size_t a = 0; a < k; ++a) {
                        v[a] -= (*c)[g] * low.polys[g][a];
                    }
                }
            }
            lv.polys.push_back(std::move(v));
            lv.leading.push_back(T(1));
        }
        basis.finish_level(n, basis.m_images[static_cast<std::size_t>(n)]);
    }
    return basis;
}

/// Builds the decomposition from caller-supplied polynomials, e.g. a classical
/// family. polys[n] must hold one polynomial per degree-n monomial, each with a
/// single degree-n term; cross-degree orthogonality is checked exactly.
template <typename T = Rational>
GradedOrthogonalBasis<T> basis_from_polynomials(const MomentFunctional& f,
                                                const std::vector<std::vector<Polynomial<T>>>& polys)
{
    if (polys.empty()) {
        throw error(errc::invalid_input, "need at least the degree-0 polynomial");
    }
    const int max_degree = static_cast<int>(polys.size()) - 1;
    GradedOrthogonalBasis<T> basis(f, max_degree);
    const auto& idx = basis.m_indexer;
    basis.m_images.resize(polys.size());

    for (int n = 0; n <= max_degree; ++n) {
        auto& lv = basis.m_levels[static_cast<std::size_t>(n)];
        const std::size_t want = idx.slice_size(n);
        const auto& given = polys[static_cast<std::size_t>(n)];
        if (given.size() != want) {
            throw error(errc::invalid_input, "degree " + std::to_string(n) + " needs " + std::to_string(want) +
                                                 " polynomials");
        }
        lv.polys.assign(want, {});
        lv.leading.assign(want, T(0));
        std::vector<bool> filled(want, false);
        for (const auto& p : given) {
            if (p.degree() != n) {
                throw error(errc::invalid_input, "polynomial " + p.str() + " is not of degree " + std::to_string(n));
            }
            std::optional<MultiIndex> lead;
            for (const auto& [beta, c] : p.terms()) {
                if (beta.degree() == n) {
                    if (lead) {
                        throw error(errc::invalid_input, "polynomial " + p.str() + " has several top-degree terms");
                    }
                    lead = beta;
                }
            }
            const std::size_t slot = idx.index_of(*lead) - idx.slice_begin(n);
            if (filled[slot]) {
                throw error(errc::invalid_input, "two polynomials share the leading monomial " + lead->str());
            }
            filled[slot] = true;
            lv.polys[slot] = idx.dense(p);
            lv.leading[slot] = p.coefficient(*lead);
        }
        basis.finish_level(n, basis.m_images[static_cast<std::size_t>(n)]);
        for (int lower = 0; lower < n; ++lower) {
            for (const auto& img : basis.m_images[static_cast<std::size_t>(lower)]) {
                for (const auto& p : lv.polys) {
                    if (!scalar_traits<T>::is_zero(dot(p, img))) {
                        throw error(errc::invalid_input, "supplied polynomials of degree " + std::to_string(n) +
                                                             " are not orthogonal to degree " + std::to_string(lower));
                    }
                }
            }
        }
    }
    return basis;
}

/// Same spaces, each basis polynomial multiplied by a nonzero scalar.
template <typename T = Rational>
GradedOrthogonalBasis<T> rescaled(const GradedOrthogonalBasis<T>& basis, const std::vector<std::vector<T>>& scales)
{
    if (scales.size() != static_cast<std::size_t>(basis.max_degree()) + 1) {
        throw error(errc::dimension_mismatch, "one scale vector per degree is required");
    }
    GradedOrthogonalBasis<T> out = basis;
    for (int n = 0; n <= basis.max_degree(); ++n) {
        auto& lv = out.m_levels[static_cast<std::size_t>(n)];
        const auto& s = scales[static_cast<std::size_t>(n)];
        if (s.size() != lv.polys.size()) {
            throw error(errc::dimension_mismatch, "scale vector has wrong length at degree " + std::to_string(n));
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == 0) {
                throw error(errc::invalid_input, "rescaling factors must be nonzero");
            }
            for (auto& x : lv.polys[i]) {
                x *= s[i];
            }
            lv.leading[i] *= s[i];
        }
        out.finish_level(n, out.m_images[static_cast<std::size_t>(n)]);
    }
    return out;
}

} // namespace jacobi_mv

#endif
