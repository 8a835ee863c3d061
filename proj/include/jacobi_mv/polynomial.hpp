#ifndef JACOBI_MV_POLYNOMIAL_HPP
#define JACOBI_MV_POLYNOMIAL_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/multiindex.hpp>
#include <jacobi_mv/rational.hpp>

namespace jacobi_mv
{

/// Degree reported for the zero polynomial.
inline constexpr int zero_polynomial_degree = std::numeric_limits<int>::min();

/// Sparse polynomial in d commuting real variables X_0..X_{d-1}.
/// Terms are kept in canonical monomial order and zero coefficients are never stored.
template <typename T = Rational>
class Polynomial
{
public:
    using term_map = std::map<MultiIndex, T, CanonicalLess>;

    Polynomial() = default;
    explicit Polynomial(std::size_t d) : m_d(d)
    {
        if (d == 0) {
            throw error(errc::invalid_dimension, "d must be at least 1");
        }
    }

    static Polynomial constant(std::size_t d, const T& c)
    {
        Polynomial p(d);
        p.add_term(MultiIndex(d), c);
        return p;
    }

    static Polynomial monomial(const MultiIndex& beta, const T& c = T(1))
    {
        Polynomial p(beta.dim());
        p.add_term(beta, c);
        return p;
    }

    /// X_j (0-based coordinate).
    static Polynomial variable(std::size_t d, std::size_t j)
    {
        check_index(d, j);
        return monomial(MultiIndex(d).raised(j));
    }

    std::size_t dim() const noexcept { return m_d; }
    const term_map& terms() const noexcept { return m_terms; }
    bool is_zero() const noexcept { return m_terms.empty(); }

    int degree() const { return m_terms.empty() ? zero_polynomial_degree : m_terms.rbegin()->first.degree(); }

    T coefficient(const MultiIndex& beta) const
    {
        auto it = m_terms.find(beta);
        return it == m_terms.end() ? T(0) : it->second;
    }

    void add_term(const MultiIndex& beta, const T& c)
    {
        if (beta.dim() != m_d) {
            throw error(errc::dimension_mismatch, "monomial dimension differs from polynomial dimension");
        }
        if (c == 0) {
            return;
        }
        auto [it, inserted] = m_terms.emplace(beta, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    Polynomial& operator+=(const Polynomial& q)
    {
        check_same(q);
        for (const auto& [beta, c] : q.m_terms) {
            add_term(beta, c);
        }
        return *this;
    }

    Polynomial& operator-=(const Polynomial& q)
    {
        check_same(q);
        for (const auto& [beta, c] : q.m_terms) {
            add_term(beta, T(-c));
        }
        return *this;
    }

    Polynomial& operator*=(const T& s)
    {
        if (s == 0) {
            m_terms.clear();
            return *this;
        }
        for (auto& [beta, c] : m_terms) {
            c *= s;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
    friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
    friend Polynomial operator*(Polynomial p, const T& s) { return p *= s; }
    friend Polynomial operator*(const T& s, Polynomial p) { return p *= s; }

    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }

    friend bool operator==(const Polynomial& p, const Polynomial& q)
    {
        return p.m_d == q.m_d && p.m_terms == q.m_terms;
    }

    std::string str() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::string s;
        for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
            if (!s.empty()) {
                s += " + ";
            }
            s += scalar_traits<T>::to_string(it->second);
            for (std::size_t i = 0; i < m_d; ++i) {
                if (it->first[i] > 0) {
                    s += "*x" + std::to_string(i + 1);
                    if (it->first[i] > 1) {
                        s += "^" + std::to_string(it->first[i]);
                    }
                }
            }
        }
        return s;
    }

    static void check_index(std::size_t d, std::size_t j)
    {
        if (j >= d) {
            throw error(errc::invalid_index,
                        "variable index " + std::to_string(j) + " outside 0.." + std::to_string(d - 1));
        }
    }

private:
    void check_same(const Polynomial& q) const
    {
        if (q.m_d != m_d) {
            throw error(errc::dimension_mismatch, "polynomials live in different dimensions");
        }
    }

    std::size_t m_d = 0;
    term_map m_terms;

    template <typename U>
    friend Polynomial<U> mul(const Polynomial<U>&, const Polynomial<U>&);
};

template <typename T>
Polynomial<T> mul(const Polynomial<T>& p, const Polynomial<T>& q)
{
    if (p.dim() != q.dim()) {
        throw error(errc::dimension_mismatch, "polynomials live in different dimensions");
    }
    Polynomial<T> out(p.dim());
    for (const auto& [a, ca] : p.terms()) {
        for (const auto& [b, cb] : q.terms()) {
            out.add_term(a + b, ca * cb);
        }
    }
    return out;
}

/// X_j * p (0-based j).
template <typename T>
Polynomial<T> mul_by_variable(const Polynomial<T>& p, std::size_t j)
{
    Polynomial<T>::check_index(p.dim(), j);
    Polynomial<T> out(p.dim());
    for (const auto& [beta, c] : p.terms()) {
        out.add_term(beta.raised(j), c);
    }
    return out;
}

template <typename T>
T evaluate(const Polynomial<T>& p, std::span<const T> x)
{
    if (x.size() != p.dim()) {
        throw error(errc::dimension_mismatch, "evaluation point has wrong length");
    }
    T sum = 0;
    for (const auto& [beta, c] : p.terms()) {
        T term = c;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (int k = 0; k < beta[i]; ++k) {
                term *= x[i];
            }
        }
        sum += term;
    }
    return sum;
}

/// d/dX_i p
template <typename T>
Polynomial<T> derivative(const Polynomial<T>& p, std::size_t i)
{
    Polynomial<T>::check_index(p.dim(), i);
    Polynomial<T> out(p.dim());
    for (const auto& [beta, c] : p.terms()) {
        if (beta[i] > 0) {
            out.add_term(beta.raised(i, -1), T(c * beta[i]));
        }
    }
    return out;
}

/// Exponent vectors of total degree <= n, graded canonical order; size binomial(n+d, d).
inline std::vector<MultiIndex> monomial_basis(std::size_t d, int n)
{
    std::vector<MultiIndex> out;
    for (int k = 0; k <= n; ++k) {
        auto slice = degree_slice(d, k);
        out.insert(out.end(), slice.begin(), slice.end());
    }
    return out;
}

/// Position lookup for the graded monomial basis up to a fixed degree.
class MonomialIndexer
{
public:
    MonomialIndexer(std::size_t d, int max_degree) : m_d(d), m_max_degree(max_degree)
    {
        m_offsets.push_back(0);
        for (int k = 0; k <= max_degree; ++k) {
            auto slice = degree_slice(d, k);
            m_monomials.insert(m_monomials.end(), slice.begin(), slice.end());
            m_offsets.push_back(m_monomials.size());
        }
        for (std::size_t i = 0; i < m_monomials.size(); ++i) {
            m_index.emplace(m_monomials[i], i);
        }
    }

    std::size_t d() const noexcept { return m_d; }
    int max_degree() const noexcept { return m_max_degree; }
    std::size_t size() const noexcept { return m_monomials.size(); }
    const MultiIndex& operator[](std::size_t i) const { return m_monomials[i]; }

    /// Range [begin, end) of positions holding degree k.
    std::size_t slice_begin(int k) const { return m_offsets.at(static_cast<std::size_t>(k)); }
    std::size_t slice_end(int k) const { return m_offsets.at(static_cast<std::size_t>(k) + 1); }
    std::size_t slice_size(int k) const { return slice_end(k) - slice_begin(k); }

    std::size_t index_of(const MultiIndex& beta) const
    {
        auto it = m_index.find(beta);
        if (it == m_index.end()) {
            throw error(errc::invalid_index, "monomial " + beta.str() + " beyond indexed degree");
        }
        return it->second;
    }

    template <typename T>
    std::vector<T> dense(const Polynomial<T>& p) const
    {
        std::vector<T> v(size(), T(0));
        for (const auto& [beta, c] : p.terms()) {
            v[index_of(beta)] = c;
        }
        return v;
    }

    template <typename T>
    Polynomial<T> sparse(std::span<const T> v) const
    {
        Polynomial<T> p(m_d);
        for (std::size_t i = 0; i < v.size(); ++i) {
            p.add_term(m_monomials[i], v[i]);
        }
        return p;
    }

private:
    std::size_t m_d;
    int m_max_degree;
    std::vector<MultiIndex> m_monomials;
    std::vector<std::size_t> m_offsets;
    std::map<MultiIndex, std::size_t, CanonicalLess> m_index;
};

} // namespace jacobi_mv

#endif
