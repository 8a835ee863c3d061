#ifndef JACOBI_MV_MULTIINDEX_HPP
#define JACOBI_MV_MULTIINDEX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/rational.hpp>

namespace jacobi_mv
{

/// A point of N^d: exponent vector of a monomial, or the occupation counts of a tuple.
class MultiIndex
{
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t d) : m_entries(d, 0) {}
    explicit MultiIndex(std::vector<int> entries) : m_entries(std::move(entries)) { validate(); }
    MultiIndex(std::initializer_list<int> entries) : m_entries(entries) { validate(); }

    std::size_t dim() const noexcept { return m_entries.size(); }
    int operator[](std::size_t i) const { return m_entries[i]; }
    const std::vector<int>& entries() const noexcept { return m_entries; }

    /// |beta|
    int degree() const { return std::accumulate(m_entries.begin(), m_entries.end(), 0); }

    /// beta + e_i (0-based slot)
    MultiIndex raised(std::size_t i, int by = 1) const
    {
        MultiIndex out = *this;
        out.m_entries.at(i) += by;
        out.validate();
        return out;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b)
    {
        if (a.dim() != b.dim()) {
            throw error(errc::dimension_mismatch, "multi-index dimensions differ");
        }
        MultiIndex out = a;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            out.m_entries[i] += b.m_entries[i];
        }
        return out;
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < m_entries.size(); ++i) {
            s += (i ? "," : "") + std::to_string(m_entries[i]);
        }
        return s + ")";
    }

private:
    void validate() const
    {
        for (int e : m_entries) {
            if (e < 0) {
                throw error(errc::out_of_lattice, "negative multi-index component");
            }
        }
    }

    std::vector<int> m_entries;
};

/// Occupation vector n-bar of an R-class: n_l counts how often l occurs in a tuple.
/// Same shape as an exponent vector; the two are interchangeable labels.
using OccupationVector = MultiIndex;

/// Canonical order: by degree, then graded reverse-lexicographic, so that
/// (n,0,...,0) comes first and (0,...,0,n) last within a degree.
inline bool canonical_less(const MultiIndex& a, const MultiIndex& b)
{
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) {
        return da < db;
    }
    for (std::size_t i = a.dim(); i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i];
        }
    }
    return false;
}

struct CanonicalLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return canonical_less(a, b); }
};

/// beta_{r_1,...,r_d}; throws out_of_lattice if a component goes negative.
inline MultiIndex shift(const MultiIndex& beta, std::span<const int> r)
{
    if (r.size() != beta.dim()) {
        throw error(errc::dimension_mismatch, "shift vector has wrong length");
    }
    std::vector<int> out(beta.dim());
    for (std::size_t i = 0; i < beta.dim(); ++i) {
        out[i] = beta[i] + r[i];
        if (out[i] < 0) {
            throw error(errc::out_of_lattice, "shifted index " + beta.str() + " leaves N^d");
        }
    }
    return MultiIndex(std::move(out));
}

inline MultiIndex shift(const MultiIndex& beta, std::initializer_list<int> r)
{
    return shift(beta, std::span<const int>(r.begin(), r.size()));
}

/// beta! = prod beta_i!
inline Integer factorial_of(const MultiIndex& beta)
{
    Integer out = 1;
    for (int e : beta.entries()) {
        out *= factorial(static_cast<unsigned long>(e));
    }
    return out;
}

/// Counts occurrences of each l in {1..d}. Indices are 1-based as in (i_1,...,i_n).
inline OccupationVector occupation(std::size_t d, std::span<const int> tuple)
{
    if (d == 0) {
        throw error(errc::invalid_dimension, "d must be at least 1");
    }
    std::vector<int> counts(d, 0);
    for (int i : tuple) {
        if (i < 1 || static_cast<std::size_t>(i) > d) {
            throw error(errc::invalid_index, "index " + std::to_string(i) + " outside 1.." + std::to_string(d));
        }
        ++counts[static_cast<std::size_t>(i - 1)];
    }
    return OccupationVector(std::move(counts));
}

inline OccupationVector occupation(std::size_t d, std::initializer_list<int> tuple)
{
    return occupation(d, std::span<const int>(tuple.begin(), tuple.size()));
}

/// Weakly increasing tuple representing the class n-bar, e.g. (2,0,1) -> (1,1,3).
inline std::vector<int> representative(const OccupationVector& nbar)
{
    std::vector<int> tuple;
    for (std::size_t l = 0; l < nbar.dim(); ++l) {
        tuple.insert(tuple.end(), static_cast<std::size_t>(nbar[l]), static_cast<int>(l + 1));
    }
    return tuple;
}

namespace detail
{
inline void compositions(std::size_t d, int n, std::size_t slot, std::vector<int>& cur,
                         std::vector<MultiIndex>& out)
{
    if (slot + 1 == d) {
        cur[slot] = n;
        out.emplace_back(cur);
        return;
    }
    for (int k = n; k >= 0; --k) {
        cur[slot] = k;
        compositions(d, n - k, slot + 1, cur, out);
    }
}
} // namespace detail

/// All exponent vectors of total degree exactly n, canonical order.
inline std::vector<MultiIndex> degree_slice(std::size_t d, int n)
{
    if (d == 0) {
        throw error(errc::invalid_dimension, "d must be at least 1");
    }
    if (n < 0) {
        return {};
    }
    std::vector<MultiIndex> out;
    std::vector<int> cur(d, 0);
    detail::compositions(d, n, 0, cur, out);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

/// The R-classes of {1..d}^n, labelled by occupation vectors; the index set of
/// the canonical basis of the n-th symmetric tensor power of C^d.
class ClassBasis
{
public:
    ClassBasis(std::size_t d, int n) : m_d(d), m_n(n), m_classes(degree_slice(d, n))
    {
        for (std::size_t i = 0; i < m_classes.size(); ++i) {
            m_index.emplace(m_classes[i], i);
        }
    }

    std::size_t d() const noexcept { return m_d; }
    int n() const noexcept { return m_n; }
    std::size_t size() const noexcept { return m_classes.size(); }
    const std::vector<OccupationVector>& classes() const noexcept { return m_classes; }
    const OccupationVector& operator[](std::size_t i) const { return m_classes[i]; }

    std::size_t index_of(const OccupationVector& nbar) const
    {
        auto it = m_index.find(nbar);
        if (it == m_index.end()) {
            throw error(errc::invalid_index, "class " + nbar.str() + " not in basis");
        }
        return it->second;
    }

private:
    std::size_t m_d;
    int m_n;
    std::vector<OccupationVector> m_classes;
    std::map<OccupationVector, std::size_t, CanonicalLess> m_index;
};

inline ClassBasis enumerate_classes(std::size_t d, int n)
{
    if (d == 0) {
        throw error(errc::invalid_dimension, "d must be at least 1");
    }
    if (n < 0) {
        throw error(errc::invalid_index, "n must be non-negative");
    }
    return ClassBasis(d, n);
}

/// dim of the degree-n slice: binomial(n+d-1, d-1)
inline std::size_t slice_dimension(std::size_t d, int n)
{
    return binomial(static_cast<unsigned long>(n) + d - 1, d - 1).get_ui();
}

} // namespace jacobi_mv

#endif
