#ifndef JACOBI_MV_CAP_OPERATORS_HPP
#define JACOBI_MV_CAP_OPERATORS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <jacobi_mv/detail/parallel.hpp>
#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/linalg.hpp>
#include <jacobi_mv/orthodecomp.hpp>

namespace jacobi_mv
{

/// Outcome of an identity check. Failures carry a human-readable witness.
struct CheckReport {
    bool passed = true;
    std::size_t checks = 0;
    std::string witness;

    void fail(std::string why)
    {
        if (passed) {
            witness = std::move(why);
        }
        passed = false;
    }
};

enum class cap_kind { plus, zero, minus };

inline std::string to_string(cap_kind k)
{
    switch (k) {
    case cap_kind::plus:
        return "plus";
    case cap_kind::zero:
        return "zero";
    case cap_kind::minus:
        return "minus";
    }
    return "?";
}

/// Level blocks of the creation, preservation and annihilation operators.
///
/// Matrices act on coordinate vectors over the degree-n basis of the
/// underlying GradedOrthogonalBasis (columns) and return coordinates at
/// degree n+1, n, n-1 (rows). Blocks exist for levels 0..top_level(), where
/// top_level() = basis.max_degree() - 1. Coordinate j is 0-based.
template <typename T = Rational>
class CapOperatorSet
{
public:
    const GradedOrthogonalBasis<T>& basis() const noexcept { return m_basis; }
    std::size_t dim() const noexcept { return m_basis.dim(); }
    int top_level() const noexcept { return m_basis.max_degree() - 1; }

    const Matrix<T>& plus(std::size_t j, int n) const { return block(cap_kind::plus, j, n); }
    const Matrix<T>& zero(std::size_t j, int n) const { return block(cap_kind::zero, j, n); }
    const Matrix<T>& minus(std::size_t j, int n) const { return block(cap_kind::minus, j, n); }

    const Matrix<T>& block(cap_kind k, std::size_t j, int n) const
    {
        check(j, n, k);
        return m_blocks[static_cast<std::size_t>(k)][j][static_cast<std::size_t>(n)];
    }

    /// a^eps_{v|n} = sum_j v_j a^eps_{j|n}.
    Matrix<T> combination(cap_kind k, const std::vector<T>& v, int n) const
    {
        if (v.size() != dim()) {
            throw error(errc::dimension_mismatch, "direction vector has wrong length");
        }
        Matrix<T> out = block(k, 0, n) * v[0];
        for (std::size_t j = 1; j < dim(); ++j) {
            out += block(k, j, n) * v[j];
        }
        return out;
    }

    /// True when every X_j p had no component outside degrees n-1..n+1.
    /// False means such components existed but had zero norm (degenerate
    /// functionals only).
    bool jacobi_relation_exact() const noexcept { return m_exact; }

    /// Copy with one entry replaced; used for negative controls.
    CapOperatorSet with_entry(cap_kind k, std::size_t j, int n, std::size_t r, std::size_t c, const T& value) const
    {
        CapOperatorSet out = *this;
        auto& m = out.m_blocks[static_cast<std::size_t>(k)].at(j).at(static_cast<std::size_t>(n));
        if (r >= m.rows() || c >= m.cols()) {
            throw error(errc::invalid_index, "entry outside block");
        }
        m(r, c) = value;
        return out;
    }

    template <typename U>
    friend CapOperatorSet<U> build_cap_operators(const GradedOrthogonalBasis<U>&);

private:
    explicit CapOperatorSet(const GradedOrthogonalBasis<T>& b) : m_basis(b) {}

    void check(std::size_t j, int n, cap_kind k) const
    {
        if (j >= dim()) {
            throw error(errc::invalid_index, "coordinate " + std::to_string(j) + " outside 0.." +
                                                 std::to_string(dim() - 1));
        }
        if (n < 0) {
            throw error(errc::invalid_index, "negative level");
        }
        if (n > top_level()) {
            throw error(errc::insufficient_depth, to_string(k) + " block at level " + std::to_string(n) +
                                                      " needs a basis of degree " + std::to_string(n + 1) +
                                                      ", have " + std::to_string(m_basis.max_degree()));
        }
    }

    GradedOrthogonalBasis<T> m_basis;
    // m_blocks[kind][j][n]
    std::vector<std::vector<Matrix<T>>> m_blocks[3];
    bool m_exact = true;
};

namespace detail
{

template <typename T>
std::vector<T> times_variable(const MonomialIndexer& idx, const std::vector<T>& v, std::size_t j)
{
    std::vector<T> out(v.size(), T(0));
    for (std::size_t a = 0; a < v.size(); ++a) {
        if (v[a] != 0) {
            out[idx.index_of(idx[a].raised(j))] = v[a];
        }
    }
    return out;
}

} // namespace detail

/// Splits X_j p for every basis polynomial p of P_n into its P_{n+1}, P_n and
/// P_{n-1} parts. Components at any other degree must vanish (or have zero
/// norm); anything else is reported as an internal-consistency error.
template <typename T = Rational>
CapOperatorSet<T> build_cap_operators(const GradedOrthogonalBasis<T>& basis)
{
    CapOperatorSet<T> ops(basis);
    const std::size_t d = basis.dim();
    const int top = ops.top_level();
    if (top < 0) {
        throw error(errc::insufficient_depth, "operators need a basis of degree at least 1");
    }
    for (auto& kind : ops.m_blocks) {
        kind.assign(d, std::vector<Matrix<T>>(static_cast<std::size_t>(top) + 1));
    }
    std::vector<char> exact(d, 1);
    detail::parallel_for(d, [&](std::size_t j) {
        for (int n = 0; n <= top; ++n) {
            const std::size_t cols = basis.size(n);
            Matrix<T> plus(basis.size(n + 1), cols);
            Matrix<T> zero(cols, cols);
            Matrix<T> minus(n > 0 ? basis.size(n - 1) : 1, cols);
            for (std::size_t i = 0; i < cols; ++i) {
                const auto coords = basis.expand(detail::times_variable(basis.indexer(), basis.dense(n, i), j));
                for (int k = 0; k <= basis.max_degree(); ++k) {
                    const auto& c = coords[static_cast<std::size_t>(k)];
                    if (k == n + 1) {
                        plus.set_column(i, c);
                    } else if (k == n) {
                        zero.set_column(i, c);
                    } else if (k == n - 1) {
                        minus.set_column(i, c);
                    } else {
                        bool nonzero = false;
                        for (const auto& x : c) {
                            nonzero = nonzero || !scalar_traits<T>::is_zero(x);
                        }
                        if (!nonzero) {
                            continue;
                        }
                        if (!basis.is_null(k, c)) {
                            throw error(errc::internal_consistency,
                                        "x" + std::to_string(j + 1) + " * " + basis.label(n, i).str() +
                                            "-polynomial has a component of positive norm at degree " +
                                            std::to_string(k));
                        }
                        exact[j] = 0;
                    }
                }
            }
            const auto nn = static_cast<std::size_t>(n);
            ops.m_blocks[static_cast<std::size_t>(cap_kind::plus)][j][nn] = std::move(plus);
            ops.m_blocks[static_cast<std::size_t>(cap_kind::zero)][j][nn] = std::move(zero);
            ops.m_blocks[static_cast<std::size_t>(cap_kind::minus)][j][nn] = std::move(minus);
        }
    });
    for (char e : exact) {
        ops.m_exact = ops.m_exact && e != 0;
    }
    return ops;
}

/// X_j p = (a+ + a0 + a-) p for every basis vector p at every level. A
/// residual that is not the zero polynomial still passes when it has zero
/// norm, since the operators are only defined modulo null vectors.
template <typename T>
CheckReport verify_quantum_decomposition(const CapOperatorSet<T>& ops)
{
    CheckReport report;
    const auto& b = ops.basis();
    for (std::size_t j = 0; j < ops.dim(); ++j) {
        for (int n = 0; n <= ops.top_level(); ++n) {
            for (std::size_t i = 0; i < b.size(n); ++i) {
                auto r = detail::times_variable(b.indexer(), b.dense(n, i), j);
                auto subtract = [&](int level, const Matrix<T>& m) {
                    const auto v = b.combine(level, m.column(i));
                    for (std::size_t a = 0; a < r.size(); ++a) {
                        r[a] -= v[a];
                    }
                };
                subtract(n + 1, ops.plus(j, n));
                subtract(n, ops.zero(j, n));
                if (n > 0) {
                    subtract(n - 1, ops.minus(j, n));
                }
                ++report.checks;
                bool is_zero = true;
                for (const auto& x : r) {
                    is_zero = is_zero && scalar_traits<T>::is_zero(x);
                }
                if (is_zero) {
                    continue;
                }
                const T norm = b.inner(r, r);
                if (!scalar_traits<T>::is_zero(norm)) {
                    report.fail("x" + std::to_string(j + 1) + " applied to the degree-" + std::to_string(n) +
                                " basis polynomial labelled " + b.label(n, i).str() + " leaves residual " +
                                b.indexer().sparse(std::span<const T>(r)).str());
                }
            }
        }
    }
    return report;
}

namespace detail
{

template <typename T>
bool matrices_equal(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    T scale = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (const T& x : {a(i, j), b(i, j)}) {
                if (scalar_traits<T>::magnitude(x) > scale) {
                    scale = scalar_traits<T>::magnitude(x);
                }
            }
        }
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!scalar_traits<T>::is_zero(T(a(i, j) - b(i, j)), scale)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

/// Gram-weighted adjointness G_{n+1} a+_{j|n} = (a-_{j|n+1})^T G_n, symmetry
/// of G_n a0_{j|n}, and commutation of creators a+_{j|n+1} a+_{k|n} =
/// a+_{k|n+1} a+_{j|n} (compared after weighting by G_{n+2}).
template <typename T>
CheckReport verify_adjoints(const CapOperatorSet<T>& ops)
{
    CheckReport report;
    const auto& b = ops.basis();
    const std::size_t d = ops.dim();
    const int top = ops.top_level();
    for (std::size_t j = 0; j < d; ++j) {
        const std::string name = "j=" + std::to_string(j + 1);
        for (int n = 0; n <= top; ++n) {
            ++report.checks;
            const Matrix<T> weighted = b.gram(n) * ops.zero(j, n);
            if (!detail::matrices_equal(weighted, weighted.transpose())) {
                report.fail("G_n a0 not symmetric at n=" + std::to_string(n) + ", " + name);
            }
            if (n + 1 <= top) {
                ++report.checks;
                const Matrix<T> lhs = b.gram(n + 1) * ops.plus(j, n);
                const Matrix<T> rhs = ops.minus(j, n + 1).transpose() * b.gram(n);
                if (!detail::matrices_equal(lhs, rhs)) {
                    report.fail("a- is not the adjoint of a+ at n=" + std::to_string(n) + ", " + name);
                }
                for (std::size_t k = j + 1; k < d; ++k) {
                    ++report.checks;
                    const Matrix<T> diff = ops.plus(j, n + 1) * ops.plus(k, n) - ops.plus(k, n + 1) * ops.plus(j, n);
                    const Matrix<T> weighted_diff = b.gram(n + 2) * diff;
                    if (!detail::matrices_equal(weighted_diff, Matrix<T>(diff.rows(), diff.cols()))) {
                        report.fail("creators do not commute at n=" + std::to_string(n) + ", j=" +
                                    std::to_string(j + 1) + ", k=" + std::to_string(k + 1));
                    }
                }
            }
        }
    }
    return report;
}

} // namespace jacobi_mv

#endif
