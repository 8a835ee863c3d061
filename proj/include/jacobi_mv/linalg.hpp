#ifndef JACOBI_MV_LINALG_HPP
#define JACOBI_MV_LINALG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/rational.hpp>

namespace jacobi_mv
{

/// Dense row-major matrix over a field.
template <typename T = Rational>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const noexcept { return m_rows; }
    std::size_t cols() const noexcept { return m_cols; }

    T& operator()(std::size_t i, std::size_t j) { return m_data[i * m_cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return m_data[i * m_cols + j]; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> v(m_rows);
        for (std::size_t i = 0; i < m_rows; ++i) {
            v[i] = (*this)(i, j);
        }
        return v;
    }

    void set_column(std::size_t j, const std::vector<T>& v)
    {
        for (std::size_t i = 0; i < m_rows; ++i) {
            (*this)(i, j) = v[i];
        }
    }

    Matrix transpose() const
    {
        Matrix t(m_cols, m_rows);
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    bool is_zero() const
    {
        for (const auto& x : m_data) {
            if (x != 0) {
                return false;
            }
        }
        return true;
    }

    bool is_square() const noexcept { return m_rows == m_cols; }

    bool is_symmetric() const
    {
        if (!is_square()) {
            return false;
        }
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = i + 1; j < m_cols; ++j) {
                if ((*this)(i, j) != (*this)(j, i)) {
                    return false;
                }
            }
        }
        return true;
    }

    bool is_diagonal() const
    {
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                if (i != j && (*this)(i, j) != 0) {
                    return false;
                }
            }
        }
        return true;
    }

    Matrix& operator+=(const Matrix& b)
    {
        check_shape(b);
        for (std::size_t k = 0; k < m_data.size(); ++k) {
            m_data[k] += b.m_data[k];
        }
        return *this;
    }

    Matrix& operator-=(const Matrix& b)
    {
        check_shape(b);
        for (std::size_t k = 0; k < m_data.size(); ++k) {
            m_data[k] -= b.m_data[k];
        }
        return *this;
    }

    Matrix& operator*=(const T& s)
    {
        for (auto& x : m_data) {
            x *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.m_cols != b.m_rows) {
            throw error(errc::dimension_mismatch, "matrix product shape mismatch");
        }
        Matrix c(a.m_rows, b.m_cols);
        for (std::size_t i = 0; i < a.m_rows; ++i) {
            for (std::size_t k = 0; k < a.m_cols; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.m_cols; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x)
    {
        if (a.m_cols != x.size()) {
            throw error(errc::dimension_mismatch, "matrix-vector shape mismatch");
        }
        std::vector<T> y(a.m_rows, T(0));
        for (std::size_t i = 0; i < a.m_rows; ++i) {
            for (std::size_t k = 0; k < a.m_cols; ++k) {
                y[i] += a(i, k) * x[k];
            }
        }
        return y;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.m_rows == b.m_rows && a.m_cols == b.m_cols && a.m_data == b.m_data;
    }

private:
    void check_shape(const Matrix& b) const
    {
        if (b.m_rows != m_rows || b.m_cols != m_cols) {
            throw error(errc::dimension_mismatch, "matrix shapes differ");
        }
    }

    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<T> m_data;
};

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b)
{
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

/// Symmetric rank-revealing LDL^T with diagonal pivoting.
///
/// For a positive semidefinite input every accepted pivot is positive and the
/// Schur complement left after the last pivot vanishes identically. Any
/// negative pivot, or a zero diagonal with a nonzero row, certifies that the
/// matrix is not PSD. In exact arithmetic all zero tests are decided exactly.
template <typename T = Rational>
class SymmetricFactorization
{
public:
    explicit SymmetricFactorization(const Matrix<T>& g) : m_matrix(g)
    {
        if (!g.is_square()) {
            throw error(errc::dimension_mismatch, "symmetric factorization needs a square matrix");
        }
        const std::size_t n = g.rows();
        T scale = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const T m = scalar_traits<T>::magnitude(g(i, i));
            if (m > scale) {
                scale = m;
            }
        }
        m_scale = scale;

        Matrix<T> s = g;
        std::vector<bool> used(n, false);
        while (true) {
            std::optional<std::size_t> pivot;
            for (std::size_t i = 0; i < n; ++i) {
                if (used[i]) {
                    continue;
                }
                const int sg = scalar_traits<T>::sign(s(i, i), scale);
                if (sg < 0) {
                    m_psd = false;
                    if (!m_witness) {
                        m_witness = "negative pivot at index " + std::to_string(i);
                    }
                }
                if (sg != 0 && !pivot) {
                    pivot = i;
                }
                if constexpr (!scalar_traits<T>::exact) {
                    if (sg != 0 && pivot && scalar_traits<T>::magnitude(s(i, i)) >
                                                scalar_traits<T>::magnitude(s(*pivot, *pivot))) {
                        pivot = i;
                    }
                }
            }
            if (!pivot) {
                break;
            }
            const std::size_t p = *pivot;
            used[p] = true;
            m_pivots.push_back(p);
            m_diagonal.push_back(s(p, p));
            for (std::size_t i = 0; i < n; ++i) {
                if (used[i] || s(i, p) == 0) {
                    continue;
                }
                const T f = s(i, p) / s(p, p);
                for (std::size_t j = 0; j < n; ++j) {
                    if (!used[j]) {
                        s(i, j) -= f * s(p, j);
                    }
                }
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (!used[j]) {
                    s(p, j) = 0;
                }
            }
        }
        for (std::size_t i = 0; i < n && m_psd; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!used[i] && !used[j] && !scalar_traits<T>::is_zero(s(i, j), scale)) {
                    m_psd = false;
                    m_witness = "zero diagonal with nonzero off-diagonal at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")";
                    break;
                }
            }
        }
        if (!m_psd) {
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!used[i]) {
                m_free.push_back(i);
            }
        }
    }

    bool is_psd() const noexcept { return m_psd; }
    std::size_t rank() const noexcept { return m_pivots.size(); }
    std::size_t size() const noexcept { return m_matrix.rows(); }
    const std::vector<std::size_t>& pivots() const noexcept { return m_pivots; }
    const std::vector<std::size_t>& free_indices() const noexcept { return m_free; }
    const std::vector<T>& pivot_values() const noexcept { return m_diagonal; }
    const std::optional<std::string>& witness() const noexcept { return m_witness; }

    /// Basic solution of G X = B: unknowns on free (null) directions are set to
    /// zero and the pivot block is solved exactly. Returns nullopt when B is not
    /// in the range of G.
    std::optional<Matrix<T>> solve(const Matrix<T>& b) const
    {
        const std::size_t n = m_matrix.rows();
        if (b.rows() != n) {
            throw error(errc::dimension_mismatch, "right-hand side has wrong row count");
        }
        const std::size_t r = m_pivots.size();
        Matrix<T> aug(r, r + b.cols());
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                aug(i, j) = m_matrix(m_pivots[i], m_pivots[j]);
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                aug(i, r + j) = b(m_pivots[i], j);
            }
        }
        // Gauss-Jordan on the (positive definite) pivot block.
        for (std::size_t c = 0; c < r; ++c) {
            std::size_t p = c;
            for (std::size_t i = c; i < r; ++i) {
                if (scalar_traits<T>::magnitude(aug(i, c)) > scalar_traits<T>::magnitude(aug(p, c))) {
                    p = i;
                    if constexpr (scalar_traits<T>::exact) {
                        break;
                    }
                }
            }
            if (aug(p, c) == 0) {
                throw error(errc::internal_consistency, "pivot block of a PSD factorization is singular");
            }
            if (p != c) {
                for (std::size_t j = 0; j < aug.cols(); ++j) {
                    std::swap(aug(p, j), aug(c, j));
                }
            }
            const T inv = T(1) / aug(c, c);
            for (std::size_t j = c; j < aug.cols(); ++j) {
                aug(c, j) *= inv;
            }
            for (std::size_t i = 0; i < r; ++i) {
                if (i == c || aug(i, c) == 0) {
                    continue;
                }
                const T f = aug(i, c);
                for (std::size_t j = c; j < aug.cols(); ++j) {
                    aug(i, j) -= f * aug(c, j);
                }
            }
        }
        Matrix<T> x(n, b.cols());
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                x(m_pivots[i], j) = aug(i, r + j);
            }
        }
        const Matrix<T> check = m_matrix * x;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                T scale = scalar_traits<T>::magnitude(b(i, j));
                if (m_scale > scale) {
                    scale = m_scale;
                }
                if (!scalar_traits<T>::is_zero(T(check(i, j) - b(i, j)), scale)) {
                    return std::nullopt;
                }
            }
        }
        return x;
    }

    std::optional<std::vector<T>> solve(const std::vector<T>& b) const
    {
        Matrix<T> bm(b.size(), 1);
        bm.set_column(0, b);
        auto x = solve(bm);
        if (!x) {
            return std::nullopt;
        }
        return x->column(0);
    }

private:
    Matrix<T> m_matrix;
    T m_scale = 0;
    bool m_psd = true;
    std::optional<std::string> m_witness;
    std::vector<std::size_t> m_pivots;
    std::vector<std::size_t> m_free;
    std::vector<T> m_diagonal;
};

/// Rank of an arbitrary matrix by Gaussian elimination (exact for Rational).
template <typename T>
std::size_t rank(Matrix<T> a)
{
    std::size_t r = 0;
    T scale = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const T m = scalar_traits<T>::magnitude(a(i, j));
            if (m > scale) {
                scale = m;
            }
        }
    }
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        for (std::size_t i = r; i < a.rows(); ++i) {
            if (scalar_traits<T>::magnitude(a(i, c)) > scalar_traits<T>::magnitude(a(p, c))) {
                p = i;
            }
        }
        if (scalar_traits<T>::is_zero(a(p, c), scale)) {
            continue;
        }
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::swap(a(p, j), a(r, j));
        }
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) {
                continue;
            }
            const T f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) {
                a(i, j) -= f * a(r, j);
            }
        }
        ++r;
    }
    return r;
}

/// Basis of {x : A x = 0} from the reduced row echelon form.
template <typename T>
std::vector<std::vector<T>> null_space(Matrix<T> a)
{
    T scale = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const T m = scalar_traits<T>::magnitude(a(i, j));
            if (m > scale) {
                scale = m;
            }
        }
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        for (std::size_t i = r; i < a.rows(); ++i) {
            if (scalar_traits<T>::magnitude(a(i, c)) > scalar_traits<T>::magnitude(a(p, c))) {
                p = i;
            }
        }
        if (scalar_traits<T>::is_zero(a(p, c), scale)) {
            continue;
        }
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::swap(a(p, j), a(r, j));
        }
        const T inv = T(1) / a(r, c);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            a(r, j) *= inv;
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) {
                continue;
            }
            const T f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) {
                a(i, j) -= f * a(r, j);
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<std::vector<T>> basis;
    std::size_t next_pivot = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == c) {
            ++next_pivot;
            continue;
        }
        std::vector<T> v(a.cols(), T(0));
        v[c] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            v[pivot_cols[i]] = -a(i, c);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace jacobi_mv

#endif
