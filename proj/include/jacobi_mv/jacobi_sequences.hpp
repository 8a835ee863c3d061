#ifndef JACOBI_MV_JACOBI_SEQUENCES_HPP
#define JACOBI_MV_JACOBI_SEQUENCES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <jacobi_mv/cap_operators.hpp>
#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/linalg.hpp>
#include <jacobi_mv/moments.hpp>
#include <jacobi_mv/multiindex.hpp>
#include <jacobi_mv/orthodecomp.hpp>

namespace jacobi_mv
{

/// The Jacobi sequences (Omega_n, alpha_{e_j|n}) over class bases.
///
/// omega(n) is indexed by enumerate_classes(d, n) (occupation vectors in
/// canonical order). alpha(j, n) is available for n < alpha_levels(); a pair
/// built by compute_omega carries no alpha at all. Omega is normalized so
/// that omega(0) = [1].
template <typename T = Rational>
class JacobiSequencePair
{
public:
    JacobiSequencePair(std::size_t d, std::vector<Matrix<T>> omega, std::vector<std::vector<Matrix<T>>> alpha)
        : m_d(d), m_omega(std::move(omega)), m_alpha(std::move(alpha))
    {
        if (d == 0) {
            throw error(errc::invalid_dimension, "d must be at least 1");
        }
        if (m_omega.empty()) {
            throw error(errc::invalid_input, "need at least Omega_0");
        }
        for (std::size_t n = 0; n < m_omega.size(); ++n) {
            const std::size_t k = slice_dimension(d, static_cast<int>(n));
            if (m_omega[n].rows() != k || m_omega[n].cols() != k) {
                throw error(errc::dimension_mismatch, "Omega_" + std::to_string(n) + " must be " +
                                                          std::to_string(k) + "x" + std::to_string(k));
            }
        }
        if (!m_alpha.empty() && m_alpha.size() != d) {
            throw error(errc::dimension_mismatch, "alpha needs one sequence per coordinate");
        }
        for (const auto& seq : m_alpha) {
            if (seq.size() != m_alpha.front().size() || seq.size() > m_omega.size()) {
                throw error(errc::dimension_mismatch, "alpha sequences have inconsistent lengths");
            }
            for (std::size_t n = 0; n < seq.size(); ++n) {
                if (seq[n].rows() != m_omega[n].rows() || seq[n].cols() != m_omega[n].cols()) {
                    throw error(errc::dimension_mismatch, "alpha at level " + std::to_string(n) +
                                                              " does not match Omega");
                }
            }
        }
    }

    std::size_t dim() const noexcept { return m_d; }
    int max_level() const noexcept { return static_cast<int>(m_omega.size()) - 1; }
    int alpha_levels() const noexcept { return m_alpha.empty() ? 0 : static_cast<int>(m_alpha.front().size()); }

    ClassBasis classes(int n) const { return enumerate_classes(m_d, n); }

    const Matrix<T>& omega(int n) const
    {
        if (n < 0 || n > max_level()) {
            throw error(errc::insufficient_depth, "Omega_" + std::to_string(n) + " not computed (max level " +
                                                      std::to_string(max_level()) + ")");
        }
        return m_omega[static_cast<std::size_t>(n)];
    }

    const Matrix<T>& alpha(std::size_t j, int n) const
    {
        if (j >= m_d) {
            throw error(errc::invalid_index, "coordinate " + std::to_string(j) + " outside 0.." +
                                                 std::to_string(m_d - 1));
        }
        if (n < 0 || n >= alpha_levels()) {
            throw error(errc::insufficient_depth, "alpha at level " + std::to_string(n) + " not computed");
        }
        return m_alpha[j][static_cast<std::size_t>(n)];
    }

    /// alpha_{v|n} = sum_j v_j alpha_{e_j|n}.
    Matrix<T> alpha_v(const std::vector<T>& v, int n) const
    {
        if (v.size() != m_d) {
            throw error(errc::dimension_mismatch, "direction vector has wrong length");
        }
        Matrix<T> out = alpha(0, n) * v[0];
        for (std::size_t j = 1; j < m_d; ++j) {
            out += alpha(j, n) * v[j];
        }
        return out;
    }

    /// Symmetry and positivity of every Omega_n, Omega-weighted symmetry of
    /// alpha, and persistence of a vanishing Omega.
    CheckReport validate() const
    {
        CheckReport report;
        std::optional<int> vanished;
        for (int n = 0; n <= max_level(); ++n) {
            const auto& om = omega(n);
            ++report.checks;
            if (!detail::matrices_equal(om, om.transpose())) {
                report.fail("Omega_" + std::to_string(n) + " is not symmetric");
                continue;
            }
            ++report.checks;
            if (SymmetricFactorization<T> f(om); !f.is_psd()) {
                report.fail("Omega_" + std::to_string(n) + " is not positive semidefinite: " + f.witness().value_or(""));
            }
            ++report.checks;
            if (vanished && !om.is_zero()) {
                report.fail("Omega_" + std::to_string(*vanished) + " = 0 but Omega_" + std::to_string(n) + " != 0");
            }
            if (!vanished && om.is_zero()) {
                vanished = n;
            }
            if (n < alpha_levels()) {
                for (std::size_t j = 0; j < m_d; ++j) {
                    ++report.checks;
                    const Matrix<T> w = om * alpha(j, n);
                    if (!detail::matrices_equal(w, w.transpose())) {
                        report.fail("Omega_n alpha is not symmetric at n=" + std::to_string(n) + ", j=" +
                                    std::to_string(j + 1));
                    }
                }
            }
        }
        return report;
    }

private:
    std::size_t m_d;
    std::vector<Matrix<T>> m_omega;
    std::vector<std::vector<Matrix<T>>> m_alpha;
};

namespace detail
{

/// Creation chains U_n e_class as coordinate vectors over the degree-n basis,
/// one column per class. Built by applying the creator of the largest
/// occupied coordinate; the smallest-coordinate route is checked to agree
/// modulo null vectors.
template <typename T>
std::vector<Matrix<T>> creation_chains(const CapOperatorSet<T>& ops, int max_level)
{
    const auto& b = ops.basis();
    const std::size_t d = ops.dim();
    std::vector<Matrix<T>> chains;
    Matrix<T> u0(1, 1);
    u0(0, 0) = T(1) / b.leading_coefficient(0, 0);
    chains.push_back(u0);
    for (int n = 1; n <= max_level; ++n) {
        const ClassBasis prev(d, n - 1);
        const auto classes = enumerate_classes(d, n);
        Matrix<T> u(b.size(n), classes.size());
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const auto& beta = classes[c];
            std::size_t lo = d;
            std::size_t hi = 0;
            for (std::size_t j = 0; j < d; ++j) {
                if (beta[j] > 0) {
                    lo = std::min(lo, j);
                    hi = j;
                }
            }
            auto from = [&](std::size_t j) {
                const auto src = chains.back().column(prev.index_of(beta.raised(j, -1)));
                return ops.plus(j, n - 1) * src;
            };
            const auto main = from(hi);
            if (lo != hi) {
                auto diff = from(lo);
                for (std::size_t i = 0; i < diff.size(); ++i) {
                    diff[i] -= main[i];
                }
                if (!b.is_null(n, diff)) {
                    throw error(errc::internal_consistency, "creation chains for class " + beta.str() +
                                                                " depend on the order of creators");
                }
            }
            u.set_column(c, main);
        }
        chains.push_back(std::move(u));
    }
    return chains;
}

} // namespace detail

/// Omega_n = U_n^T G_n U_n for n = 0..max_level; needs creators up to level
/// max_level - 1.
template <typename T>
JacobiSequencePair<T> compute_omega(const CapOperatorSet<T>& ops, int max_level)
{
    if (max_level < 0) {
        throw error(errc::invalid_index, "max_level must be non-negative");
    }
    if (max_level > ops.top_level() + 1) {
        throw error(errc::insufficient_depth, "Omega up to level " + std::to_string(max_level) +
                                                  " needs a basis of degree " + std::to_string(max_level) +
                                                  ", have " + std::to_string(ops.basis().max_degree()));
    }
    const auto chains = detail::creation_chains(ops, max_level);
    std::vector<Matrix<T>> omega;
    for (int n = 0; n <= max_level; ++n) {
        const auto& u = chains[static_cast<std::size_t>(n)];
        omega.push_back(u.transpose() * (ops.basis().gram(n) * u));
    }
    return JacobiSequencePair<T>(ops.dim(), std::move(omega), {});
}

/// Omega_n for n = 0..max_level and alpha_{e_j|n} = U_n^{-1} a0_{j|n} U_n for
/// n = 0..alpha_max_level (default max_level). alpha is the basic solution of
/// Omega_n X = U_n^T G_n a0 U_n: rows on null directions of Omega_n are zero.
template <typename T>
JacobiSequencePair<T> compute(const CapOperatorSet<T>& ops, int max_level, std::optional<int> alpha_max_level = {})
{
    const int alpha_top = alpha_max_level.value_or(max_level);
    if (max_level < 0 || alpha_top < 0 || alpha_top > max_level) {
        throw error(errc::invalid_index, "need 0 <= alpha_max_level <= max_level");
    }
    if (alpha_top > ops.top_level() || max_level > ops.top_level() + 1) {
        throw error(errc::insufficient_depth, "sequences up to level " + std::to_string(max_level) +
                                                  " need a basis of degree " +
                                                  std::to_string(std::max(alpha_top + 1, max_level)) +
                                                  ", have " + std::to_string(ops.basis().max_degree()));
    }
    const auto& b = ops.basis();
    const auto chains = detail::creation_chains(ops, max_level);
    std::vector<Matrix<T>> omega;
    std::vector<std::vector<Matrix<T>>> alpha(ops.dim());
    for (int n = 0; n <= max_level; ++n) {
        const auto& u = chains[static_cast<std::size_t>(n)];
        const Matrix<T> gu = b.gram(n) * u;
        const Matrix<T> ut_g = gu.transpose();
        omega.push_back(ut_g * u);
        if (n > alpha_top) {
            continue;
        }
        const SymmetricFactorization<T> factor(omega.back());
        for (std::size_t j = 0; j < ops.dim(); ++j) {
            const Matrix<T> image = ops.zero(j, n) * u;
            auto a = factor.solve(ut_g * image);
            if (!a) {
                throw error(errc::representation_error, "a0 image at level " + std::to_string(n) + ", j=" +
                                                            std::to_string(j + 1) +
                                                            " is not in the span of the creation chains");
            }
            const Matrix<T> residual = image - u * *a;
            for (std::size_t c = 0; c < residual.cols(); ++c) {
                if (!b.is_null(n, residual.column(c))) {
                    throw error(errc::representation_error, "a0 image at level " + std::to_string(n) + ", j=" +
                                                                std::to_string(j + 1) +
                                                                " leaves a residual of positive norm");
                }
            }
            alpha[j].push_back(std::move(*a));
        }
    }
    return JacobiSequencePair<T>(ops.dim(), std::move(omega), std::move(alpha));
}

struct RankEntry {
    int n;
    std::size_t rank;
    std::size_t dim;
};

struct RankProfile {
    std::vector<RankEntry> levels;
    /// First level whose Omega is not injective, if any.
    std::optional<int> first_deficient;
    /// Once deficient, every later level is deficient as well.
    bool propagation_holds = true;
};

template <typename T>
RankProfile rank_profile(const JacobiSequencePair<T>& seq)
{
    RankProfile profile;
    for (int n = 0; n <= seq.max_level(); ++n) {
        const auto& om = seq.omega(n);
        const RankEntry e{n, SymmetricFactorization<T>(om).rank(), om.rows()};
        if (e.rank < e.dim && !profile.first_deficient) {
            profile.first_deficient = n;
        }
        if (profile.first_deficient && e.rank == e.dim) {
            profile.propagation_holds = false;
        }
        profile.levels.push_back(e);
    }
    return profile;
}

/// ker Omega_{n-1}, mapped into level n by appending any e_j, lies in
/// ker Omega_n.
template <typename T>
CheckReport verify_kernel_inclusion(const JacobiSequencePair<T>& seq)
{
    CheckReport report;
    const std::size_t d = seq.dim();
    for (int n = 1; n <= seq.max_level(); ++n) {
        const auto kernel = null_space(seq.omega(n - 1));
        const auto prev = seq.classes(n - 1);
        const ClassBasis cur(d, n);
        for (const auto& eta : kernel) {
            for (std::size_t j = 0; j < d; ++j) {
                ++report.checks;
                std::vector<T> lifted(cur.size(), T(0));
                for (std::size_t i = 0; i < eta.size(); ++i) {
                    lifted[cur.index_of(prev[i].raised(j))] += eta[i];
                }
                const auto img = seq.omega(n) * lifted;
                for (const auto& x : img) {
                    if (!scalar_traits<T>::is_zero(x)) {
                        report.fail("a null vector at level " + std::to_string(n - 1) + " times e_" +
                                    std::to_string(j + 1) + " has positive norm");
                        break;
                    }
                }
            }
        }
    }
    return report;
}

struct AtomDetection {
    /// Smallest n0 >= 1 with Omega_{n0} = 0; empty when none up to searched_to.
    std::optional<int> n0;
    /// binomial(n0 - 1 + d, d), an upper bound on the number of atoms.
    std::optional<Integer> atom_bound;
    int searched_to = 0;

    bool conclusive() const noexcept { return n0.has_value(); }
};

/// Looks for the first vanishing Omega_n, n = 1..max_level. Omega_n = 0 means
/// the functional is atomic with at most dim P_{n-1]} atoms.
inline AtomDetection detect_atoms(const MomentFunctional& f, int max_level)
{
    if (max_level < 1) {
        throw error(errc::invalid_index, "max_level must be at least 1");
    }
    const auto ops = build_cap_operators(decompose<Rational>(f, max_level));
    const auto seq = compute_omega(ops, max_level);
    AtomDetection out;
    out.searched_to = max_level;
    for (int n = 1; n <= max_level; ++n) {
        if (seq.omega(n).is_zero()) {
            out.n0 = n;
            out.atom_bound = binomial(static_cast<unsigned long>(n - 1) + f.dim(), f.dim());
            break;
        }
    }
    return out;
}

namespace detail
{

/// The interacting Fock representation defined by a pair of Jacobi sequences.
template <typename T>
class FockModel
{
public:
    explicit FockModel(const JacobiSequencePair<T>& seq) : m_seq(seq)
    {
        for (int n = 0; n <= seq.max_level(); ++n) {
            m_classes.emplace_back(seq.dim(), n);
        }
    }

    using State = std::vector<std::vector<T>>;

    /// (A+_j + alpha_j + A-_j) applied to xi, keeping levels <= keep.
    State apply(std::size_t j, const State& xi, int keep)
    {
        State out(static_cast<std::size_t>(keep) + 1);
        for (int n = 0; n <= keep; ++n) {
            out[static_cast<std::size_t>(n)].assign(m_classes[static_cast<std::size_t>(n)].size(), T(0));
        }
        auto add = [&](int level, const std::vector<T>& v) {
            auto& dst = out[static_cast<std::size_t>(level)];
            for (std::size_t i = 0; i < v.size(); ++i) {
                dst[i] += v[i];
            }
        };
        for (int n = 0; n < static_cast<int>(xi.size()); ++n) {
            const auto& v = xi[static_cast<std::size_t>(n)];
            bool any = false;
            for (const auto& x : v) {
                any = any || x != 0;
            }
            if (!any) {
                continue;
            }
            if (n + 1 <= keep) {
                if (n + 1 > m_seq.max_level()) {
                    throw error(errc::insufficient_depth, "operator chain reaches level " + std::to_string(n + 1) +
                                                              " beyond max level " +
                                                              std::to_string(m_seq.max_level()));
                }
                const auto& cur = m_classes[static_cast<std::size_t>(n)];
                const auto& up = m_classes[static_cast<std::size_t>(n) + 1];
                std::vector<T> w(up.size(), T(0));
                for (std::size_t i = 0; i < v.size(); ++i) {
                    w[up.index_of(cur.classes()[i].raised(j))] += v[i];
                }
                add(n + 1, w);
            }
            if (n <= keep) {
                add(n, m_seq.alpha(j, n) * v);
            }
            if (n >= 1 && n - 1 <= keep) {
                add(n - 1, annihilator(j, n) * v);
            }
        }
        return out;
    }

private:
    /// A-_j from level n: Omega_{n-1} X = (A+_j from n-1)^T Omega_n.
    const Matrix<T>& annihilator(std::size_t j, int n)
    {
        const auto key = std::make_pair(j, n);
        if (auto it = m_minus.find(key); it != m_minus.end()) {
            return it->second;
        }
        const auto& low = m_classes[static_cast<std::size_t>(n) - 1];
        const auto& high = m_classes[static_cast<std::size_t>(n)];
        Matrix<T> up(high.size(), low.size());
        for (std::size_t i = 0; i < low.size(); ++i) {
            up(high.index_of(low.classes()[i].raised(j)), i) = 1;
        }
        const SymmetricFactorization<T> factor(m_seq.omega(n - 1));
        auto x = factor.solve(up.transpose() * m_seq.omega(n));
        if (!x) {
            throw error(errc::representation_error, "annihilator from level " + std::to_string(n) +
                                                        " is not defined: the null space of Omega_" +
                                                        std::to_string(n - 1) + " is not inherited");
        }
        return m_minus.emplace(key, std::move(*x)).first->second;
    }

    const JacobiSequencePair<T>& m_seq;
    std::vector<ClassBasis> m_classes;
    std::map<std::pair<std::size_t, int>, Matrix<T>> m_minus;
};

} // namespace detail

/// <Phi, prod_j X_j^{beta_j} Phi> in the Fock representation built from the
/// sequences alone, X_j = A+_j + alpha_j + A-_j. Levels above |beta|/2 never
/// contribute and are truncated, so the pair must reach level |beta|/2.
template <typename T>
T reconstruct_moment(const JacobiSequencePair<T>& seq, const MultiIndex& beta)
{
    if (beta.dim() != seq.dim()) {
        throw error(errc::dimension_mismatch, "moment index has dimension " + std::to_string(beta.dim()) +
                                                  ", sequences have " + std::to_string(seq.dim()));
    }
    const int steps = beta.degree();
    const int peak = steps / 2;
    if (peak > seq.max_level() || (steps > 0 && (steps - 1) / 2 >= seq.alpha_levels())) {
        throw error(errc::insufficient_depth, "moment of degree " + std::to_string(steps) +
                                                  " needs sequences to level " + std::to_string(peak));
    }
    detail::FockModel<T> model(seq);
    typename detail::FockModel<T>::State xi{std::vector<T>{T(1)}};
    int remaining = steps;
    for (std::size_t j = seq.dim(); j-- > 0;) {
        for (int r = 0; r < beta[j]; ++r) {
            --remaining;
            xi = model.apply(j, xi, std::min(remaining, peak));
        }
    }
    return seq.omega(0)(0, 0) * xi[0][0];
}

} // namespace jacobi_mv

#endif
