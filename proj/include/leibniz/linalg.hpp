#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/errors.hpp"
#include "leibniz/prelude.hpp"

namespace leibniz {

/// Orthonormal basis of the numerical null space of m: columns v with
/// ||m v|| below eps_rank relative to the largest singular value. The zero
/// matrix yields the full space, a full-rank matrix an n x 0 result.
inline CMatrix kernel(const CMatrix& m, const Tolerance& tol = {}) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    double cutoff = sigma.size() > 0 ? tol.eps_rank * sigma(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cutoff) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

inline Eigen::Index numerical_rank(const CMatrix& m, const Tolerance& tol = {}) {
    return m.cols() - kernel(m, tol).cols();
}

/// Invertibility as a rank decision: smallest singular value above
/// eps_rank relative to the largest.
inline bool is_invertible(const CMatrix& m, const Tolerance& tol = {}) {
    if (m.rows() != m.cols() || m.size() == 0) return false;
    return numerical_rank(m, tol) == m.rows();
}

/// ||(m/s)^n|| with s = max(1, ||m||), the scale-invariant nilpotency defect.
inline double nilpotency_defect(const CMatrix& m) {
    require_square(m, "nilpotency_defect");
    const Eigen::Index n = m.rows();
    double s = m.norm();
    if (s == 0.0 || n == 0) return 0.0;
    CMatrix b = m / std::max(1.0, s);
    CMatrix p = b;
    for (Eigen::Index k = 1; k < n; ++k) p = p * b;
    return p.norm();
}

inline bool is_nilpotent_matrix(const CMatrix& m, const Tolerance& tol = {}) {
    return nilpotency_defect(m) <= tol.eps_residual;
}

/// Direct sum of characteristic subspaces of a square matrix: one clustered
/// eigenvalue per block, blocks invariant with orthonormal column bases.
struct CharDecomposition {
    std::vector<Complex> eigenvalues;
    std::vector<CMatrix> blocks;
    std::vector<int> multiplicities;
    double cluster_radius = 0.0;  // merge radius actually used

    std::size_t size() const { return eigenvalues.size(); }

    Eigen::Index dimension() const {
        return std::accumulate(multiplicities.begin(), multiplicities.end(), Eigen::Index{0});
    }

    /// Concatenation of all block bases; invertible by construction.
    CMatrix change_of_basis() const {
        CMatrix u(dimension(), dimension());
        Eigen::Index col = 0;
        for (const auto& b : blocks) {
            u.middleCols(col, b.cols()) = b;
            col += b.cols();
        }
        return u;
    }

    /// Index of the eigenvalue within `radius` of `value`, or -1 if none.
    int cluster_index(Complex value, double radius) const {
        int best = -1;
        double best_dist = radius;
        for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
            double d = std::abs(eigenvalues[i] - value);
            if (d <= best_dist) {
                best_dist = d;
                best = static_cast<int>(i);
            }
        }
        return best;
    }

    /// Smallest pairwise distance between clustered eigenvalues
    /// (infinity when there is a single cluster).
    double separation() const {
        double sep = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < eigenvalues.size(); ++i)
            for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
                sep = std::min(sep, std::abs(eigenvalues[i] - eigenvalues[j]));
        return sep;
    }
};

namespace detail {

/// Swap the diagonal entries at positions j, j+1 of the upper-triangular t by
/// a unitary similarity, accumulating it into u. Core step of Schur
/// reordering (the 1x1-block case of LAPACK's ztrexc).
inline void schur_swap(CMatrix& t, CMatrix& u, Eigen::Index j) {
    const Complex a = t(j, j), b = t(j, j + 1), c = t(j + 1, j + 1);
    Complex v0 = b, v1 = c - a;
    double nv = std::sqrt(std::norm(v0) + std::norm(v1));
    if (nv == 0.0) return;  // equal eigenvalues, already in either order
    v0 /= nv;
    v1 /= nv;
    CMatrix g(2, 2);
    g << v0, -std::conj(v1), v1, std::conj(v0);
    const Eigen::Index n = t.rows();
    t.block(0, j, n, 2) = t.block(0, j, n, 2) * g;
    t.block(j, 0, 2, n) = g.adjoint() * t.block(j, 0, 2, n);
    u.block(0, j, n, 2) = u.block(0, j, n, 2) * g;
    t(j + 1, j) = 0.0;
}

/// Orthonormal basis of the invariant subspace belonging to the selected
/// diagonal positions of a Schur form, obtained by bubbling them to the front.
inline CMatrix invariant_subspace(const CMatrix& t_in, const CMatrix& u_in,
                                  const std::vector<char>& selected) {
    CMatrix t = t_in, u = u_in;
    std::vector<char> sel = selected;
    const Eigen::Index n = t.rows();
    Eigen::Index target = 0;
    for (Eigen::Index p = 0; p < n; ++p) {
        if (!sel[p]) continue;
        for (Eigen::Index q = p; q > target; --q) {
            schur_swap(t, u, q - 1);
            std::swap(sel[q - 1], sel[q]);
        }
        ++target;
    }
    return u.leftCols(target);
}

/// Single-linkage components of the raw spectrum at the given radius.
inline std::vector<std::vector<int>> linkage_components(const std::vector<Complex>& values,
                                                        double radius) {
    const int n = static_cast<int>(values.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(values[i] - values[j]) <= radius) parent[find(i)] = find(j);
    std::vector<std::vector<int>> comps(n);
    for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);
    std::erase_if(comps, [](const auto& c) { return c.empty(); });
    return comps;
}

// Headroom for the per-eigenvalue resolution test of an all-singleton
// clustering: eigenvalue i is resolved when its perturbation scale
// eps * |m| * kappa_i stays this factor clear of the distance to its
// nearest neighbour. Genuinely simple eigenvalues pass even from an
// ill-conditioned eigenbasis; crystallized roundoff around a defective
// eigenvalue has kappa so large the uncertainty swallows the spacing.
inline constexpr double kEigConditionSlack = 4.0;

// Headroom over the noise-scatter law for merged clusters. Roundoff of size
// n*eps*scale scatters a defective eigenvalue of index k by roughly
// scale^(1-1/k) * (n*eps*scale)^(1/k); eigenvalues spread beyond a small
// multiple of that carry genuine spectral content and must not be averaged.
inline constexpr double kSpreadSlack = 4.0;

}  // namespace detail

/// Decomposition of C^n into characteristic subspaces of m.
///
/// Raw eigenvalues are merged when within eps_cluster of each other.
/// Defective eigenvalues scatter the computed spectrum far beyond
/// eps_cluster, so the merge radius is escalated geometrically and the
/// coarsest clustering that still reconstructs m as blockwise-scalar plus
/// nilpotent is returned; ClusterAmbiguity is raised when no radius
/// achieves that. Block bases are extracted from a reordered Schur form and
/// each clustered eigenvalue is refined as the trace of m restricted to its
/// block.
inline CharDecomposition generalized_eigenspaces(const CMatrix& m, const Tolerance& tol = {}) {
    require_square(m, "generalized_eigenspaces");
    if (!all_finite(m)) throw Error("generalized_eigenspaces: matrix has non-finite entries");
    const Eigen::Index n = m.rows();
    CharDecomposition result;
    if (n == 0) return result;

    Eigen::ComplexSchur<CMatrix> schur(m, true);
    if (schur.info() != Eigen::Success)
        throw Error("generalized_eigenspaces: Schur decomposition failed to converge");
    const CMatrix& t = schur.matrixT();
    const CMatrix& u = schur.matrixU();

    std::vector<Complex> raw(n);
    for (Eigen::Index i = 0; i < n; ++i) raw[i] = t(i, i);

    // Escalation ladder: partitions are formed at eps_cluster first, then at
    // geometrically growing radii; linkage partitions only coarsen as the
    // radius grows, so the first partition that passes its validity test is
    // also the finest valid one and is returned. An all-singleton partition
    // declares m diagonalizable — S is then mathematically m itself, so no
    // reconstruction is demanded of it; instead every eigenvalue must be
    // resolved, its perturbation scale small against its spacing. A
    // partition with merges is considered when its components are cliques at
    // the radius in force and no component spreads wider than roundoff could
    // scatter one defective eigenvalue of its size; it is accepted when the
    // blockwise scalar part S reconstructs m to tolerance: finite, commuting
    // with m, leaving a nilpotent residual. Rings of roundoff scatter around
    // a defective eigenvalue fail the resolution test — their uncertainty
    // swallows their spacing — and collapse into one cluster at a higher
    // rung, while honest spectra resolve or merge at the base rung before
    // escalation can average away genuine structure.
    std::vector<std::vector<int>> last_built;
    const double scale = std::max(1.0, m.norm());
    const double radius_cap = 2.0 * scale;
    double radius = tol.eps_cluster;
    for (;;) {
        auto comps = detail::linkage_components(raw, radius);
        for (auto& comp : comps) std::sort(comp.begin(), comp.end());
        std::sort(comps.begin(), comps.end());

        bool cliqued = true;
        for (const auto& comp : comps)
            for (std::size_t a = 0; a < comp.size() && cliqued; ++a)
                for (std::size_t b = a + 1; b < comp.size() && cliqued; ++b)
                    if (std::abs(raw[comp[a]] - raw[comp[b]]) > radius) cliqued = false;

        // Each merged cluster must look like one defective eigenvalue blurred
        // by roundoff: its members may not spread wider than the noise-scatter
        // law for a block of its size allows. Spreads within eps_cluster are
        // always admissible — eigenvalues that close are one cluster by
        // contract, noise law or not.
        bool within_noise = true;
        for (const auto& comp : comps) {
            const auto k = comp.size();
            if (k < 2) continue;
            Complex mean = 0.0;
            for (int idx : comp) mean += raw[idx];
            mean /= static_cast<double>(k);
            double spread = 0.0;
            for (int idx : comp) spread = std::max(spread, std::abs(raw[idx] - mean));
            const double noise =
                double(n) * std::numeric_limits<double>::epsilon() * scale;
            const double bound = detail::kSpreadSlack *
                                 std::pow(scale, 1.0 - 1.0 / double(k)) *
                                 std::pow(noise, 1.0 / double(k));
            if (spread > std::max(bound, tol.eps_cluster)) {
                within_noise = false;
                break;
            }
        }

        if (cliqued && within_noise && comps != last_built) {
            last_built = comps;

            CharDecomposition cand;
            cand.cluster_radius = radius;
            for (const auto& comp : comps) {
                std::vector<char> selected(n, 0);
                for (int idx : comp) selected[idx] = 1;
                CMatrix basis = detail::invariant_subspace(t, u, selected);
                Complex lambda = (basis.adjoint() * m * basis).trace() / double(comp.size());
                cand.eigenvalues.push_back(lambda);
                cand.blocks.push_back(std::move(basis));
                cand.multiplicities.push_back(static_cast<int>(comp.size()));
            }

            // Deterministic order.
            std::vector<std::size_t> order(cand.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                const Complex &x = cand.eigenvalues[a], &y = cand.eigenvalues[b];
                if (x.real() != y.real()) return x.real() < y.real();
                return x.imag() < y.imag();
            });
            CharDecomposition sorted;
            sorted.cluster_radius = radius;
            for (std::size_t idx : order) {
                sorted.eigenvalues.push_back(cand.eigenvalues[idx]);
                sorted.blocks.push_back(std::move(cand.blocks[idx]));
                sorted.multiplicities.push_back(cand.multiplicities[idx]);
            }

            CMatrix basis_all = sorted.change_of_basis();
            CMatrix binv = basis_all.partialPivLu().solve(CMatrix::Identity(n, n));
            bool ok = all_finite(binv);

            // Every singleton cluster claims one simple eigenvalue. Its basis
            // column is a unit eigenvector, so the matching row of binv has
            // norm kappa, the eigenvalue condition number; the claim holds
            // when the eigenvalue's perturbation scale is small against its
            // spacing to the other clusters. Crystallized roundoff around a
            // defective eigenvalue fails this: its uncertainty swallows the
            // spacing it pretends to have.
            Eigen::Index col = 0;
            for (std::size_t i = 0; i < sorted.size() && ok; ++i) {
                if (sorted.multiplicities[i] == 1) {
                    const double kappa = binv.row(col).norm();
                    double spacing = std::numeric_limits<double>::infinity();
                    for (std::size_t j = 0; j < sorted.size(); ++j)
                        if (j != i)
                            spacing = std::min(
                                spacing, std::abs(sorted.eigenvalues[i] - sorted.eigenvalues[j]));
                    if (detail::kEigConditionSlack * std::numeric_limits<double>::epsilon() *
                            scale * kappa >
                        spacing)
                        ok = false;
                }
                col += sorted.multiplicities[i];
            }

            // A partition with genuine merges must also reconstruct m: its
            // blockwise scalar part S comes out finite, commutes with m, and
            // leaves a nilpotent residual. An all-singleton partition claims
            // m is diagonalizable, and S is then mathematically m itself, so
            // the resolution test above is the whole of its evidence.
            const bool all_singleton = std::all_of(sorted.multiplicities.begin(),
                                                   sorted.multiplicities.end(),
                                                   [](int k) { return k == 1; });
            if (ok && !all_singleton) {
                CMatrix d = CMatrix::Zero(n, n);
                col = 0;
                for (std::size_t i = 0; i < sorted.size(); ++i) {
                    for (int r = 0; r < sorted.multiplicities[i]; ++r)
                        d(col + r, col + r) = sorted.eigenvalues[i];
                    col += sorted.multiplicities[i];
                }
                CMatrix s = basis_all * d * binv;
                ok = all_finite(s) &&
                     (m * s - s * m).norm() / (scale * std::max(1.0, s.norm())) <=
                         tol.eps_residual &&
                     nilpotency_defect(m - s) <= tol.eps_residual;
            }
            if (ok) return sorted;
        }

        if (radius >= radius_cap) break;
        radius = std::min(radius * 32.0, radius_cap);
    }
    throw ClusterAmbiguity(
        "generalized_eigenspaces: no clustering radius up to " + std::to_string(radius_cap) +
        " yields a valid direct-sum decomposition; spectrum is ill-separated at these "
        "tolerances");
}

/// Additive Jordan-Chevalley decomposition of an endomorphism:
/// m = semisimple + nilpotent with the parts commuting, the semisimple part
/// acting as its clustered eigenvalue on each characteristic subspace.
struct DecompositionResult {
    CMatrix semisimple;
    CMatrix nilpotent;
    CharDecomposition spaces;
    double commutation_defect = 0.0;
    double nilpotency_defect = 0.0;
    double reconstruction_defect = 0.0;
};

inline DecompositionResult endo_jordan_chevalley(const CMatrix& m, const Tolerance& tol = {}) {
    require_square(m, "endo_jordan_chevalley");
    DecompositionResult jc;
    jc.spaces = generalized_eigenspaces(m, tol);
    const Eigen::Index n = m.rows();
    // Every cluster simple means m is diagonalizable, and a diagonalizable
    // matrix is its own semisimple part; rebuilding it through the
    // eigenbasis would only add inversion error.
    if (std::all_of(jc.spaces.multiplicities.begin(), jc.spaces.multiplicities.end(),
                    [](int k) { return k == 1; })) {
        jc.semisimple = m;
        jc.nilpotent = CMatrix::Zero(n, n);
        return jc;
    }
    CMatrix u = jc.spaces.change_of_basis();
    CMatrix d = CMatrix::Zero(n, n);
    Eigen::Index col = 0;
    for (std::size_t i = 0; i < jc.spaces.size(); ++i) {
        for (int r = 0; r < jc.spaces.multiplicities[i]; ++r)
            d(col + r, col + r) = jc.spaces.eigenvalues[i];
        col += jc.spaces.multiplicities[i];
    }
    jc.semisimple = u * d * u.partialPivLu().solve(CMatrix::Identity(n, n));
    jc.nilpotent = m - jc.semisimple;
    double scale = std::max(1.0, m.norm());
    jc.commutation_defect =
        (jc.semisimple * jc.nilpotent - jc.nilpotent * jc.semisimple).norm() / (scale * scale);
    jc.nilpotency_defect = leibniz::nilpotency_defect(jc.nilpotent);
    jc.reconstruction_defect = (m - jc.semisimple - jc.nilpotent).norm() / scale;
    if (jc.nilpotency_defect > tol.eps_residual)
        throw ClusterAmbiguity(
            "endo_jordan_chevalley: residual part is not nilpotent at eps_residual; "
            "spectrum too ill-separated for the requested tolerances");
    return jc;
}

/// Finite exponential sum_{k=0}^{n-1} N^k / k! of a nilpotent matrix.
inline CMatrix exp_nilpotent(const CMatrix& nil, const Tolerance& tol = {}) {
    require_square(nil, "exp_nilpotent");
    if (!is_nilpotent_matrix(nil, tol))
        throw NotNilpotent("exp_nilpotent: scaled nilpotency defect " +
                           std::to_string(nilpotency_defect(nil)) + " exceeds eps_residual");
    const Eigen::Index n = nil.rows();
    CMatrix sum = CMatrix::Identity(n, n);
    CMatrix term = CMatrix::Identity(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        term = term * nil / double(k);
        sum += term;
    }
    return sum;
}

/// Nilpotent logarithm of a unipotent matrix, the principal matrix
/// logarithm computed by inverse scaling and squaring. The finite series
/// log(I + P) is exact in theory but loses all accuracy once ||P|| is
/// large, so the Schur-based routine is used instead. Accuracy is bounded
/// by the data: recovering T from exp(T) loses roughly ||exp(T)|| times
/// machine epsilon in absolute terms, whatever the algorithm.
inline CMatrix log_unipotent(const CMatrix& q, const Tolerance& tol = {}) {
    require_square(q, "log_unipotent");
    const Eigen::Index n = q.rows();
    CMatrix p = q - CMatrix::Identity(n, n);
    if (!is_nilpotent_matrix(p, tol))
        throw NotUnipotent("log_unipotent: Q - I has scaled nilpotency defect " +
                           std::to_string(nilpotency_defect(p)) + ", not unipotent");
    if (n == 0) return q;
    return q.log();
}

}  // namespace leibniz
