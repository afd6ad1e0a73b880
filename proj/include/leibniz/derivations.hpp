#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include <optional>
#include <utility>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/linalg.hpp"
#include "leibniz/prelude.hpp"

namespace leibniz {

struct DerivationCheck {
    bool ok;
    double max_residual;
};

/// Tests d([x,y]) = [d(x),y] + [x,d(y)] on all basis pairs, in operator
/// form: d commutes with each right multiplication up to R_{d(e_j)}.
/// Residuals are scaled by the product of the map and tensor scales since
/// the expression is bilinear in (d, c).
inline DerivationCheck check_derivation(const LeibnizAlgebra& a, const CMatrix& d,
                                        const Tolerance& tol = {}) {
    require_square(d, "check_derivation");
    if (d.rows() != a.dim())
        throw DimensionMismatch("check_derivation: map is " + std::to_string(d.rows()) +
                                "-dimensional, algebra is " + std::to_string(a.dim()));
    double scale = std::max(1.0, d.norm()) * std::max(1.0, a.bracket_scale());
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
        const CMatrix& rj = a.right_basis_map(j);
        CMatrix defect = d * rj - rj * d - a.right_mult(d.col(j));
        worst = std::max(worst, defect.colwise().norm().maxCoeff() / scale);
    }
    return {worst <= tol.eps_residual, worst};
}

/// Basis of the space of derivations, each matrix orthonormal as a vector
/// in the Frobenius inner product.
struct DerivationSpace {
    Eigen::Index ambient = 0;
    std::vector<CMatrix> basis;

    Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }

    CMatrix combination(const CVector& coeffs) const {
        if (coeffs.size() != dim())
            throw DimensionMismatch("DerivationSpace: expected " + std::to_string(dim()) +
                                    " coefficients, got " + std::to_string(coeffs.size()));
        CMatrix out = CMatrix::Zero(ambient, ambient);
        for (Eigen::Index k = 0; k < dim(); ++k) out += coeffs(k) * basis[k];
        return out;
    }

    CMatrix sample(Rng& rng) const { return combination(rng.vector(dim())); }
};

/// Solves the derivation equations as one dense linear system: for each
/// basis index j, d R_j - R_j d - R_{d(e_j)} = 0, which is linear in the
/// n^2 entries of d. The kernel of the stacked n^3 x n^2 system is the
/// derivation space.
inline DerivationSpace derivation_space(const LeibnizAlgebra& a, const Tolerance& tol = {}) {
    const Eigen::Index n = a.dim();
    const CMatrix id = CMatrix::Identity(n, n);
    CMatrix system(n * n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const CMatrix& rj = a.right_basis_map(j);
        CMatrix block = Eigen::kroneckerProduct(rj.transpose(), id) -
                        Eigen::kroneckerProduct(id, rj);
        // Subtract the structure-constant coupling: the column of vec(d)
        // holding d(m, j) multiplies vec(R_{e_m}).
        for (Eigen::Index m = 0; m < n; ++m)
            block.col(j * n + m) -=
                Eigen::Map<const CVector>(a.right_basis_map(m).data(), n * n);
        system.middleRows(j * n * n, n * n) = block;
    }
    CMatrix null_basis = kernel(system, tol);
    DerivationSpace space;
    space.ambient = n;
    for (Eigen::Index k = 0; k < null_basis.cols(); ++k)
        space.basis.emplace_back(Eigen::Map<const CMatrix>(null_basis.col(k).data(), n, n));
    return space;
}

struct GradingPair {
    std::size_t alpha, beta;  // indices into the decomposition
    int target;               // index of the target eigenvalue, -1 if absent
    double defect;
};

/// Outcome of a blockwise bracket-containment check against a spectral
/// decomposition of a map.
struct GradingReport {
    CharDecomposition spaces;
    std::vector<GradingPair> pairs;
    double max_defect = 0.0;
    bool ok = false;
};

namespace detail {

/// Shared engine for the grading laws: brackets of two spectral blocks must
/// land in the block of combine(alpha, beta), or vanish when that value is
/// not in the spectrum.
template <typename Combine>
GradingReport graded_bracket_check(const LeibnizAlgebra& a, CharDecomposition dec,
                                   const Tolerance& tol, Combine&& combine) {
    GradingReport report;
    report.spaces = std::move(dec);
    double radius = std::max(report.spaces.cluster_radius, tol.eps_cluster);
    double scale = std::max(1.0, a.bracket_scale());
    for (std::size_t ai = 0; ai < report.spaces.size(); ++ai)
        for (std::size_t bi = 0; bi < report.spaces.size(); ++bi) {
            Complex target_value =
                combine(report.spaces.eigenvalues[ai], report.spaces.eigenvalues[bi]);
            int target = report.spaces.cluster_index(target_value, radius);
            const CMatrix& ba = report.spaces.blocks[ai];
            const CMatrix& bb = report.spaces.blocks[bi];
            double defect = 0.0;
            for (Eigen::Index u = 0; u < ba.cols(); ++u)
                for (Eigen::Index w = 0; w < bb.cols(); ++w) {
                    CVector prod = a.bracket(ba.col(u), bb.col(w));
                    if (target >= 0) {
                        const CMatrix& tb = report.spaces.blocks[target];
                        defect = std::max(defect, (prod - tb * (tb.adjoint() * prod)).norm() /
                                                      std::max(1.0, prod.norm()));
                    } else {
                        defect = std::max(defect, prod.norm() / scale);
                    }
                }
            report.pairs.push_back({ai, bi, target, defect});
            report.max_defect = std::max(report.max_defect, defect);
        }
    report.ok = report.max_defect <= tol.eps_residual;
    return report;
}

}  // namespace detail

/// Additive grading induced by a derivation: brackets of characteristic
/// subspaces satisfy [L_a, L_b] ⊆ L_{a+b} (zero when a+b is not an
/// eigenvalue).
inline GradingReport grading_check(const LeibnizAlgebra& a, const CMatrix& d,
                                   const Tolerance& tol = {}) {
    auto check = check_derivation(a, d, tol);
    if (!check.ok)
        throw NotADerivation("grading_check: map fails the derivation identity with residual " +
                             std::to_string(check.max_residual));
    return detail::graded_bracket_check(a, generalized_eigenspaces(d, tol), tol,
                                        [](Complex x, Complex y) { return x + y; });
}

/// Additive decomposition of a derivation into commuting diagonalizable and
/// nilpotent derivations.
struct AdditiveJC {
    CMatrix d0;  // diagonalizable part, scalar on each characteristic subspace
    CMatrix t;   // nilpotent part
    CharDecomposition spaces;
    double reconstruction_defect = 0.0;
    double commutation_defect = 0.0;
    double nilpotency_defect = 0.0;
    double d0_derivation_defect = 0.0;
    double t_derivation_defect = 0.0;
};

/// Splits a derivation as d = d0 + t. The split is the endomorphism-level
/// one; the mathematical content verified here is that both parts are again
/// derivations of the algebra.
inline AdditiveJC additive_jc(const LeibnizAlgebra& a, const CMatrix& d,
                              const Tolerance& tol = {}) {
    auto check = check_derivation(a, d, tol);
    if (!check.ok)
        throw NotADerivation("additive_jc: map fails the derivation identity with residual " +
                             std::to_string(check.max_residual));
    auto endo = endo_jordan_chevalley(d, tol);
    AdditiveJC out;
    out.d0 = std::move(endo.semisimple);
    out.t = std::move(endo.nilpotent);
    out.spaces = std::move(endo.spaces);
    out.reconstruction_defect = endo.reconstruction_defect;
    out.commutation_defect = endo.commutation_defect;
    out.nilpotency_defect = endo.nilpotency_defect;
    out.d0_derivation_defect = check_derivation(a, out.d0, tol).max_residual;
    out.t_derivation_defect = check_derivation(a, out.t, tol).max_residual;
    return out;
}

/// Search outcome for an invertible derivation; finding one certifies
/// nilpotency of the algebra, which is re-verified rather than assumed.
struct NonsingularDerivationReport {
    DerivationSpace space;
    bool found_nonsingular = false;
    std::optional<CMatrix> witness;
    bool algebra_nilpotent = false;
    int samples_tested = 0;
};

inline NonsingularDerivationReport nonsingular_derivation_analysis(
    const LeibnizAlgebra& a, const Tolerance& tol = {}, int random_samples = 200,
    std::uint64_t seed = kDefaultSeed) {
    NonsingularDerivationReport report;
    report.space = derivation_space(a, tol);
    report.algebra_nilpotent = is_nilpotent(a, tol);
    auto consider = [&](const CMatrix& d) {
        ++report.samples_tested;
        if (!report.found_nonsingular && is_invertible(d, tol)) {
            report.found_nonsingular = true;
            report.witness = d;
        }
    };
    for (const auto& b : report.space.basis) consider(b);
    Rng rng(seed);
    for (int s = 0; s < random_samples && !report.found_nonsingular; ++s)
        consider(report.space.sample(rng));
    if (report.found_nonsingular && !report.algebra_nilpotent)
        throw TheoremViolation(
            "nonsingular_derivation_analysis: found an invertible derivation on a "
            "non-nilpotent algebra; this contradicts a certified implication and "
            "indicates corrupted input or a library bug");
    return report;
}

/// Sampled certificate that every derivation of the algebra is nilpotent.
struct CharacteristicNilpotencyReport {
    bool characteristically_nilpotent = false;
    double max_defect = 0.0;  // worst nilpotency defect over the samples
    int samples_tested = 0;
    bool sampled_certificate = true;  // the verdict rests on sampling, not proof
};

inline CharacteristicNilpotencyReport characteristically_nilpotent(
    const LeibnizAlgebra& a, const Tolerance& tol = {}, int random_samples = 200,
    std::uint64_t seed = kDefaultSeed) {
    auto space = derivation_space(a, tol);
    CharacteristicNilpotencyReport report;
    report.characteristically_nilpotent = true;
    auto consider = [&](const CMatrix& d) {
        ++report.samples_tested;
        double defect = nilpotency_defect(d);
        report.max_defect = std::max(report.max_defect, defect);
        if (defect > tol.eps_residual) report.characteristically_nilpotent = false;
    };
    for (const auto& b : space.basis) consider(b);
    Rng rng(seed);
    for (int s = 0; s < random_samples && report.characteristically_nilpotent; ++s)
        consider(space.sample(rng));
    return report;
}

/// The enlargement J + d(J) of a two-sided ideal by a derivation; the
/// result is again an ideal, and that conclusion is re-verified.
inline Subspace ideal_plus_image(const LeibnizAlgebra& a, const Subspace& ideal, const CMatrix& d,
                                 const Tolerance& tol = {}) {
    auto ideal_check = is_ideal(a, ideal, Side::two_sided, tol);
    if (!ideal_check.ok)
        throw NotAnIdeal("ideal_plus_image: input is not a two-sided ideal (defect " +
                         std::to_string(ideal_check.defect) + ")");
    auto der_check = check_derivation(a, d, tol);
    if (!der_check.ok)
        throw NotADerivation("ideal_plus_image: map fails the derivation identity with residual " +
                             std::to_string(der_check.max_residual));
    CMatrix enlarged(a.dim(), 2 * ideal.dim());
    enlarged.leftCols(ideal.dim()) = ideal.basis();
    enlarged.rightCols(ideal.dim()) = d * ideal.basis();
    Subspace result = Subspace::span(enlarged, tol);
    auto out_check = is_ideal(a, result, Side::two_sided, tol);
    if (!out_check.ok)
        throw TheoremViolation("ideal_plus_image: enlargement failed the ideal check (defect " +
                               std::to_string(out_check.defect) +
                               "); this indicates corrupted input or a library bug");
    return result;
}

struct InvarianceCheck {
    bool invariant;
    double defect;
};

/// Whether d maps the subspace into itself: d(J) ⊆ J within eps_residual.
inline InvarianceCheck invariance_check(const LeibnizAlgebra& a, const Subspace& subspace,
                                        const CMatrix& d, const Tolerance& tol = {}) {
    if (d.rows() != a.dim() || d.cols() != a.dim())
        throw DimensionMismatch("invariance_check: map dimension does not match the algebra");
    double defect = subspace.defect(CMatrix(d * subspace.basis()));
    return {defect <= tol.eps_residual, defect};
}

}  // namespace leibniz
