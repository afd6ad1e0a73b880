#pragma once

#include <utility>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/combinatorics.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/linalg.hpp"
#include "leibniz/prelude.hpp"

namespace leibniz {

struct AutomorphismCheck {
    bool ok;
    bool invertible;
    double max_residual;
};

/// Tests that the map is invertible and preserves the bracket on all basis
/// pairs, in operator form: A R_j = R_{A(e_j)} A for every j. Residuals are
/// scaled by the square of the map scale times the tensor scale.
inline AutomorphismCheck check_automorphism(const LeibnizAlgebra& a, const CMatrix& m,
                                            const Tolerance& tol = {}) {
    require_square(m, "check_automorphism");
    if (m.rows() != a.dim())
        throw DimensionMismatch("check_automorphism: map is " + std::to_string(m.rows()) +
                                "-dimensional, algebra is " + std::to_string(a.dim()));
    bool invertible = is_invertible(m, tol);
    double ms = std::max(1.0, m.norm());
    double scale = ms * ms * std::max(1.0, a.bracket_scale());
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
        CMatrix defect = m * a.right_basis_map(j) - a.right_mult(m.col(j)) * m;
        worst = std::max(worst, defect.colwise().norm().maxCoeff() / scale);
    }
    return {invertible && worst <= tol.eps_residual, invertible, worst};
}

struct PkExpansionReport {
    int k_max;
    int pairs_tested;
    double max_defect = 0.0;
    bool ok = false;
};

/// Verifies the power expansion of a unipotent shift against the bracket:
/// P^k([x,y]) expands as the double binomial sum over [P^(k-j)x, P^(k-i+j)y].
/// Requires P nilpotent with I + P an automorphism; checked up front.
inline PkExpansionReport pk_expansion_check(const LeibnizAlgebra& a, const CMatrix& p, int k_max,
                                            const Tolerance& tol = {}, int pairs = 50,
                                            std::uint64_t seed = kDefaultSeed) {
    require_square(p, "pk_expansion_check");
    if (p.rows() != a.dim())
        throw DimensionMismatch("pk_expansion_check: map dimension does not match the algebra");
    if (!is_nilpotent_matrix(p, tol))
        throw NotNilpotent("pk_expansion_check: shift has nilpotency defect " +
                           std::to_string(nilpotency_defect(p)));
    auto aut = check_automorphism(a, p + CMatrix::Identity(p.rows(), p.rows()), tol);
    if (!aut.ok)
        throw NotUnipotentShift("pk_expansion_check: I + P fails the automorphism check "
                                "(residual " +
                                std::to_string(aut.max_residual) + ")");

    std::vector<CMatrix> powers(k_max + 1);
    powers[0] = CMatrix::Identity(p.rows(), p.rows());
    for (int k = 1; k <= k_max; ++k) powers[k] = powers[k - 1] * p;

    PkExpansionReport report;
    report.k_max = k_max;
    report.pairs_tested = pairs;
    Rng rng(seed);
    for (int t = 0; t < pairs; ++t) {
        CVector x = rng.vector(a.dim()), y = rng.vector(a.dim());
        for (int k = 1; k <= k_max; ++k) {
            CVector lhs = powers[k] * a.bracket(x, y);
            CVector rhs = CVector::Zero(a.dim());
            double mass = lhs.norm();
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= i; ++j) {
                    double coeff = static_cast<double>(binomial(k, i) * binomial(i, j));
                    CVector term =
                        coeff * a.bracket(powers[k - j] * x, powers[k - i + j] * y);
                    rhs += term;
                    mass += term.norm();
                }
            double defect = (lhs - rhs).norm() / std::max(1.0, mass);
            report.max_defect = std::max(report.max_defect, defect);
        }
    }
    report.ok = report.max_defect <= tol.eps_residual;
    return report;
}

/// Multiplicative grading induced by an automorphism: brackets of
/// characteristic subspaces satisfy [L_a, L_b] ⊆ L_{ab}.
inline GradingReport aut_grading_check(const LeibnizAlgebra& a, const CMatrix& m,
                                       const Tolerance& tol = {}) {
    auto check = check_automorphism(a, m, tol);
    if (!check.ok)
        throw NotAnAutomorphism(
            "aut_grading_check: map fails the automorphism check (residual " +
            std::to_string(check.max_residual) +
            (check.invertible ? ")" : ", not invertible)"));
    return detail::graded_bracket_check(a, generalized_eigenspaces(m, tol), tol,
                                        [](Complex x, Complex y) { return x * y; });
}

/// Factorization of an automorphism as a diagonalizable automorphism times
/// the exponential of a commuting nilpotent derivation.
struct MultiplicativeJC {
    CMatrix a0;  // diagonalizable factor, scalar on each characteristic subspace
    CMatrix t;   // nilpotent derivation with A = a0 exp(t)
    CharDecomposition spaces;
    double reconstruction_defect = 0.0;
    double commutation_defect = 0.0;
    double t_derivation_defect = 0.0;
    double t_nilpotency_defect = 0.0;
    double a0_automorphism_defect = 0.0;
};

/// Splits A = A0 exp(T): A0 acts as the clustered eigenvalue on each
/// characteristic subspace of A, Q = A0^{-1} A is unipotent, and T = log Q.
/// That T is again a derivation is the decisive fact verified in the
/// residuals rather than assumed.
inline MultiplicativeJC multiplicative_jc(const LeibnizAlgebra& a, const CMatrix& m,
                                          const Tolerance& tol = {}) {
    auto check = check_automorphism(a, m, tol);
    if (!check.ok)
        throw NotAnAutomorphism("multiplicative_jc: map fails the automorphism check (residual " +
                                std::to_string(check.max_residual) +
                                (check.invertible ? ")" : ", not invertible)"));
    auto endo = endo_jordan_chevalley(m, tol);
    MultiplicativeJC out;
    out.a0 = std::move(endo.semisimple);
    out.spaces = std::move(endo.spaces);
    CMatrix q = out.a0.partialPivLu().solve(m);
    out.t = log_unipotent(q, tol);

    double ms = std::max(1.0, m.norm());
    out.reconstruction_defect = (m - out.a0 * exp_nilpotent(out.t, tol)).norm() / ms;
    out.commutation_defect = (out.a0 * out.t - out.t * out.a0).norm() /
                             (std::max(1.0, out.a0.norm()) * std::max(1.0, out.t.norm()));
    out.t_derivation_defect = check_derivation(a, out.t, tol).max_residual;
    out.t_nilpotency_defect = nilpotency_defect(out.t);
    out.a0_automorphism_defect = check_automorphism(a, out.a0, tol).max_residual;
    return out;
}

/// Analysis of an automorphism of claimed prime order: verifies the order,
/// fixed-point-freeness (1 absent from the spectrum), that all eigenvalues
/// are primitive p-th roots of unity, and that the algebra is nilpotent
/// whenever all hypotheses hold.
struct PrimeOrderReport {
    int order = 0;
    double power_defect = 0.0;     // distance of A^p from the identity
    bool fixed_point_free = false;
    bool primitive_roots = false;
    bool hypotheses_hold = false;
    bool algebra_nilpotent = false;
    CharDecomposition spaces;
};

inline PrimeOrderReport prime_order_fixed_point_analysis(const LeibnizAlgebra& a,
                                                         const CMatrix& m, int p,
                                                         const Tolerance& tol = {}) {
    auto is_prime = [](int v) {
        if (v < 2) return false;
        for (int d = 2; d * d <= v; ++d)
            if (v % d == 0) return false;
        return true;
    };
    if (!is_prime(p))
        throw PreconditionViolation("prime_order_fixed_point_analysis: order " +
                                    std::to_string(p) + " is not prime");
    auto check = check_automorphism(a, m, tol);
    if (!check.ok)
        throw NotAnAutomorphism(
            "prime_order_fixed_point_analysis: map fails the automorphism check (residual " +
            std::to_string(check.max_residual) + (check.invertible ? ")" : ", not invertible)"));

    PrimeOrderReport report;
    report.order = p;
    const Eigen::Index n = m.rows();
    CMatrix power = CMatrix::Identity(n, n);
    for (int k = 0; k < p; ++k) power = power * m;
    double scale = std::pow(std::max(1.0, m.norm()), p);
    report.power_defect = (power - CMatrix::Identity(n, n)).norm() / scale;
    if (report.power_defect > tol.eps_residual)
        throw OrderMismatch("prime_order_fixed_point_analysis: A^" + std::to_string(p) +
                            " differs from the identity by " +
                            std::to_string(report.power_defect));

    report.spaces = generalized_eigenspaces(m, tol);
    double radius = std::max(report.spaces.cluster_radius, tol.eps_cluster);
    report.fixed_point_free = report.spaces.cluster_index(Complex(1.0), radius) < 0;
    report.primitive_roots = true;
    for (Complex lambda : report.spaces.eigenvalues) {
        Complex pw = 1.0;
        for (int k = 1; k < p; ++k) {
            pw *= lambda;
            if (std::abs(pw - Complex(1.0)) <= tol.eps_cluster) report.primitive_roots = false;
        }
        pw *= lambda;
        if (std::abs(pw - Complex(1.0)) > tol.eps_cluster) report.primitive_roots = false;
    }
    report.hypotheses_hold = report.fixed_point_free && report.primitive_roots;
    report.algebra_nilpotent = is_nilpotent(a, tol);
    if (report.hypotheses_hold && !report.algebra_nilpotent)
        throw TheoremViolation(
            "prime_order_fixed_point_analysis: fixed-point-free prime-order automorphism on a "
            "non-nilpotent algebra; this contradicts a certified implication and indicates "
            "corrupted input or a library bug");
    return report;
}

}  // namespace leibniz
