#pragma once

#include <string>
#include <utility>
#include <vector>

#include "leibniz/errors.hpp"
#include "leibniz/linalg.hpp"
#include "leibniz/prelude.hpp"

namespace leibniz {

class AlgebraBuilder;

/// Finite-dimensional complex Leibniz algebra given by structure constants.
/// Stored as the family of right multiplication operators on the basis:
/// column i of right_basis_map(j) holds the coordinates of [e_i, e_j].
class LeibnizAlgebra {
public:
    Eigen::Index dim() const { return n_; }

    /// Structure constant: coefficient of e_k in [e_i, e_j].
    Complex c(Eigen::Index i, Eigen::Index j, Eigen::Index k) const { return right_[j](k, i); }

    /// Coordinates of [e_i, e_j].
    CVector basis_bracket(Eigen::Index i, Eigen::Index j) const { return right_[j].col(i); }

    /// Matrix of z -> [z, e_j].
    const CMatrix& right_basis_map(Eigen::Index j) const { return right_[j]; }

    CVector bracket(const CVector& x, const CVector& y) const {
        require_size(x, n_, "bracket");
        require_size(y, n_, "bracket");
        CVector out = CVector::Zero(n_);
        for (Eigen::Index j = 0; j < n_; ++j) out += y(j) * (right_[j] * x);
        return out;
    }

    /// Matrix of z -> [z, x].
    CMatrix right_mult(const CVector& x) const {
        require_size(x, n_, "right_mult");
        CMatrix m = CMatrix::Zero(n_, n_);
        for (Eigen::Index j = 0; j < n_; ++j) m += x(j) * right_[j];
        return m;
    }

    /// Matrix of z -> [x, z].
    CMatrix left_mult(const CVector& x) const {
        require_size(x, n_, "left_mult");
        CMatrix m(n_, n_);
        for (Eigen::Index j = 0; j < n_; ++j) m.col(j) = right_[j] * x;
        return m;
    }

    /// Matrix of z -> [e_i, z].
    CMatrix left_basis_map(Eigen::Index i) const {
        CMatrix m(n_, n_);
        for (Eigen::Index j = 0; j < n_; ++j) m.col(j) = right_[j].col(i);
        return m;
    }

    const std::string& label(Eigen::Index i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Largest norm of a basis bracket; the natural scale of the tensor.
    double bracket_scale() const {
        double s = 0.0;
        for (const auto& r : right_) s = std::max(s, r.colwise().norm().maxCoeff());
        return s;
    }

private:
    friend class AlgebraBuilder;
    LeibnizAlgebra(std::vector<CMatrix> right, std::vector<std::string> labels)
        : n_(static_cast<Eigen::Index>(right.size())),
          right_(std::move(right)),
          labels_(std::move(labels)) {}

    Eigen::Index n_;
    std::vector<CMatrix> right_;
    std::vector<std::string> labels_;
};

/// One failing basis triple of the defining identity
/// [[e_i,e_j],e_k] = [[e_i,e_k],e_j] + [e_i,[e_j,e_k]].
struct LeibnizViolation {
    Eigen::Index i, j, k;
    double residual;
};

struct LeibnizCheck {
    std::vector<LeibnizViolation> violations;
    double max_residual = 0.0;
    bool ok() const { return violations.empty(); }
};

/// Evaluates the defining identity on all basis triples. Residuals are
/// scaled by max(1, bracket scale)^2 since the triple bracket is quadratic
/// in the structure constants.
inline LeibnizCheck check_leibniz(const LeibnizAlgebra& a, const Tolerance& tol = {}) {
    const Eigen::Index n = a.dim();
    double s = std::max(1.0, a.bracket_scale());
    LeibnizCheck out;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            // Column i of this matrix is the defect of the triple (i, j, k).
            CMatrix defect = a.right_basis_map(k) * a.right_basis_map(j) -
                             a.right_basis_map(j) * a.right_basis_map(k) -
                             a.right_mult(a.basis_bracket(j, k));
            for (Eigen::Index i = 0; i < n; ++i) {
                double r = defect.col(i).norm() / (s * s);
                out.max_residual = std::max(out.max_residual, r);
                if (r > tol.eps_residual) out.violations.push_back({i, j, k, r});
            }
        }
    return out;
}

/// Incremental construction from sparse structure constants.
class AlgebraBuilder {
public:
    explicit AlgebraBuilder(Eigen::Index dim) : right_(dim, CMatrix::Zero(dim, dim)) {
        if (dim <= 0) throw DimensionMismatch("AlgebraBuilder: dimension must be positive");
        labels_.reserve(dim);
        for (Eigen::Index i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i));
    }

    Eigen::Index dim() const { return static_cast<Eigen::Index>(right_.size()); }

    /// Sets the coefficient of e_k in [e_i, e_j].
    AlgebraBuilder& set(Eigen::Index i, Eigen::Index j, Eigen::Index k, Complex value) {
        check_index(i);
        check_index(j);
        check_index(k);
        right_[j](k, i) = value;
        return *this;
    }

    AlgebraBuilder& label(Eigen::Index i, std::string name) {
        check_index(i);
        labels_[i] = std::move(name);
        return *this;
    }

    /// Builds and validates the defining identity.
    LeibnizAlgebra build(const Tolerance& tol = {}) const {
        LeibnizAlgebra a(right_, labels_);
        auto check = check_leibniz(a, tol);
        if (!check.ok()) {
            const auto& v = check.violations.front();
            throw NotALeibnizAlgebra(
                "structure constants violate the defining identity at triple (" +
                std::to_string(v.i) + "," + std::to_string(v.j) + "," + std::to_string(v.k) +
                ") with residual " + std::to_string(v.residual) + " (" +
                std::to_string(check.violations.size()) + " violating triples total)");
        }
        return a;
    }

    /// Builds without validation, for deliberately invalid fixtures.
    LeibnizAlgebra build_unchecked() const { return LeibnizAlgebra(right_, labels_); }

private:
    void check_index(Eigen::Index i) const {
        if (i < 0 || i >= dim())
            throw DimensionMismatch("AlgebraBuilder: index " + std::to_string(i) +
                                    " out of range for dimension " + std::to_string(dim()));
    }

    std::vector<CMatrix> right_;
    std::vector<std::string> labels_;
};

/// Column-span subspace of the underlying vector space, kept as an
/// orthonormal basis so projection defects are cheap to evaluate.
class Subspace {
public:
    /// Span of arbitrary generating columns; rank decided at eps_rank,
    /// relative to the largest singular value but never below the absolute
    /// floor. Callers that know the natural scale of their generators pass
    /// a floor so that columns of pure roundoff collapse to zero instead of
    /// inflating the rank.
    static Subspace span(const CMatrix& generators, const Tolerance& tol = {},
                         double floor = 0.0) {
        if (generators.cols() == 0) return zero(generators.rows());
        Eigen::JacobiSVD<CMatrix> svd(generators, Eigen::ComputeThinU);
        const auto& sigma = svd.singularValues();
        double cutoff = std::max(sigma.size() > 0 ? tol.eps_rank * sigma(0) : 0.0, floor);
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < sigma.size(); ++i)
            if (sigma(i) > cutoff) ++rank;
        return Subspace(svd.matrixU().leftCols(rank));
    }

    /// Wraps columns that are already orthonormal (e.g. kernel output).
    static Subspace from_orthonormal(CMatrix basis) { return Subspace(std::move(basis)); }

    static Subspace zero(Eigen::Index ambient) { return Subspace(CMatrix(ambient, 0)); }

    static Subspace full(Eigen::Index ambient) {
        return Subspace(CMatrix::Identity(ambient, ambient));
    }

    const CMatrix& basis() const { return basis_; }
    Eigen::Index dim() const { return basis_.cols(); }
    Eigen::Index ambient_dim() const { return basis_.rows(); }

    /// Scaled distance from v to this subspace.
    double defect(const CVector& v) const {
        return (v - basis_ * (basis_.adjoint() * v)).norm() / std::max(1.0, v.norm());
    }

    /// Largest scaled distance from a column of m to this subspace.
    double defect(const CMatrix& m) const {
        double worst = 0.0;
        for (Eigen::Index i = 0; i < m.cols(); ++i)
            worst = std::max(worst, defect(CVector(m.col(i))));
        return worst;
    }

    bool contains(const CVector& v, const Tolerance& tol = {}) const {
        return defect(v) <= tol.eps_rank;
    }

    bool contains(const Subspace& other, const Tolerance& tol = {}) const {
        return defect(other.basis_) <= tol.eps_rank;
    }

    bool same_as(const Subspace& other, const Tolerance& tol = {}) const {
        return dim() == other.dim() && contains(other, tol) && other.contains(*this, tol);
    }

    CMatrix projector() const { return basis_ * basis_.adjoint(); }

    /// Orthogonal complement within the ambient space.
    Subspace complement(const Tolerance& tol = {}) const {
        if (dim() == 0) return full(ambient_dim());
        return from_orthonormal(kernel(CMatrix(basis_.adjoint()), tol));
    }

private:
    explicit Subspace(CMatrix basis) : basis_(std::move(basis)) {}
    CMatrix basis_;
};

enum class Side { left, right, two_sided };

struct IdealCheck {
    bool ok;
    double defect;  // worst scaled projection defect of a bracket
};

/// Checks [S,L] ⊆ S (right), [L,S] ⊆ S (left), or both, by bracketing the
/// subspace basis against the algebra basis.
inline IdealCheck is_ideal(const LeibnizAlgebra& a, const Subspace& s, Side side = Side::two_sided,
                           const Tolerance& tol = {}) {
    double worst = 0.0;
    for (Eigen::Index col = 0; col < s.dim(); ++col) {
        CVector v = s.basis().col(col);
        for (Eigen::Index i = 0; i < a.dim(); ++i) {
            CVector ei = CVector::Unit(a.dim(), i);
            if (side != Side::left) worst = std::max(worst, s.defect(a.bracket(v, ei)));
            if (side != Side::right) worst = std::max(worst, s.defect(a.bracket(ei, v)));
        }
    }
    return {worst <= tol.eps_residual, worst};
}

enum class SeriesKind { derived, lower_central };

/// Terms of the derived or lower central series down to stabilization.
struct SeriesReport {
    SeriesKind kind;
    std::vector<Subspace> terms;  // terms[0] is the whole algebra
    bool stabilized = false;
    Eigen::Index terminal_dim = 0;
    bool reaches_zero() const { return stabilized && terminal_dim == 0; }

    std::vector<Eigen::Index> dims() const {
        std::vector<Eigen::Index> d;
        for (const auto& t : terms) d.push_back(t.dim());
        return d;
    }
};

namespace detail {

/// Span of all brackets [u, w] with u over the columns of lhs and w over
/// the columns of rhs.
inline Subspace bracket_span(const LeibnizAlgebra& a, const CMatrix& lhs, const CMatrix& rhs,
                             const Tolerance& tol) {
    CMatrix products(a.dim(), lhs.cols() * rhs.cols());
    Eigen::Index at = 0;
    for (Eigen::Index u = 0; u < lhs.cols(); ++u)
        for (Eigen::Index w = 0; w < rhs.cols(); ++w)
            products.col(at++) = a.bracket(lhs.col(u), rhs.col(w));
    // Brackets of orthonormal columns live at the tensor's own scale, so
    // anything below eps_rank of that scale is roundoff, not a direction.
    return Subspace::span(products, tol, tol.eps_rank * a.bracket_scale());
}

inline SeriesReport series(const LeibnizAlgebra& a, SeriesKind kind, const Tolerance& tol) {
    SeriesReport report;
    report.kind = kind;
    report.terms.push_back(Subspace::full(a.dim()));
    for (Eigen::Index round = 0; round <= a.dim(); ++round) {
        const Subspace& cur = report.terms.back();
        const CMatrix& rhs =
            kind == SeriesKind::derived ? cur.basis() : report.terms.front().basis();
        Subspace next = bracket_span(a, cur.basis(), rhs, tol);
        if (next.dim() == cur.dim()) {
            report.stabilized = true;
            break;
        }
        report.terms.push_back(next);
        if (next.dim() == 0) {
            report.stabilized = true;
            break;
        }
    }
    report.terminal_dim = report.terms.back().dim();
    return report;
}

}  // namespace detail

inline SeriesReport derived_series(const LeibnizAlgebra& a, const Tolerance& tol = {}) {
    return detail::series(a, SeriesKind::derived, tol);
}

inline SeriesReport lower_central_series(const LeibnizAlgebra& a, const Tolerance& tol = {}) {
    return detail::series(a, SeriesKind::lower_central, tol);
}

inline bool is_solvable(const LeibnizAlgebra& a, const Tolerance& tol = {}) {
    return derived_series(a, tol).reaches_zero();
}

inline bool is_nilpotent(const LeibnizAlgebra& a, const Tolerance& tol = {}) {
    return lower_central_series(a, tol).reaches_zero();
}

/// Antisymmetry defect of the structure tensor; zero characterizes Lie
/// algebras among Leibniz algebras.
inline double antisymmetry_defect(const LeibnizAlgebra& a) {
    double worst = 0.0;
    double s = std::max(1.0, a.bracket_scale());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            worst = std::max(worst,
                             (a.basis_bracket(i, j) + a.basis_bracket(j, i)).norm() / s);
    return worst;
}

inline bool is_lie(const LeibnizAlgebra& a, const Tolerance& tol = {}) {
    return antisymmetry_defect(a) <= tol.eps_residual;
}

/// The right annihilator {x : [L, x] = 0}, a two-sided ideal. Computed as
/// the joint kernel of the left multiplications by all basis vectors.
inline Subspace right_annihilator(const LeibnizAlgebra& a, const Tolerance& tol = {}) {
    const Eigen::Index n = a.dim();
    CMatrix stacked(n * n, n);
    for (Eigen::Index i = 0; i < n; ++i) stacked.middleRows(i * n, n) = a.left_basis_map(i);
    return Subspace::from_orthonormal(kernel(stacked, tol));
}

/// The ideal generated by all squares [x, x]. By polarization the squares
/// span the symmetric brackets, which are then closed under bracketing with
/// the whole algebra on both sides.
inline Subspace l_ann_ideal(const LeibnizAlgebra& a, const Tolerance& tol = {}) {
    const Eigen::Index n = a.dim();
    CMatrix generators(n, n * (n + 1) / 2);
    Eigen::Index at = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            generators.col(at++) =
                i == j ? a.basis_bracket(i, i)
                       : CVector(a.basis_bracket(i, j) + a.basis_bracket(j, i));
    Subspace span = Subspace::span(generators, tol, tol.eps_rank * a.bracket_scale());
    // Ideal closure: the dimension can only grow, so at most n rounds.
    CMatrix full = CMatrix::Identity(n, n);
    for (Eigen::Index round = 0; round < n; ++round) {
        CMatrix enlarged(n, span.dim() + 2 * span.dim() * n);
        enlarged.leftCols(span.dim()) = span.basis();
        Eigen::Index col = span.dim();
        for (Eigen::Index u = 0; u < span.dim(); ++u)
            for (Eigen::Index i = 0; i < n; ++i) {
                enlarged.col(col++) = a.bracket(span.basis().col(u), full.col(i));
                enlarged.col(col++) = a.bracket(full.col(i), span.basis().col(u));
            }
        Subspace next = Subspace::span(enlarged, tol);
        if (next.dim() == span.dim()) break;
        span = next;
    }
    return span;
}

/// Quotient algebra by a two-sided ideal, presented on an orthonormal
/// complement basis. projection maps ambient coordinates to quotient
/// coordinates; section embeds the complement back.
struct QuotientResult {
    LeibnizAlgebra algebra;
    CMatrix projection;  // k x n
    CMatrix section;     // n x k
};

inline QuotientResult quotient(const LeibnizAlgebra& a, const Subspace& ideal,
                               const Tolerance& tol = {}) {
    auto check = is_ideal(a, ideal, Side::two_sided, tol);
    if (!check.ok)
        throw NotAnIdeal("quotient: subspace is not a two-sided ideal (defect " +
                         std::to_string(check.defect) + ")");
    Subspace comp = ideal.complement(tol);
    const Eigen::Index k = comp.dim();
    AlgebraBuilder builder(k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            CVector coords =
                comp.basis().adjoint() * a.bracket(comp.basis().col(i), comp.basis().col(j));
            for (Eigen::Index m = 0; m < k; ++m)
                if (coords(m) != Complex(0)) builder.set(i, j, m, coords(m));
        }
    return {builder.build(tol), CMatrix(comp.basis().adjoint()), comp.basis()};
}

struct EngelReport {
    bool nilpotent;      // every sampled right multiplication is nilpotent
    double max_defect;   // worst scaled nilpotency defect seen
    int samples;
};

/// Nilpotency of right multiplications, the operator-level counterpart of
/// algebra nilpotency: checks every basis map plus seeded random vectors.
inline EngelReport engel_check(const LeibnizAlgebra& a, const Tolerance& tol = {},
                               int random_samples = 20, std::uint64_t seed = kDefaultSeed) {
    EngelReport report{true, 0.0, 0};
    auto consider = [&](const CMatrix& r) {
        double d = nilpotency_defect(r);
        report.max_defect = std::max(report.max_defect, d);
        if (d > tol.eps_residual) report.nilpotent = false;
        ++report.samples;
    };
    for (Eigen::Index j = 0; j < a.dim(); ++j) consider(a.right_basis_map(j));
    Rng rng(seed);
    for (int s = 0; s < random_samples; ++s) consider(a.right_mult(rng.vector(a.dim())));
    return report;
}

}  // namespace leibniz
