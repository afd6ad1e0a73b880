#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/prelude.hpp"

namespace leibniz {

/// A graded nilpotent family on basis e0..en in which every derivation is
/// nilpotent once two distinct alpha parameters are nonzero. The bracket
/// table: [e0,e0] = e2; [ei,e0] = e_{i+1} for 1 <= i <= n-1;
/// [e0,e1] = a3 e3 + ... + a_{n-1} e_{n-1} + theta en;
/// [ei,e1] = a3 e_{i+2} + ... + a_{n+1-i} en for 1 <= i <= n-2.
struct RemarkFamily {
    LeibnizAlgebra algebra;
    // The nilpotency-of-every-derivation claim needs alpha_i alpha_j != 0 for
    // some i != j; without it the algebra is still valid but the claim lapses.
    bool parameters_valid;
};

inline RemarkFamily remark_family(int n, const std::vector<Complex>& alphas, Complex theta,
                                  const Tolerance& tol = {}) {
    if (n < 5)
        throw ParameterMismatch("remark_family: need n >= 5, got " + std::to_string(n));
    if (static_cast<int>(alphas.size()) != n - 2)
        throw ParameterMismatch("remark_family: expected " + std::to_string(n - 2) +
                                " alpha parameters (a3..a" + std::to_string(n) + "), got " +
                                std::to_string(alphas.size()));
    auto alpha = [&](int t) { return alphas[t - 3]; };  // alphas stores a3..an

    AlgebraBuilder builder(n + 1);
    builder.set(0, 0, 2, 1.0);
    for (int i = 1; i <= n - 1; ++i) builder.set(i, 0, i + 1, 1.0);
    for (int t = 3; t <= n - 1; ++t) builder.set(0, 1, t, alpha(t));
    builder.set(0, 1, n, theta);
    for (int i = 1; i <= n - 2; ++i)
        for (int t = 3; t <= n + 1 - i; ++t) builder.set(i, 1, t + i - 1, alpha(t));

    int nonzero = 0;
    for (const Complex& a : alphas)
        if (std::abs(a) > 0.0) ++nonzero;
    return {builder.build(tol), nonzero >= 2};
}

/// The quotient L / L_ann of this algebra is abelian, so every linear map on
/// it is a derivation; yet every derivation upstairs forces d_1p = d_p1 = 0,
/// so most maps downstairs never lift. Basis e1..em, f1..fm with
/// [ei,ei] = fi and [e1,ei] = fi.
inline LeibnizAlgebra nonliftable_example(int m, const Tolerance& tol = {}) {
    if (m < 2)
        throw PreconditionViolation("nonliftable_example: need m >= 2, got " +
                                    std::to_string(m));
    AlgebraBuilder builder(2 * m);
    for (int i = 0; i < m; ++i) {
        builder.set(i, i, m + i, 1.0);
        if (i > 0) builder.set(0, i, m + i, 1.0);
        builder.label(i, "e" + std::to_string(i + 1));
        builder.label(m + i, "f" + std::to_string(i + 1));
    }
    return builder.build(tol);
}

/// Single-generator nilpotent algebra of maximal class: [ei,e1] = e_{i+1}
/// on basis e1..en. Carries the nonsingular derivation diag(1,2,...,n).
inline LeibnizAlgebra filiform_leibniz(int n, const Tolerance& tol = {}) {
    if (n < 2)
        throw PreconditionViolation("filiform_leibniz: need n >= 2, got " + std::to_string(n));
    AlgebraBuilder builder(n);
    for (int i = 0; i < n - 1; ++i) builder.set(i, 0, i + 1, 1.0);
    for (int i = 0; i < n; ++i) builder.label(i, "e" + std::to_string(i + 1));
    return builder.build(tol);
}

/// Facts bundled with a stock algebra. Everything here is re-derivable; the
/// point of recording it is that tests recompute each field and fail loudly
/// if the catalog and the analysis ever disagree.
struct KnownFacts {
    std::optional<bool> is_nilpotent;
    std::optional<bool> is_solvable;
    std::optional<bool> is_lie;
    std::optional<bool> characteristically_nilpotent;
    /// A derivation with no zero eigenvalue, when one is known to exist.
    std::optional<CMatrix> nonsingular_derivation;
    /// Generator indices of the solvable radical, when known. Empty optional
    /// means "not recorded", not "zero radical".
    std::optional<std::vector<Eigen::Index>> radical_generators;
    std::optional<std::vector<Eigen::Index>> nilradical_generators;
    /// Generator indices of the two-sided annihilator ideal, when known.
    std::optional<std::vector<Eigen::Index>> l_ann_generators;
};

struct CatalogEntry {
    std::string id;
    std::string summary;  // one-line description for listings
    LeibnizAlgebra algebra;
    KnownFacts facts;

    Eigen::Index dim() const { return algebra.dim(); }
};

namespace detail {

inline CMatrix diagonal_matrix(const std::vector<double>& entries) {
    CMatrix m = CMatrix::Zero(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

inline std::vector<Eigen::Index> index_range(Eigen::Index first, Eigen::Index last) {
    std::vector<Eigen::Index> out;
    for (Eigen::Index i = first; i <= last; ++i) out.push_back(i);
    return out;
}

inline std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> entries;

    for (int n = 1; n <= 4; ++n) {
        AlgebraBuilder builder(n);
        for (int i = 0; i < n; ++i) builder.label(i, "e" + std::to_string(i + 1));
        KnownFacts facts;
        facts.is_nilpotent = true;
        facts.is_solvable = true;
        facts.is_lie = true;
        facts.characteristically_nilpotent = false;
        facts.nonsingular_derivation = CMatrix::Identity(n, n);
        facts.radical_generators = index_range(0, n - 1);
        facts.nilradical_generators = index_range(0, n - 1);
        entries.push_back({"abelian-" + std::to_string(n),
                           std::to_string(n) + "-dim abelian Lie algebra (zero bracket)",
                           builder.build(), facts});
    }

    {
        KnownFacts facts;
        facts.is_nilpotent = true;
        facts.is_solvable = true;
        facts.is_lie = false;
        facts.characteristically_nilpotent = false;
        facts.nonsingular_derivation = diagonal_matrix({1, 2});
        facts.radical_generators = index_range(0, 1);
        facts.nilradical_generators = index_range(0, 1);
        facts.l_ann_generators = {1};
        entries.push_back({"null2", "2-dim nilpotent non-Lie algebra [e1,e1] = e2",
                           AlgebraBuilder(2)
                               .set(0, 0, 1, 1.0)
                               .label(0, "e1")
                               .label(1, "e2")
                               .build(),
                           facts});
    }

    {
        KnownFacts facts;
        facts.is_nilpotent = false;
        facts.is_solvable = true;
        facts.is_lie = true;
        facts.characteristically_nilpotent = false;
        // Solvable, so the radical is everything; the nilradical is the line
        // spanned by e1, and there is no nonsingular derivation.
        facts.radical_generators = index_range(0, 1);
        facts.nilradical_generators = std::vector<Eigen::Index>{0};
        facts.l_ann_generators = std::vector<Eigen::Index>{};
        entries.push_back({"aff1",
                           "2-dim solvable non-nilpotent Lie algebra [e1,e2] = e1",
                           AlgebraBuilder(2)
                               .set(0, 1, 0, 1.0)
                               .set(1, 0, 0, -1.0)
                               .label(0, "e1")
                               .label(1, "e2")
                               .build(),
                           facts});
    }

    {
        KnownFacts facts;
        facts.is_nilpotent = true;
        facts.is_solvable = true;
        facts.is_lie = true;
        facts.characteristically_nilpotent = false;
        facts.nonsingular_derivation = diagonal_matrix({1, 1, 2});
        facts.radical_generators = index_range(0, 2);
        facts.nilradical_generators = index_range(0, 2);
        facts.l_ann_generators = std::vector<Eigen::Index>{};
        entries.push_back({"heisenberg", "3-dim nilpotent Lie algebra [e1,e2] = e3",
                           AlgebraBuilder(3)
                               .set(0, 1, 2, 1.0)
                               .set(1, 0, 2, -1.0)
                               .label(0, "e1")
                               .label(1, "e2")
                               .label(2, "e3")
                               .build(),
                           facts});
    }

    for (int n = 3; n <= 8; ++n) {
        KnownFacts facts;
        facts.is_nilpotent = true;
        facts.is_solvable = true;
        facts.is_lie = false;
        facts.characteristically_nilpotent = false;
        std::vector<double> weights(n);
        for (int i = 0; i < n; ++i) weights[i] = i + 1;
        facts.nonsingular_derivation = diagonal_matrix(weights);
        facts.radical_generators = index_range(0, n - 1);
        facts.nilradical_generators = index_range(0, n - 1);
        entries.push_back({"filiform-leibniz-" + std::to_string(n),
                           std::to_string(n) + "-dim filiform algebra [ei,e1] = e(i+1)",
                           filiform_leibniz(n), facts});
    }

    for (int n : {5, 7, 9, 11}) {
        KnownFacts facts;
        facts.is_nilpotent = true;
        facts.is_solvable = true;
        facts.is_lie = false;
        facts.characteristically_nilpotent = true;
        facts.radical_generators = index_range(0, n);
        facts.nilradical_generators = index_range(0, n);
        std::vector<Complex> alphas(n - 2, Complex(1.0));
        entries.push_back({"remark-" + std::to_string(n),
                           std::to_string(n + 1) +
                               "-dim characteristically nilpotent algebra (all alphas 1)",
                           remark_family(n, alphas, Complex(0.0)).algebra, facts});
    }

    for (int m : {2, 3}) {
        KnownFacts facts;
        facts.is_nilpotent = true;
        facts.is_solvable = true;
        facts.is_lie = false;
        facts.characteristically_nilpotent = false;
        std::vector<double> weights(2 * m, 1.0);
        for (int i = 0; i < m; ++i) weights[m + i] = 2.0;
        facts.nonsingular_derivation = diagonal_matrix(weights);
        facts.radical_generators = index_range(0, 2 * m - 1);
        facts.nilradical_generators = index_range(0, 2 * m - 1);
        facts.l_ann_generators = index_range(m, 2 * m - 1);
        entries.push_back({"nonliftable-" + std::to_string(m),
                           std::to_string(2 * m) +
                               "-dim algebra whose Lie quotient has derivations that never lift",
                           nonliftable_example(m), facts});
    }

    return entries;
}

}  // namespace detail

/// All stock algebras, in stable listing order.
inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = detail::build_catalog();
    return entries;
}

/// Look up a stock algebra by its stable id.
inline const CatalogEntry& stock(const std::string& id) {
    for (const auto& entry : catalog_entries())
        if (entry.id == id) return entry;
    std::string known;
    for (const auto& entry : catalog_entries()) {
        if (!known.empty()) known += ", ";
        known += entry.id;
    }
    throw UnknownId("unknown catalog id '" + id + "'; valid ids: " + known);
}

}  // namespace leibniz
