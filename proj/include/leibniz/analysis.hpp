#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/io.hpp"
#include "leibniz/prelude.hpp"

namespace leibniz {

/// Everything the analyzer derives from one algebra, in one bundle. When the
/// bracket identity fails, only the leibniz fields are meaningful; the rest
/// stay at their defaults.
struct AnalysisReport {
    bool leibniz_ok = false;
    double leibniz_residual = 0.0;
    std::vector<LeibnizViolation> violations;

    bool is_nilpotent = false;
    bool is_solvable = false;
    bool is_lie = false;
    std::vector<Eigen::Index> derived_series_dims;
    std::vector<Eigen::Index> lower_central_dims;

    Eigen::Index derivation_dim = 0;
    bool characteristically_nilpotent = false;
    bool sampled_certificate = true;  // nilpotency-of-all-derivations rests on sampling
    std::optional<CMatrix> nonsingular_witness;

    Eigen::Index right_annihilator_dim = 0;
    Eigen::Index l_ann_dim = 0;

    // Residual summary: the worst defect seen in each sub-analysis.
    double derivation_residual = 0.0;   // derivation-space basis re-check
    double annihilator_defect = 0.0;    // ideal defect of the annihilator ideal
    double engel_defect = 0.0;          // right-multiplication nilpotency samples
    bool engel_nilpotent = false;       // must agree with the series verdict
};

/// Runs the full battery on one algebra. Total: reports violations instead
/// of throwing when the input is not actually an algebra.
inline AnalysisReport analyze(const LeibnizAlgebra& a, const Tolerance& tol = {},
                              std::uint64_t seed = kDefaultSeed) {
    AnalysisReport report;
    auto leibniz = check_leibniz(a, tol);
    report.leibniz_ok = leibniz.ok();
    report.leibniz_residual = leibniz.max_residual;
    report.violations = leibniz.violations;
    if (!report.leibniz_ok) return report;

    auto derived = derived_series(a, tol);
    auto lower = lower_central_series(a, tol);
    report.derived_series_dims = derived.dims();
    report.lower_central_dims = lower.dims();
    report.is_solvable = derived.reaches_zero();
    report.is_nilpotent = lower.reaches_zero();
    report.is_lie = is_lie(a, tol);

    auto space = derivation_space(a, tol);
    report.derivation_dim = space.dim();
    for (const auto& b : space.basis)
        report.derivation_residual =
            std::max(report.derivation_residual, check_derivation(a, b, tol).max_residual);

    auto char_nilp = characteristically_nilpotent(a, tol, 200, seed);
    report.characteristically_nilpotent = char_nilp.characteristically_nilpotent;
    report.sampled_certificate = char_nilp.sampled_certificate;
    auto witness_hunt = nonsingular_derivation_analysis(a, tol, 200, seed);
    if (witness_hunt.found_nonsingular) report.nonsingular_witness = witness_hunt.witness;

    report.right_annihilator_dim = right_annihilator(a, tol).dim();
    auto ann = l_ann_ideal(a, tol);
    report.l_ann_dim = ann.dim();
    report.annihilator_defect = is_ideal(a, ann, Side::two_sided, tol).defect;

    auto engel = engel_check(a, tol, 20, seed);
    report.engel_nilpotent = engel.nilpotent;
    report.engel_defect = engel.max_defect;
    return report;
}

/// Stable JSON projection of the report; key order and content are fixed so
/// identical inputs and seeds serialize byte-identically.
inline Json report_to_json(const AnalysisReport& report) {
    Json out;
    out["leibniz_ok"] = report.leibniz_ok;
    out["leibniz_residual"] = report.leibniz_residual;
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        Json rec;
        rec["i"] = v.i;
        rec["j"] = v.j;
        rec["k"] = v.k;
        rec["residual"] = v.residual;
        violations.push_back(std::move(rec));
    }
    out["violations"] = std::move(violations);
    out["is_nilpotent"] = report.is_nilpotent;
    out["is_solvable"] = report.is_solvable;
    out["is_lie"] = report.is_lie;
    out["derived_series_dims"] = report.derived_series_dims;
    out["lower_central_dims"] = report.lower_central_dims;
    out["derivation_dim"] = report.derivation_dim;
    out["characteristically_nilpotent"] = report.characteristically_nilpotent;
    out["sampled_certificate"] = report.sampled_certificate;
    out["nonsingular_witness"] =
        report.nonsingular_witness ? matrix_to_json(*report.nonsingular_witness) : Json(nullptr);
    out["right_annihilator_dim"] = report.right_annihilator_dim;
    out["l_ann_dim"] = report.l_ann_dim;
    Json residuals;
    residuals["derivation"] = report.derivation_residual;
    residuals["annihilator"] = report.annihilator_defect;
    residuals["engel"] = report.engel_defect;
    out["residuals"] = std::move(residuals);
    out["engel_nilpotent"] = report.engel_nilpotent;
    return out;
}

}  // namespace leibniz
