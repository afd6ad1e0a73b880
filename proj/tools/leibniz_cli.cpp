// Command-line front end: load algebras from JSON (or the built-in catalog),
// validate them, analyze their structure, and split derivations and
// automorphisms into diagonalizable and nilpotent factors.
//
// Exit codes: 0 success, 1 domain failure (identity violation, wrong map
// role, unknown id), 2 parse error, 3 spectral clustering ambiguity.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <unistd.h>

#include "leibniz/analysis.hpp"
#include "leibniz/automorphisms.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kParseFailure = 2;
constexpr int kClusterFailure = 3;

bool use_color() {
    static const bool enabled = isatty(fileno(stdout)) && std::getenv("NO_COLOR") == nullptr;
    return enabled;
}

std::string paint(const std::string& text, const char* code) {
    if (!use_color()) return text;
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string good(const std::string& text) { return paint(text, "32"); }
std::string bad(const std::string& text) { return paint(text, "31"); }

struct Options {
    double tol = leibniz::Tolerance{}.eps_residual;
    double eps_rank = leibniz::Tolerance{}.eps_rank;
    double eps_cluster = leibniz::Tolerance{}.eps_cluster;
    std::uint64_t seed = leibniz::kDefaultSeed;

    leibniz::Tolerance tolerance() const { return {eps_rank, eps_cluster, tol}; }
};

void add_tolerance_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--tol", opt.tol, "residual acceptance threshold")
        ->capture_default_str();
    cmd->add_option("--eps-rank", opt.eps_rank, "relative rank cutoff for kernels")
        ->capture_default_str();
    cmd->add_option("--eps-cluster", opt.eps_cluster, "eigenvalue clustering radius")
        ->capture_default_str();
}

/// Accepts either a JSON file path or "catalog:<id>".
leibniz::LeibnizAlgebra resolve_algebra(const std::string& source) {
    const std::string prefix = "catalog:";
    if (source.rfind(prefix, 0) == 0)
        return leibniz::stock(source.substr(prefix.size())).algebra;
    return leibniz::load_algebra(source);
}

void print_matrix(const std::string& name, const leibniz::CMatrix& m) {
    Eigen::IOFormat fmt(6, 0, "  ", "\n", "    [", "]");
    std::cout << name << " =\n" << m.format(fmt) << "\n";
}

void print_violations(const leibniz::LeibnizCheck& check) {
    std::cout << bad("bracket identity fails") << " (" << check.violations.size()
              << " violating triple" << (check.violations.size() == 1 ? "" : "s") << ")\n";
    for (const auto& v : check.violations)
        std::cout << "  triple (" << v.i << "," << v.j << "," << v.k << ")  residual "
                  << v.residual << "\n";
}

int run_check(const std::string& source, const Options& opt) {
    auto algebra = resolve_algebra(source);
    auto check = leibniz::check_leibniz(algebra, opt.tolerance());
    if (!check.ok()) {
        print_violations(check);
        return kDomainFailure;
    }
    std::cout << good("ok") << ": bracket identity holds on all " << algebra.dim() << "^3 triples"
              << " (max residual " << check.max_residual << ")\n";
    return kOk;
}

void print_report(const leibniz::AnalysisReport& report) {
    auto yesno = [](bool v) { return v ? "yes" : "no"; };
    auto dims = [](const std::vector<Eigen::Index>& d) {
        std::string out;
        for (std::size_t i = 0; i < d.size(); ++i)
            out += (i ? " > " : "") + std::to_string(d[i]);
        return out;
    };
    std::cout << "bracket identity:               " << good("holds") << " (residual "
              << report.leibniz_residual << ")\n";
    std::cout << "nilpotent:                      " << yesno(report.is_nilpotent) << "\n";
    std::cout << "solvable:                       " << yesno(report.is_solvable) << "\n";
    std::cout << "lie (antisymmetric):            " << yesno(report.is_lie) << "\n";
    std::cout << "derived series dims:            " << dims(report.derived_series_dims) << "\n";
    std::cout << "lower central series dims:      " << dims(report.lower_central_dims) << "\n";
    std::cout << "derivation space dim:           " << report.derivation_dim << "\n";
    std::cout << "all derivations nilpotent:      " << yesno(report.characteristically_nilpotent)
              << " (sampled certificate)\n";
    std::cout << "nonsingular derivation:         "
              << (report.nonsingular_witness ? "found" : "none found") << "\n";
    if (report.nonsingular_witness) print_matrix("  witness", *report.nonsingular_witness);
    std::cout << "right annihilator dim:          " << report.right_annihilator_dim << "\n";
    std::cout << "two-sided annihilator ideal:    dim " << report.l_ann_dim << "\n";
    std::cout << "engel verdict matches series:   " << yesno(report.engel_nilpotent ==
                                                             report.is_nilpotent)
              << "\n";
    std::cout << "residuals: derivation " << report.derivation_residual << ", annihilator "
              << report.annihilator_defect << ", engel " << report.engel_defect << "\n";
}

int run_analyze(const std::string& source, const Options& opt, bool as_json) {
    auto algebra = resolve_algebra(source);
    auto report = leibniz::analyze(algebra, opt.tolerance(), opt.seed);
    if (as_json) {
        std::cout << leibniz::report_to_json(report).dump() << "\n";
        return report.leibniz_ok ? kOk : kDomainFailure;
    }
    if (!report.leibniz_ok) {
        leibniz::LeibnizCheck check{report.violations, report.leibniz_residual};
        print_violations(check);
        return kDomainFailure;
    }
    print_report(report);
    return kOk;
}

int run_jc_der(const std::string& source, const std::string& map_path, const Options& opt) {
    auto algebra = resolve_algebra(source);
    auto map = leibniz::load_matrix(map_path);
    auto jc = leibniz::additive_jc(algebra, map, opt.tolerance());
    print_matrix("diagonalizable part D0", jc.d0);
    print_matrix("nilpotent part T", jc.t);
    std::cout << "reconstruction defect:   " << jc.reconstruction_defect << "\n";
    std::cout << "commutation defect:      " << jc.commutation_defect << "\n";
    std::cout << "T nilpotency defect:     " << jc.nilpotency_defect << "\n";
    std::cout << "D0 derivation defect:    " << jc.d0_derivation_defect << "\n";
    std::cout << "T derivation defect:     " << jc.t_derivation_defect << "\n";
    double worst = std::max({jc.reconstruction_defect, jc.commutation_defect,
                             jc.nilpotency_defect, jc.d0_derivation_defect,
                             jc.t_derivation_defect});
    bool ok = worst <= opt.tol;
    std::cout << (ok ? good("ok") : bad("fail")) << ": worst residual " << worst
              << (ok ? " within " : " exceeds ") << opt.tol << "\n";
    return ok ? kOk : kDomainFailure;
}

int run_jc_aut(const std::string& source, const std::string& map_path, const Options& opt) {
    auto algebra = resolve_algebra(source);
    auto map = leibniz::load_matrix(map_path);
    auto jc = leibniz::multiplicative_jc(algebra, map, opt.tolerance());
    print_matrix("diagonalizable factor A0", jc.a0);
    print_matrix("nilpotent derivation T (A = A0 exp(T))", jc.t);
    std::cout << "reconstruction defect:   " << jc.reconstruction_defect << "\n";
    std::cout << "commutation defect:      " << jc.commutation_defect << "\n";
    std::cout << "T derivation defect:     " << jc.t_derivation_defect << "\n";
    std::cout << "T nilpotency defect:     " << jc.t_nilpotency_defect << "\n";
    std::cout << "A0 automorphism defect:  " << jc.a0_automorphism_defect << "\n";
    double worst = std::max({jc.reconstruction_defect, jc.commutation_defect,
                             jc.t_derivation_defect, jc.t_nilpotency_defect,
                             jc.a0_automorphism_defect});
    bool ok = worst <= opt.tol;
    std::cout << (ok ? good("ok") : bad("fail")) << ": worst residual " << worst
              << (ok ? " within " : " exceeds ") << opt.tol << "\n";
    return ok ? kOk : kDomainFailure;
}

int run_catalog_list() {
    for (const auto& entry : leibniz::catalog_entries())
        std::cout << entry.id << std::string(entry.id.size() < 22 ? 22 - entry.id.size() : 1, ' ')
                  << entry.summary << "\n";
    return kOk;
}

int run_catalog_show(const std::string& id, const std::string& emit_path) {
    const auto& entry = leibniz::stock(id);
    std::string text = leibniz::serialize_algebra(entry.algebra);
    if (!emit_path.empty()) {
        std::ofstream out(emit_path, std::ios::binary);
        if (!out) throw leibniz::ParseError("cannot write '" + emit_path + "'");
        out << text << "\n";
    } else {
        std::cout << text << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure analysis for finite-dimensional complex Leibniz algebras"};
    app.require_subcommand(1);
    Options opt;

    std::string source, map_path, id, emit_path;
    bool as_json = false;

    auto* check = app.add_subcommand("check", "validate the bracket identity of an algebra file");
    check->add_option("file", source, "algebra JSON file or catalog:<id>")->required();
    add_tolerance_flags(check, opt);

    auto* analyze = app.add_subcommand("analyze", "full structure report for an algebra");
    analyze->add_option("file", source, "algebra JSON file or catalog:<id>")->required();
    analyze->add_flag("--json", as_json, "emit the machine-readable report");
    analyze->add_option("--seed", opt.seed, "seed for sampled sub-analyses")
        ->capture_default_str();
    add_tolerance_flags(analyze, opt);

    auto* jcd = app.add_subcommand("jc-der",
                                   "split a derivation into diagonalizable + nilpotent parts");
    jcd->add_option("file", source, "algebra JSON file or catalog:<id>")->required();
    jcd->add_option("--map", map_path, "matrix JSON file with the derivation")->required();
    add_tolerance_flags(jcd, opt);

    auto* jca = app.add_subcommand(
        "jc-aut", "split an automorphism into a diagonalizable factor times exp of a nilpotent");
    jca->add_option("file", source, "algebra JSON file or catalog:<id>")->required();
    jca->add_option("--map", map_path, "matrix JSON file with the automorphism")->required();
    add_tolerance_flags(jca, opt);

    auto* catalog = app.add_subcommand("catalog", "built-in example algebras");
    catalog->require_subcommand(1);
    auto* list = catalog->add_subcommand("list", "list available ids with one-line facts");
    auto* show = catalog->add_subcommand("show", "emit one algebra as AlgebraFile JSON");
    show->add_option("id", id, "catalog id")->required();
    show->add_option("--emit", emit_path, "write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseFailure;
    }

    try {
        if (*check) return run_check(source, opt);
        if (*analyze) return run_analyze(source, opt, as_json);
        if (*jcd) return run_jc_der(source, map_path, opt);
        if (*jca) return run_jc_aut(source, map_path, opt);
        if (*list) return run_catalog_list();
        if (*show) return run_catalog_show(id, emit_path);
    } catch (const leibniz::ParseError& e) {
        std::cerr << bad("parse error") << ": " << e.what() << "\n";
        return kParseFailure;
    } catch (const leibniz::ClusterAmbiguity& e) {
        std::cerr << bad("cluster ambiguity") << ": " << e.what() << "\n";
        std::cerr << "eigenvalues could not be separated into stable groups; widen or tighten\n"
                     "--eps-cluster to pick a grouping, or rescale the map\n";
        return kClusterFailure;
    } catch (const leibniz::UnknownId& e) {
        std::cerr << bad("unknown id") << ": " << e.what() << "\n";
        return kDomainFailure;
    } catch (const leibniz::Error& e) {
        std::cerr << bad("failed") << ": " << e.what() << "\n";
        return kDomainFailure;
    }
    return kParseFailure;  // unreachable: require_subcommand guarantees a branch
}
