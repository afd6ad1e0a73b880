#include <catch2/catch_amalgamated.hpp>

#include "leibniz/algebra.hpp"

using leibniz::AlgebraBuilder;
using leibniz::CMatrix;
using leibniz::Complex;
using leibniz::CVector;
using leibniz::LeibnizAlgebra;
using leibniz::Side;
using leibniz::Subspace;

namespace {

// [e0,e0] = e1, everything else zero.
LeibnizAlgebra null2() { return AlgebraBuilder(2).set(0, 0, 1, 1).build(); }

// Two-dimensional solvable non-nilpotent Lie algebra [e0,e1] = e0.
LeibnizAlgebra aff1() { return AlgebraBuilder(2).set(0, 1, 0, 1).set(1, 0, 0, -1).build(); }

// Three-dimensional Heisenberg Lie algebra [e0,e1] = e2.
LeibnizAlgebra heisenberg() {
    return AlgebraBuilder(3).set(0, 1, 2, 1).set(1, 0, 2, -1).build();
}

LeibnizAlgebra abelian(Eigen::Index n) { return AlgebraBuilder(n).build(); }

// Squares land on the f-half: [e_i,e_i] = f_i and [e_0,e_1] = f_1 at m = 2,
// with basis order e0, e1, f0, f1.
LeibnizAlgebra square_pairs2() {
    return AlgebraBuilder(4).set(0, 0, 2, 1).set(1, 1, 3, 1).set(0, 1, 3, 1).build();
}

CVector unit(Eigen::Index n, Eigen::Index i) { return CVector::Unit(n, i); }

}  // namespace

TEST_CASE("builder validates the defining identity") {
    REQUIRE_NOTHROW(null2());
    REQUIRE_NOTHROW(aff1());
    REQUIRE_NOTHROW(square_pairs2());

    // [e0,e0] = e0 violates the identity: left side e0, right side 2 e0.
    AlgebraBuilder bad(1);
    bad.set(0, 0, 0, 1);
    REQUIRE_THROWS_AS(bad.build(), leibniz::NotALeibnizAlgebra);
    auto broken = bad.build_unchecked();
    auto check = leibniz::check_leibniz(broken);
    REQUIRE_FALSE(check.ok());
    REQUIRE(check.violations.size() == 1);
    REQUIRE(check.violations[0].i == 0);
    REQUIRE_THAT(check.max_residual, Catch::Matchers::WithinAbs(1.0, 1e-12));

    REQUIRE_THROWS_AS(AlgebraBuilder(2).set(0, 0, 2, 1), leibniz::DimensionMismatch);
}

TEST_CASE("bracket matches the tensor and is bilinear") {
    auto a = null2();
    REQUIRE((a.bracket(unit(2, 0), unit(2, 0)) - unit(2, 1)).norm() < 1e-15);
    REQUIRE(a.bracket(unit(2, 1), unit(2, 0)).norm() == 0.0);
    REQUIRE((a.bracket(unit(2, 0) + unit(2, 1), unit(2, 0)) - unit(2, 1)).norm() < 1e-15);
    REQUIRE(a.c(0, 0, 1) == Complex(1.0));

    auto z = abelian(3);
    leibniz::Rng rng;
    REQUIRE(z.bracket(rng.vector(3), rng.vector(3)).norm() == 0.0);

    REQUIRE_THROWS_AS(a.bracket(CVector::Zero(3), unit(2, 0)), leibniz::DimensionMismatch);
}

TEST_CASE("multiplication operators agree with the bracket") {
    auto h = heisenberg();
    leibniz::Rng rng;
    for (int t = 0; t < 10; ++t) {
        CVector x = rng.vector(3), y = rng.vector(3);
        CVector direct = h.bracket(x, y);
        REQUIRE((h.right_mult(y) * x - direct).norm() < 1e-13);
        REQUIRE((h.left_mult(x) * y - direct).norm() < 1e-13);
    }

    auto a = null2();
    CMatrix r0 = a.right_mult(unit(2, 0));
    REQUIRE((r0 * unit(2, 0) - unit(2, 1)).norm() == 0.0);
    REQUIRE((r0 * unit(2, 1)).norm() == 0.0);
    REQUIRE(leibniz::is_nilpotent_matrix(r0));
}

TEST_CASE("right multiplications satisfy the commutator identity") {
    // R_x R_y - R_y R_x = R_{[y,x]}, the operator form of the defining
    // identity, on random vectors.
    leibniz::Rng rng;
    for (const auto& a : {null2(), aff1(), heisenberg(), square_pairs2()}) {
        for (int t = 0; t < 20; ++t) {
            CVector x = rng.vector(a.dim()), y = rng.vector(a.dim());
            CMatrix lhs = a.right_mult(x) * a.right_mult(y) - a.right_mult(y) * a.right_mult(x);
            CMatrix rhs = a.right_mult(a.bracket(y, x));
            REQUIRE((lhs - rhs).norm() < 1e-12);
        }
    }
}

TEST_CASE("derived and lower central series") {
    auto a = null2();
    auto lc = leibniz::lower_central_series(a);
    REQUIRE(lc.dims() == std::vector<Eigen::Index>{2, 1, 0});
    REQUIRE(lc.reaches_zero());
    REQUIRE(leibniz::is_nilpotent(a));
    REQUIRE(leibniz::is_solvable(a));

    auto s = aff1();
    auto ds = leibniz::derived_series(s);
    REQUIRE(ds.dims() == std::vector<Eigen::Index>{2, 1, 0});
    REQUIRE(leibniz::is_solvable(s));
    auto slc = leibniz::lower_central_series(s);
    REQUIRE(slc.stabilized);
    REQUIRE(slc.terminal_dim == 1);
    REQUIRE_FALSE(leibniz::is_nilpotent(s));

    auto z = abelian(3);
    REQUIRE(leibniz::lower_central_series(z).dims() == std::vector<Eigen::Index>{3, 0});

    // Every series term is a two-sided ideal.
    for (const auto& alg : {null2(), aff1(), heisenberg(), square_pairs2()}) {
        for (const auto& term : leibniz::lower_central_series(alg).terms)
            REQUIRE(leibniz::is_ideal(alg, term).ok);
        for (const auto& term : leibniz::derived_series(alg).terms)
            REQUIRE(leibniz::is_ideal(alg, term).ok);
    }
}

TEST_CASE("right annihilator") {
    REQUIRE(leibniz::right_annihilator(abelian(3)).dim() == 3);

    auto a = null2();
    auto ann = leibniz::right_annihilator(a);
    REQUIRE(ann.dim() == 1);
    REQUIRE(ann.contains(CVector(unit(2, 1))));
    // [L, ann] vanishes.
    for (Eigen::Index i = 0; i < 2; ++i)
        REQUIRE(a.bracket(unit(2, i), ann.basis().col(0)).norm() < 1e-12);

    REQUIRE(leibniz::right_annihilator(aff1()).dim() == 0);

    auto sq = square_pairs2();
    auto sq_ann = leibniz::right_annihilator(sq);
    CMatrix f_block(4, 2);
    f_block.setZero();
    f_block(2, 0) = f_block(3, 1) = 1.0;
    REQUIRE(sq_ann.same_as(Subspace::span(f_block)));
}

TEST_CASE("ideal generated by squares") {
    // Lie algebras have no squares.
    REQUIRE(leibniz::l_ann_ideal(aff1()).dim() == 0);
    REQUIRE(leibniz::l_ann_ideal(heisenberg()).dim() == 0);

    auto a = null2();
    auto sq = leibniz::l_ann_ideal(a);
    REQUIRE(sq.dim() == 1);
    REQUIRE(sq.contains(CVector(unit(2, 1))));

    auto pairs = square_pairs2();
    auto pairs_sq = leibniz::l_ann_ideal(pairs);
    REQUIRE(pairs_sq.dim() == 2);
    // Squares sit inside the right annihilator.
    REQUIRE(leibniz::right_annihilator(pairs).contains(pairs_sq));
}

TEST_CASE("ideal membership checks") {
    auto a = null2();
    REQUIRE(leibniz::is_ideal(a, Subspace::full(2)).ok);
    REQUIRE(leibniz::is_ideal(a, Subspace::span(CMatrix(unit(2, 1)))).ok);
    auto bad = leibniz::is_ideal(a, Subspace::span(CMatrix(unit(2, 0))));
    REQUIRE_FALSE(bad.ok);
    REQUIRE(bad.defect > 0.5);

    REQUIRE(leibniz::is_ideal(aff1(), Subspace::span(CMatrix(unit(2, 0)))).ok);
}

TEST_CASE("quotient algebras") {
    auto a = null2();

    // Quotient by the zero ideal reproduces the tensor exactly.
    auto copy = leibniz::quotient(a, Subspace::zero(2));
    REQUIRE(copy.algebra.dim() == 2);
    REQUIRE(copy.algebra.c(0, 0, 1) == Complex(1.0));

    auto q = leibniz::quotient(a, leibniz::l_ann_ideal(a));
    REQUIRE(q.algebra.dim() == 1);
    REQUIRE(q.algebra.c(0, 0, 0) == Complex(0.0));
    REQUIRE(leibniz::is_lie(q.algebra));

    // Projection then section is the identity on the complement.
    REQUIRE((q.projection * q.section - CMatrix::Identity(1, 1)).norm() < 1e-14);

    REQUIRE_THROWS_AS(leibniz::quotient(a, Subspace::span(CMatrix(unit(2, 0)))),
                      leibniz::NotAnIdeal);

    // The square-pair algebra modulo its squares is abelian of half size.
    auto pairs = square_pairs2();
    auto pq = leibniz::quotient(pairs, leibniz::l_ann_ideal(pairs));
    REQUIRE(pq.algebra.dim() == 2);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            REQUIRE(pq.algebra.basis_bracket(i, j).norm() < 1e-12);
}

TEST_CASE("lie detection by antisymmetry") {
    REQUIRE(leibniz::is_lie(aff1()));
    REQUIRE(leibniz::is_lie(heisenberg()));
    REQUIRE(leibniz::is_lie(abelian(2)));
    REQUIRE_FALSE(leibniz::is_lie(null2()));
    REQUIRE_FALSE(leibniz::is_lie(square_pairs2()));
}

TEST_CASE("operator nilpotency agrees with algebra nilpotency") {
    for (const auto& [alg, expect] :
         std::vector<std::pair<LeibnizAlgebra, bool>>{{null2(), true},
                                                      {aff1(), false},
                                                      {heisenberg(), true},
                                                      {abelian(4), true},
                                                      {square_pairs2(), true}}) {
        auto engel = leibniz::engel_check(alg);
        REQUIRE(engel.nilpotent == expect);
        REQUIRE(engel.nilpotent == leibniz::is_nilpotent(alg));
        REQUIRE(engel.samples == alg.dim() + 20);
    }
}

TEST_CASE("subspace span, containment, complement") {
    CMatrix gens(3, 3);
    gens << 1, 2, 1, 0, 0, 1, 0, 0, 0;  // third column independent of first two
    auto s = Subspace::span(gens);
    REQUIRE(s.dim() == 2);
    REQUIRE(s.contains(CVector(unit(3, 0))));
    REQUIRE_FALSE(s.contains(CVector(unit(3, 2))));
    REQUIRE(s.defect(CVector(unit(3, 2))) > 0.9);

    auto comp = s.complement();
    REQUIRE(comp.dim() == 1);
    REQUIRE((s.basis().adjoint() * comp.basis()).norm() < 1e-12);

    REQUIRE(Subspace::full(3).same_as(Subspace::span(CMatrix::Identity(3, 3))));
    REQUIRE(Subspace::zero(3).dim() == 0);
    REQUIRE(Subspace::full(3).contains(s));
    REQUIRE_FALSE(s.same_as(Subspace::full(3)));
}
