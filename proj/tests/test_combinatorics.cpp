#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "leibniz/combinatorics.hpp"
#include "leibniz/errors.hpp"

using leibniz::BigInt;
using leibniz::Rational;
using leibniz::RationalPolynomial;

namespace {

// Additive Pascal-triangle oracle, deliberately a different algorithm than
// the multiplicative implementation.
std::vector<std::vector<BigInt>> pascal_triangle(unsigned rows) {
    std::vector<std::vector<BigInt>> t(rows);
    for (unsigned n = 0; n < rows; ++n) {
        t[n].assign(n + 1, 1);
        for (unsigned k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
}

// n-th forward difference of P at 0, computed from the value table. The
// alternating binomial sum equals (-1)^n times this.
Rational forward_difference(const RationalPolynomial& p, unsigned n) {
    std::vector<Rational> row(n + 1);
    for (unsigned i = 0; i <= n; ++i) row[i] = p(Rational(i));
    for (unsigned level = 0; level < n; ++level)
        for (unsigned i = 0; i + level + 1 <= n; ++i) row[i] = row[i + 1] - row[i];
    return row[0];
}

RationalPolynomial random_polynomial(std::mt19937& gen, int degree) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    std::vector<Rational> c(degree + 1);
    for (int i = 0; i <= degree; ++i) c[i] = Rational(num(gen), den(gen));
    if (c.back() == 0) c.back() = 1;
    return RationalPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("binomial coefficients match the Pascal triangle") {
    auto triangle = pascal_triangle(40);
    for (unsigned n = 0; n < 40; ++n)
        for (unsigned k = 0; k <= n; ++k) REQUIRE(leibniz::binomial(n, k) == triangle[n][k]);
}

TEST_CASE("binomial edge cases and known values") {
    REQUIRE(leibniz::binomial(0, 0) == 1);
    REQUIRE(leibniz::binomial(7, 9) == 0);
    REQUIRE(leibniz::binomial(52, 5) == 2598960);
    REQUIRE(leibniz::binomial(100, 50) == BigInt("100891344545564193334812497256"));
}

TEST_CASE("rational polynomial evaluation and degree") {
    RationalPolynomial zero;
    REQUIRE(zero.degree() == -1);
    REQUIRE(zero(Rational(5)) == 0);

    RationalPolynomial trimmed({Rational(3), Rational(0), Rational(0)});
    REQUIRE(trimmed.degree() == 0);

    // p(x) = 1/2 - 2x + 3x^2, so p(2) = 1/2 - 4 + 12 = 17/2.
    RationalPolynomial p({Rational(1, 2), Rational(-2), Rational(3)});
    REQUIRE(p.degree() == 2);
    REQUIRE(p(Rational(2)) == Rational(17, 2));
    REQUIRE(p(Rational(-1, 3)) == Rational(1, 2) + Rational(2, 3) + Rational(1, 3));

    auto m = RationalPolynomial::monomial(4, Rational(7));
    REQUIRE(m.degree() == 4);
    REQUIRE(m(Rational(2)) == Rational(112));
}

TEST_CASE("alternating binomial sum equals the signed forward difference") {
    std::mt19937 gen(0xD5);
    std::uniform_int_distribution<int> deg_dist(0, 8);
    for (int trial = 0; trial < 200; ++trial) {
        int degree = deg_dist(gen);
        auto p = random_polynomial(gen, degree);
        unsigned n = std::uniform_int_distribution<unsigned>(0, 10)(gen);
        Rational expected = (n % 2 ? -1 : 1) * forward_difference(p, n);
        REQUIRE(leibniz::alternating_binomial_sum_unchecked(p, n).value == expected);
    }
}

TEST_CASE("alternating binomial sum vanishes below the order") {
    std::mt19937 gen(42);
    for (int trial = 0; trial < 300; ++trial) {
        unsigned n = std::uniform_int_distribution<unsigned>(1, 25)(gen);
        int degree = std::uniform_int_distribution<int>(0, static_cast<int>(n) - 1)(gen);
        auto p = random_polynomial(gen, degree);
        REQUIRE(leibniz::alternating_binomial_sum(p, n) == 0);
    }
}

TEST_CASE("alternating binomial sum outside the vanishing range") {
    // For p(x) = x^3 and n = 3 the sum is -3! = -6.
    auto cubic = RationalPolynomial::monomial(3);
    auto result = leibniz::alternating_binomial_sum_unchecked(cubic, 3);
    REQUIRE(result.value == -6);
    REQUIRE_FALSE(result.degree_in_range);
    REQUIRE_THROWS_AS(leibniz::alternating_binomial_sum(cubic, 3), leibniz::DegreeTooHigh);
    REQUIRE(leibniz::alternating_binomial_sum(cubic, 4) == 0);
}

TEST_CASE("alternating fraction sum collapses to 1/m or zero") {
    for (unsigned m = 1; m <= 40; ++m)
        for (unsigned n = 0; n < m; ++n) {
            Rational expected = n == 0 ? Rational(1, m) : Rational(0);
            REQUIRE(leibniz::alternating_fraction_sum(n, m) == expected);
        }
    REQUIRE_THROWS_AS(leibniz::alternating_fraction_sum(3, 3), leibniz::PreconditionViolation);
    REQUIRE_THROWS_AS(leibniz::alternating_fraction_sum(5, 2), leibniz::PreconditionViolation);
}

TEST_CASE("alternating fraction sum agrees with floating-point summation") {
    // Same sum evaluated in double precision as an independent cross-check.
    for (auto [n, m] : {std::pair{0u, 7u}, {1u, 2u}, {4u, 9u}, {7u, 12u}}) {
        double direct = 0.0;
        for (unsigned i = 0; i <= n; ++i) {
            double term = static_cast<double>(leibniz::binomial(n, i)) /
                          static_cast<double>(m - i) *
                          static_cast<double>(leibniz::binomial(m - i, n));
            direct += (i % 2 ? -term : term);
        }
        double exact = static_cast<double>(leibniz::alternating_fraction_sum(n, m));
        REQUIRE_THAT(direct, Catch::Matchers::WithinAbs(exact, 1e-12));
    }
}
