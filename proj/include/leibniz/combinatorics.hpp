#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <initializer_list>
#include <string>
#include <vector>

#include "leibniz/errors.hpp"

namespace leibniz {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient C(n, k).
inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;  // exact: the running product is divisible by i!
    }
    return result;
}

/// Dense univariate polynomial with exact rational coefficients,
/// stored lowest degree first.
class RationalPolynomial {
public:
    RationalPolynomial() = default;

    explicit RationalPolynomial(std::vector<Rational> coefficients)
        : coefficients_(std::move(coefficients)) {
        trim();
    }

    RationalPolynomial(std::initializer_list<Rational> coefficients)
        : coefficients_(coefficients) {
        trim();
    }

    static RationalPolynomial monomial(unsigned degree, Rational coefficient = 1) {
        std::vector<Rational> c(degree + 1, Rational(0));
        c[degree] = std::move(coefficient);
        return RationalPolynomial(std::move(c));
    }

    /// Degree of the polynomial; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }

    const std::vector<Rational>& coefficients() const { return coefficients_; }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

private:
    void trim() {
        while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
    }

    std::vector<Rational> coefficients_;
};

struct AlternatingSum {
    Rational value;
    bool degree_in_range = true;  // false when evaluated past the identity's range
};

/// Exact evaluation of sum_{i=0}^{n} (-1)^i C(n,i) P(i). Vanishes whenever
/// deg P < n; callers that knowingly evaluate outside that range get the
/// value together with a flag instead of an error.
inline AlternatingSum alternating_binomial_sum_unchecked(const RationalPolynomial& p, unsigned n) {
    Rational sum = 0;
    for (unsigned i = 0; i <= n; ++i) {
        Rational term = Rational(binomial(n, i)) * p(Rational(i));
        if (i % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return {sum, p.degree() < static_cast<int>(n)};
}

/// Same sum with the degree precondition enforced.
inline Rational alternating_binomial_sum(const RationalPolynomial& p, unsigned n) {
    if (p.degree() >= static_cast<int>(n))
        throw DegreeTooHigh("alternating_binomial_sum: polynomial degree " +
                            std::to_string(p.degree()) + " is not below n = " + std::to_string(n));
    return alternating_binomial_sum_unchecked(p, n).value;
}

/// Exact evaluation of sum_{i=0}^{n} (-1)^i / (m-i) C(n,i) C(m-i,n) for
/// 0 <= n < m. Equals 1/m when n = 0 and vanishes otherwise; this collapse
/// is what makes the logarithm of a unipotent automorphism a derivation.
inline Rational alternating_fraction_sum(unsigned n, unsigned m) {
    if (n >= m)
        throw PreconditionViolation("alternating_fraction_sum: requires n < m, got n = " +
                                    std::to_string(n) + ", m = " + std::to_string(m));
    Rational sum = 0;
    for (unsigned i = 0; i <= n; ++i) {
        Rational term = Rational(binomial(n, i) * binomial(m - i, n), BigInt(m - i));
        if (i % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

}  // namespace leibniz
