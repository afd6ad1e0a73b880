#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

#include "leibniz/errors.hpp"

namespace leibniz {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Seed used by every sampling routine unless the caller overrides it.
inline constexpr std::uint64_t kDefaultSeed = 0xD5;

/// Numerical thresholds shared across the library.
///
/// eps_rank is relative to the largest singular value and drives rank and
/// kernel decisions; eps_cluster is the eigenvalue merging radius;
/// eps_residual bounds every verification residual.
struct Tolerance {
    double eps_rank = 1e-9;
    double eps_cluster = 1e-6;
    double eps_residual = 1e-8;
};

/// Residuals are measured relative to max(1, scale) so that matrices with
/// norms well above one are not penalized for carrying larger rounding.
inline double scaled(double defect, double scale) {
    return defect / std::max(1.0, scale);
}

inline bool all_finite(const CMatrix& m) { return m.allFinite(); }

inline void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw DimensionMismatch(std::string(what) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

inline void require_size(const CVector& v, Eigen::Index n, const char* what) {
    if (v.size() != n)
        throw DimensionMismatch(std::string(what) + ": expected vector of length " +
                                std::to_string(n) + ", got " + std::to_string(v.size()));
}

/// Deterministic source of complex Gaussian samples.
class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    Complex complex_normal() {
        double re = normal_(engine_);
        double im = normal_(engine_);
        return {re, im};
    }

    CVector vector(Eigen::Index n) {
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
        return v;
    }

    CMatrix matrix(Eigen::Index rows, Eigen::Index cols) {
        CMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_normal();
        return m;
    }

    double uniform() { return uniform_(engine_); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace leibniz
