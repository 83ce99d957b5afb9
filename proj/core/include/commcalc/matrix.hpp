#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "commcalc/errors.hpp"

namespace commcalc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline double frobenius_norm(const Matrix& m) { return m.norm(); }

// Frobenius inner product A:B = sum_ij A_ij B_ij.
inline double dot(const Matrix& a, const Matrix& b) {
    return (a.array() * b.array()).sum();
}

inline Matrix symmetric_part(const Matrix& m) { return (m + m.transpose()) / 2; }
inline Matrix skew_part(const Matrix& m) { return (m - m.transpose()) / 2; }

namespace detail {
inline void require_square_finite(const Matrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw MathError(std::string(who) + ": matrix must be square and non-empty");
    if (!m.allFinite())
        throw MathError(std::string(who) + ": matrix has non-finite entries");
}
}  // namespace detail

// Square real matrix with finite entries; houses directions X and the
// kinematic tensors D, W, grad(v).  No symmetry assumed.
class GeneralMatrix {
public:
    explicit GeneralMatrix(Matrix m) : m_(std::move(m)) {
        detail::require_square_finite(m_, "GeneralMatrix");
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

private:
    Matrix m_;
};

// Symmetric matrix, symmetrized on construction.  Asymmetry up to
// 1e-12 * max|entry| is treated as roundtrip noise and averaged away;
// anything larger is rejected.
class SymMatrix {
public:
    explicit SymMatrix(const Matrix& m) {
        detail::require_square_finite(m, "SymMatrix");
        const double scale = m.cwiseAbs().maxCoeff();
        const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-12 * std::max(scale, 1e-300) && asym > 0.0)
            throw MathError("SymMatrix: input is not symmetric (asymmetry " +
                            std::to_string(asym) + " exceeds 1e-12 * max|entry|)");
        m_ = (m + m.transpose()) / 2;
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

private:
    Matrix m_;
};

}  // namespace commcalc
