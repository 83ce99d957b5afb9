#include "commcalc/bivariate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "commcalc/errors.hpp"

namespace commcalc {
namespace {

void check_operand(const SpectralDecomp& d, const Matrix& X, const char* op) {
    detail::require_square_finite(X, op);
    if (X.rows() != d.dim())
        throw std::invalid_argument(std::string(op) + ": operand is " +
                                    std::to_string(X.rows()) + "x" +
                                    std::to_string(X.cols()) +
                                    " but the decomposition is of dimension " +
                                    std::to_string(d.dim()));
}

}  // namespace

Matrix bivariate_values(const ScalarFn2& f2, const SpectralDecomp& d) {
    const int n = d.dim();
    Matrix F(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            F(i, j) = f2.eval(d.eigs[i], d.eigs[j]);
            if (!std::isfinite(F(i, j)))
                throw MathError(
                    "bivariate_values: " + f2.name +
                    " is not finite at spectrum pair (i, j) = (" +
                    std::to_string(i) + ", " + std::to_string(j) +
                    "), eigenvalues (" + std::to_string(d.eigs[i]) + ", " +
                    std::to_string(d.eigs[j]) +
                    "); supply a continuous extension for this locus");
        }
    return F;
}

Matrix apply_entrywise(const Matrix& F, const SpectralDecomp& d,
                       const Matrix& X) {
    check_operand(d, X, "apply_entrywise");
    const Matrix Xt = d.Q.transpose() * X * d.Q;
    return d.Q * F.cwiseProduct(Xt) * d.Q.transpose();
}

Matrix apply_bivariate(const ScalarFn2& f2, const SpectralDecomp& d,
                       const Matrix& X) {
    return apply_entrywise(bivariate_values(f2, d), d, X);
}

ScalarFn2 commutator_kernel(const ScalarFn1& h, OperatorKind kind) {
    ScalarFn2 f2;
    auto eval = h.eval;
    if (kind == OperatorKind::commutator) {
        f2.name = h.name + "((x-y)/2)";
        f2.eval = [eval](double x, double y) { return eval((x - y) / 2.0); };
    } else {
        f2.name = h.name + "((x+y)/2)";
        f2.eval = [eval](double x, double y) { return eval((x + y) / 2.0); };
    }
    return f2;
}

Matrix apply_commutator_function(const ScalarFn1& h, OperatorKind kind,
                                 const SpectralDecomp& d, const Matrix& X) {
    return apply_bivariate(commutator_kernel(h, kind), d, X);
}

Matrix invert_operator(const ScalarFn2& f2, const SpectralDecomp& d,
                       const Matrix& X) {
    check_operand(d, X, "invert_operator");
    const int n = d.dim();
    Matrix F = bivariate_values(f2, d);
    std::string offenders;
    int offender_count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(F(i, j)) <= 1e-12) {
                if (++offender_count <= 4)
                    offenders += (offenders.empty() ? "" : ", ") +
                                 std::string("(") + std::to_string(d.eigs[i]) +
                                 ", " + std::to_string(d.eigs[j]) + ")";
            }
    if (offender_count > 0)
        throw MathError("invert_operator: " + f2.name +
                        " is below 1e-12 in magnitude at spectrum pair(s) " +
                        offenders + (offender_count > 4 ? ", ..." : "") +
                        "; the operator is numerically singular");
    return apply_entrywise(F.cwiseInverse(), d, X);
}

Matrix vandermonde_representation(const ScalarFn2& f2,
                                  const SpectralDecomp& d) {
    const int n = d.dim();
    for (const auto& cluster : d.clusters)
        if (cluster.size() > 1)
            throw MathError(
                "vandermonde_representation: eigenvalues " +
                std::to_string(d.eigs[cluster.front()]) + " and " +
                std::to_string(d.eigs[cluster.back()]) +
                " coincide within tolerance; the polynomial representation "
                "needs pairwise distinct eigenvalues");

    Matrix V(n, n);
    for (int i = 0; i < n; ++i) {
        double p = 1.0;
        for (int j = 0; j < n; ++j) {
            V(i, j) = p;
            p *= d.eigs[i];
        }
    }
    const Matrix F = bivariate_values(f2, d);
    const auto lu = V.fullPivLu();
    // V J V^T = F  =>  J = V^-1 F V^-T, via two triangular-style solves.
    const Matrix M = lu.solve(F);
    return lu.solve(M.transpose()).transpose();
}

Matrix apply_polynomial_representation(const Matrix& J, const Matrix& G,
                                       const Matrix& X) {
    const int n = static_cast<int>(G.rows());
    std::vector<Matrix> powers(n);
    powers[0] = Matrix::Identity(n, n);
    for (int p = 1; p < n; ++p) powers[p] = powers[p - 1] * G;
    Matrix acc = Matrix::Zero(n, n);
    for (int p = 0; p < n; ++p) {
        Matrix right = Matrix::Zero(n, n);
        for (int r = 0; r < n; ++r) right += J(p, r) * powers[r];
        acc += powers[p] * X * right;
    }
    return acc;
}

}  // namespace commcalc
