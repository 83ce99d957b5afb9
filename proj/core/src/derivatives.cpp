#include "commcalc/derivatives.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "commcalc/errors.hpp"
#include "commcalc/quadrature.hpp"

namespace commcalc {
namespace {

ScalarFn1 lambda_fn(std::string name, std::function<double(double)> eval) {
    ScalarFn1 f;
    f.name = std::move(name);
    f.eval = std::move(eval);
    return f;
}

Matrix ac_apply(const Matrix& M, const Matrix& Y) {
    return 0.5 * (M * Y + Y * M);
}

SpectralDecomp decompose_spd(const SymMatrix& A, const std::string& op) {
    SpectralDecomp d = schur_decompose(A);
    if (d.eigs[0] <= 0.0)
        throw MathError(op + ": matrix is not positive definite (smallest "
                             "eigenvalue " +
                        std::to_string(d.eigs[0]) + ")");
    return d;
}

void check_direction(const SpectralDecomp& d, const Matrix& X,
                     const char* op) {
    detail::require_square_finite(X, op);
    if (X.rows() != d.dim())
        throw std::invalid_argument(std::string(op) +
                                    ": direction dimension mismatch");
}

// Diagonal congruence in a shared eigenbasis: Q diag(a) Xt diag(b) Q^T
// accumulated over quadrature nodes.
template <typename Kernel>
Matrix quadrature_bivariate(const SpectralDecomp& d, const Matrix& X,
                            Kernel&& node_kernel) {
    const int n = d.dim();
    const Matrix Xt = d.Q.transpose() * X * d.Q;
    Matrix K = quadrature::integrate_unit([&](double s) {
        Matrix F(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                F(i, j) = node_kernel(s, d.eigs[i], d.eigs[j]);
        return F;
    });
    return d.Q * K.cwiseProduct(Xt) * d.Q.transpose();
}

}  // namespace

Matrix frechet_derivative(const ScalarFn1& f, const SpectralDecomp& d,
                          const Matrix& X) {
    check_direction(d, X, "frechet_derivative");
    if (!f.has_derivative())
        throw MathError("frechet_derivative: " + f.name +
                        " carries no derivative");
    const int n = d.dim();
    std::vector<int> cluster_of(n);
    for (int c = 0; c < static_cast<int>(d.clusters.size()); ++c)
        for (int idx : d.clusters[c]) cluster_of[idx] = c;

    Matrix F(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (cluster_of[i] == cluster_of[j])
                F(i, j) = f.deriv(0.5 * (d.eigs[i] + d.eigs[j]));
            else
                F(i, j) = (f.eval(d.eigs[i]) - f.eval(d.eigs[j])) /
                          (d.eigs[i] - d.eigs[j]);
        }
    return apply_entrywise(F, d, X);
}

Matrix frechet_derivative(const ScalarFn1& f, const SymMatrix& G,
                          const Matrix& X, double tau) {
    return frechet_derivative(f, schur_decompose(G, tau), X);
}

Matrix derivative_exp(const SymMatrix& G, const Matrix& X, ExpVariant v) {
    const SpectralDecomp d = schur_decompose(G);
    check_direction(d, X, "derivative_exp");
    switch (v) {
        case ExpVariant::integral_E0:
            return quadrature_bivariate(d, X, [](double s, double x, double y) {
                return std::exp((1.0 - s) * x + s * y);
            });
        case ExpVariant::left_E1: {
            const ScalarFn1 h =
                lambda_fn("eta(-2x)",
                          [](double x) { return guarded::eta(-2.0 * x); });
            return matrix_function(builtin("exp"), d) *
                   apply_commutator_function(h, OperatorKind::commutator, d,
                                             X);
        }
        case ExpVariant::right_E2: {
            const ScalarFn1 h = lambda_fn(
                "eta(2x)", [](double x) { return guarded::eta(2.0 * x); });
            return apply_commutator_function(h, OperatorKind::commutator, d,
                                             X) *
                   matrix_function(builtin("exp"), d);
        }
        case ExpVariant::anticomm_E3: {
            const ScalarFn1 h = lambda_fn("tanhc", guarded::tanhc);
            return ac_apply(matrix_function(builtin("exp"), d),
                            apply_commutator_function(
                                h, OperatorKind::commutator, d, X));
        }
        case ExpVariant::exp_ac_E4: {
            const Matrix Y = apply_commutator_function(
                builtin("sinch"), OperatorKind::commutator, d, X);
            return apply_commutator_function(
                builtin("exp"), OperatorKind::anticommutator, d, Y);
        }
        case ExpVariant::dk:
            return frechet_derivative(builtin("exp"), d, X);
    }
    throw std::invalid_argument("derivative_exp: unknown variant");
}

Matrix derivative_log(const SymMatrix& A, const Matrix& Y, LogVariant v) {
    const SpectralDecomp dA = decompose_spd(A, "derivative_log");
    check_direction(dA, Y, "derivative_log");
    const SpectralDecomp dL = map_eigenvalues(builtin("log"), dA);
    const auto a_inverse = [&dA] {
        const ScalarFn1 inv =
            lambda_fn("1/x", [](double x) { return 1.0 / x; });
        return matrix_function(inv, dA);
    };
    switch (v) {
        case LogVariant::integral_L5:
            return quadrature_bivariate(
                dA, Y, [](double s, double x, double y) {
                    return 1.0 / ((1.0 - s) * x + s * y);
                });
        case LogVariant::integral_L6: {
            const int n = dA.dim();
            const Matrix I = Matrix::Identity(n, n);
            return quadrature::integrate_unit([&](double s) -> Matrix {
                const Matrix M = (1.0 - s) * I + s * A.mat();
                const auto lu = M.partialPivLu();
                if (lu.determinant() == 0.0)
                    throw MathError(
                        "derivative_log: interpolation matrix singular "
                        "(matrix cannot be positive definite)");
                const Matrix Minv = lu.inverse();
                return Matrix(Minv * Y * Minv);
            });
        }
        case LogVariant::left_L1: {
            const ScalarFn1 h =
                lambda_fn("inv_eta(-2x)", [](double x) {
                    return guarded::inv_eta(-2.0 * x);
                });
            return a_inverse() * apply_commutator_function(
                                     h, OperatorKind::commutator, dL, Y);
        }
        case LogVariant::right_L2: {
            const ScalarFn1 h = lambda_fn("inv_eta(2x)", [](double x) {
                return guarded::inv_eta(2.0 * x);
            });
            return apply_commutator_function(h, OperatorKind::commutator, dL,
                                             Y) *
                   a_inverse();
        }
        case LogVariant::anticomm_L3: {
            const ScalarFn1 h =
                lambda_fn("2x/sinh(2x)", [](double x) {
                    return guarded::x_over_sinh(2.0 * x);
                });
            return ac_apply(a_inverse(),
                            apply_commutator_function(
                                h, OperatorKind::commutator, dL, Y));
        }
        case LogVariant::exp_ac_L4: {
            const Matrix Y1 = apply_commutator_function(
                builtin("x_over_sinh"), OperatorKind::commutator, dL, Y);
            const ScalarFn1 negexp =
                lambda_fn("exp(-u)", [](double u) { return std::exp(-u); });
            return apply_commutator_function(
                negexp, OperatorKind::anticommutator, dL, Y1);
        }
        case LogVariant::inverse_of_dexp_L0: {
            ScalarFn2 dexp_kernel;
            dexp_kernel.name = "exp((x+y)/2) sinch((x-y)/2)";
            dexp_kernel.eval = [](double x, double y) {
                return std::exp((x + y) / 2.0) *
                       guarded::sinch((x - y) / 2.0);
            };
            return invert_operator(dexp_kernel, dL, Y);
        }
        case LogVariant::dk:
            return frechet_derivative(builtin("log"), dA, Y);
    }
    throw std::invalid_argument("derivative_log: unknown variant");
}

Matrix derivative_power(const SymMatrix& A, double r, const Matrix& X,
                        PowerVariant v) {
    const SpectralDecomp dA = decompose_spd(A, "derivative_power");
    check_direction(dA, X, "derivative_power");
    switch (v) {
        case PowerVariant::integral_PP0:
            return quadrature_bivariate(
                dA, X, [r](double s, double x, double y) {
                    return r * std::pow((1.0 - s) * x + s * y, r - 1.0);
                });
        case PowerVariant::sum_PP00: {
            if (!(std::floor(r) == r && r >= 0.0))
                throw MathError(
                    "derivative_power: the power-sum route needs a natural "
                    "exponent, got " +
                    std::to_string(r));
            const int n = dA.dim();
            const int rr = static_cast<int>(r);
            Matrix acc = Matrix::Zero(n, n);
            Matrix left = Matrix::Identity(n, n);  // A^k
            std::vector<Matrix> right(rr + 1);     // A^m
            right[0] = Matrix::Identity(n, n);
            for (int m = 1; m <= rr; ++m) right[m] = right[m - 1] * A.mat();
            for (int k = 0; k < rr; ++k) {
                acc += left * X * right[rr - 1 - k];
                left = left * A.mat();
            }
            return acc;
        }
        case PowerVariant::anticomm_PP1: {
            const SpectralDecomp dL = map_eigenvalues(builtin("log"), dA);
            const double c = r - 1.0;
            const ScalarFn1 h =
                lambda_fn("1+tanh((r-1)x)/tanh(x)", [c](double x) {
                    return 1.0 + (c == 0.0 ? 0.0
                                           : guarded::tanh_ratio(c, 1.0, x));
                });
            const Matrix Ar1 = matrix_function(builtin("power", c), dA);
            return ac_apply(Ar1, apply_commutator_function(
                                     h, OperatorKind::commutator, dL, X));
        }
        case PowerVariant::exp_ac_PP2: {
            const SpectralDecomp dL = map_eigenvalues(builtin("log"), dA);
            const ScalarFn1 h =
                lambda_fn("r sinh(rx)/sinh(x)", [r](double x) {
                    return r == 0.0 ? 0.0 : guarded::sinh_ratio(r, 1.0, x);
                });
            const Matrix Y1 = apply_commutator_function(
                h, OperatorKind::commutator, dL, X);
            const double c = r - 1.0;
            const ScalarFn1 eac =
                lambda_fn("exp((r-1)u)",
                          [c](double u) { return std::exp(c * u); });
            return apply_commutator_function(
                eac, OperatorKind::anticommutator, dL, Y1);
        }
        case PowerVariant::dk:
            return frechet_derivative(builtin("power", r), dA, X);
    }
    throw std::invalid_argument("derivative_power: unknown variant");
}

Matrix derivative_trig_hyp(const SymMatrix& G, const Matrix& X,
                           TrigHypFunction which, TrigHypVariant v) {
    const SpectralDecomp d = schur_decompose(G);
    check_direction(d, X, "derivative_trig_hyp");

    const bool hyperbolic = which == TrigHypFunction::cosh_fn ||
                            which == TrigHypFunction::sinh_fn;
    // d cosh = ac_(sinh G) o tanhc(ad) = sinh(ac) o sinch(ad), and the
    // cos/sin pair mirrors it with tanc/sinc and a sign on the cosine.
    const char* self_name = which == TrigHypFunction::cosh_fn   ? "cosh"
                            : which == TrigHypFunction::sinh_fn ? "sinh"
                            : which == TrigHypFunction::cos_fn  ? "cos"
                                                                : "sin";
    const char* partner_name = which == TrigHypFunction::cosh_fn   ? "sinh"
                               : which == TrigHypFunction::sinh_fn ? "cosh"
                               : which == TrigHypFunction::cos_fn  ? "sin"
                                                                   : "cos";
    const double sign = which == TrigHypFunction::cos_fn ? -1.0 : 1.0;

    switch (v) {
        case TrigHypVariant::anticomm: {
            const ScalarFn1 ratio =
                hyperbolic ? lambda_fn("tanhc", guarded::tanhc)
                           : lambda_fn("tanc", guarded::tanc);
            return sign * ac_apply(matrix_function(builtin(partner_name), d),
                                   apply_commutator_function(
                                       ratio, OperatorKind::commutator, d, X));
        }
        case TrigHypVariant::exp_ac: {
            const ScalarFn1 ratio = hyperbolic
                                        ? lambda_fn("sinch", guarded::sinch)
                                        : lambda_fn("sinc", guarded::sinc);
            const Matrix Y = apply_commutator_function(
                ratio, OperatorKind::commutator, d, X);
            return sign * apply_commutator_function(
                              builtin(partner_name),
                              OperatorKind::anticommutator, d, Y);
        }
        case TrigHypVariant::dk:
            return frechet_derivative(builtin(self_name), d, X);
    }
    throw std::invalid_argument("derivative_trig_hyp: unknown variant");
}

Matrix hadamard_identity(const SymMatrix& A, double p, double q,
                         const Matrix& X) {
    const SpectralDecomp dA = decompose_spd(A, "hadamard_identity");
    check_direction(dA, X, "hadamard_identity");
    const SpectralDecomp dL = map_eigenvalues(builtin("log"), dA);
    const double pd = p - q, ps = p + q;
    const ScalarFn1 comm_part = lambda_fn(
        "exp((p-q)x)", [pd](double x) { return std::exp(pd * x); });
    const ScalarFn1 ac_part = lambda_fn(
        "exp((p+q)u)", [ps](double u) { return std::exp(ps * u); });
    const Matrix Y = apply_commutator_function(
        comm_part, OperatorKind::commutator, dL, X);
    return apply_commutator_function(ac_part, OperatorKind::anticommutator,
                                     dL, Y);
}

Matrix dpower_applied(const SymMatrix& A, double r, double p, double q,
                      const Matrix& X, CombineSign sign) {
    const SpectralDecomp dA = decompose_spd(A, "dpower_applied");
    check_direction(dA, X, "dpower_applied");
    const SpectralDecomp dL = map_eigenvalues(builtin("log"), dA);
    const double pd = p - q;
    ScalarFn1 h;
    if (sign == CombineSign::minus) {
        h = lambda_fn("r(p-q)x sinch(rx) sinch((p-q)x)/sinch(x)",
                      [r, pd](double x) {
                          return r * pd * x * guarded::sinch(r * x) *
                                 guarded::sinch(pd * x) / guarded::sinch(x);
                      });
    } else {
        h = lambda_fn("r sinch(rx) cosh((p-q)x)/sinch(x)", [r, pd](double x) {
            return r * guarded::sinch(r * x) * std::cosh(pd * x) /
                   guarded::sinch(x);
        });
    }
    const double c = p + q + r - 1.0;
    const ScalarFn1 eac =
        lambda_fn("exp((p+q+r-1)u)", [c](double u) { return std::exp(c * u); });
    const Matrix Y = apply_commutator_function(h, OperatorKind::commutator,
                                               dL, X);
    return 2.0 * apply_commutator_function(
                     eac, OperatorKind::anticommutator, dL, Y);
}

Matrix dlog_applied(const SymMatrix& A, double p, double q, const Matrix& X,
                    CombineSign sign) {
    const SpectralDecomp dA = decompose_spd(A, "dlog_applied");
    check_direction(dA, X, "dlog_applied");
    const SpectralDecomp dL = map_eigenvalues(builtin("log"), dA);
    const double pd = p - q;
    ScalarFn1 h;
    if (sign == CombineSign::minus) {
        h = lambda_fn("(p-q)x sinch((p-q)x)/sinch(x)", [pd](double x) {
            return pd * x * guarded::sinch(pd * x) / guarded::sinch(x);
        });
    } else {
        h = lambda_fn("cosh((p-q)x) x/sinh(x)", [pd](double x) {
            return std::cosh(pd * x) * guarded::x_over_sinh(x);
        });
    }
    const double c = p + q - 1.0;
    const ScalarFn1 eac =
        lambda_fn("exp((p+q-1)u)", [c](double u) { return std::exp(c * u); });
    const Matrix Y = apply_commutator_function(h, OperatorKind::commutator,
                                               dL, X);
    return 2.0 * apply_commutator_function(
                     eac, OperatorKind::anticommutator, dL, Y);
}

double chain_rule_commutator(const ScalarFn1& f, const SymMatrix& G,
                             const Matrix& X) {
    const SpectralDecomp d = schur_decompose(G);
    check_direction(d, X, "chain_rule_commutator");
    const Matrix fG = matrix_function(f, d);
    const Matrix lhs = 0.5 * (fG * X - X * fG);
    const Matrix adX = 0.5 * (G.mat() * X - X * G.mat());
    const Matrix rhs = frechet_derivative(f, d, adX);
    return frobenius_norm(lhs - rhs);
}

Matrix evaluate_derivative(const DerivativeRequest& req) {
    const std::string& fn = req.function;
    const std::string& v = req.variant;
    const SymMatrix& base = req.base;
    const Matrix& dir = req.direction;

    if (fn == "exp") {
        ExpVariant ev;
        if (v == "E0") ev = ExpVariant::integral_E0;
        else if (v == "E1") ev = ExpVariant::left_E1;
        else if (v == "E2") ev = ExpVariant::right_E2;
        else if (v == "E3") ev = ExpVariant::anticomm_E3;
        else if (v == "E4") ev = ExpVariant::exp_ac_E4;
        else if (v == "dk") ev = ExpVariant::dk;
        else throw std::invalid_argument("unknown exp variant '" + v + "'");
        return derivative_exp(base, dir, ev);
    }
    if (fn == "log") {
        LogVariant lv;
        if (v == "L0") lv = LogVariant::inverse_of_dexp_L0;
        else if (v == "L1") lv = LogVariant::left_L1;
        else if (v == "L2") lv = LogVariant::right_L2;
        else if (v == "L3") lv = LogVariant::anticomm_L3;
        else if (v == "L4") lv = LogVariant::exp_ac_L4;
        else if (v == "L5") lv = LogVariant::integral_L5;
        else if (v == "L6") lv = LogVariant::integral_L6;
        else if (v == "dk") lv = LogVariant::dk;
        else throw std::invalid_argument("unknown log variant '" + v + "'");
        return derivative_log(base, dir, lv);
    }
    if (fn == "power") {
        if (!req.parameter)
            throw std::invalid_argument("power derivative needs an exponent");
        PowerVariant pv;
        if (v == "PP0") pv = PowerVariant::integral_PP0;
        else if (v == "PP00") pv = PowerVariant::sum_PP00;
        else if (v == "PP1") pv = PowerVariant::anticomm_PP1;
        else if (v == "PP2") pv = PowerVariant::exp_ac_PP2;
        else if (v == "dk") pv = PowerVariant::dk;
        else throw std::invalid_argument("unknown power variant '" + v + "'");
        return derivative_power(base, *req.parameter, dir, pv);
    }
    if (fn == "cosh" || fn == "sinh" || fn == "cos" || fn == "sin") {
        const TrigHypFunction which = fn == "cosh" ? TrigHypFunction::cosh_fn
                                      : fn == "sinh" ? TrigHypFunction::sinh_fn
                                      : fn == "cos" ? TrigHypFunction::cos_fn
                                                    : TrigHypFunction::sin_fn;
        TrigHypVariant tv;
        if (v == "anticomm") tv = TrigHypVariant::anticomm;
        else if (v == "exp_ac") tv = TrigHypVariant::exp_ac;
        else if (v == "dk") tv = TrigHypVariant::dk;
        else
            throw std::invalid_argument("unknown trig/hyperbolic variant '" +
                                        v + "'");
        return derivative_trig_hyp(base, dir, which, tv);
    }
    throw std::invalid_argument("no derivative formulas for function '" + fn +
                                "'");
}

}  // namespace commcalc
