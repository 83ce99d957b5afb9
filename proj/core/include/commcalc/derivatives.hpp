#pragma once

#include <optional>
#include <string>

#include "commcalc/bivariate.hpp"
#include "commcalc/matrix.hpp"
#include "commcalc/scalar_functions.hpp"
#include "commcalc/spectral.hpp"

namespace commcalc {

// Fréchet derivative of a matrix function: the divided-difference kernel
// applied in the eigenbasis of the base point.  Coincident eigenvalues
// (same cluster) take the derivative branch, so f must carry a derivative.
Matrix frechet_derivative(const ScalarFn1& f, const SpectralDecomp& d,
                          const Matrix& X);
Matrix frechet_derivative(const ScalarFn1& f, const SymMatrix& G,
                          const Matrix& X, double tau = kClusterTol);

// Each named derivative has several algebraically equal evaluation routes;
// they are kept separate (quadrature, left/right one-sided, symmetrized
// anticommutator, fully commutator-split, operator inversion, divided
// differences) precisely so tests can cross-check them against each other.
enum class ExpVariant {
    integral_E0,  // Gauss-Legendre of e^((1-s)G) X e^(sG)
    left_E1,      // e^G [ (1-e^(-2 ad))/(2 ad) ] X
    right_E2,     // ([ (e^(2 ad)-1)/(2 ad) ] X) e^G
    anticomm_E3,  // symmetrized: ac_(e^G) tanh(ad)/ad
    exp_ac_E4,    // e^(ac) sinh(ad)/ad
    dk            // divided differences (default)
};

enum class LogVariant {
    integral_L5,         // Gauss-Legendre of the scalar resolvent kernel
    integral_L6,         // Gauss-Legendre of M(s)^-1 Y M(s)^-1
    left_L1,             // A^-1 [ 2 ad/(1-e^(-2 ad)) ] Y at ad_(log A)
    right_L2,            // ([ 2 ad/(e^(2 ad)-1) ] Y) A^-1
    anticomm_L3,         // ac_(A^-1) 2 ad/sinh(2 ad)
    exp_ac_L4,           // e^(-ac) ad/sinh(ad)
    inverse_of_dexp_L0,  // operator inversion of the exp-derivative kernel
    dk
};

enum class PowerVariant {
    integral_PP0,  // r * Gauss-Legendre of ((1-s)x + sy)^(r-1)
    sum_PP00,      // sum A^k X A^(r-1-k), natural r only
    anticomm_PP1,  // ac_(A^(r-1)) [1 + tanh((r-1)ad)/tanh(ad)]
    exp_ac_PP2,    // e^((r-1)ac) r sinh(r ad)/sinh(ad)
    dk
};

enum class TrigHypFunction { cosh_fn, sinh_fn, cos_fn, sin_fn };
enum class TrigHypVariant { anticomm, exp_ac, dk };

enum class CombineSign { minus, plus };

Matrix derivative_exp(const SymMatrix& G, const Matrix& X, ExpVariant v);
Matrix derivative_log(const SymMatrix& A, const Matrix& Y, LogVariant v);
Matrix derivative_power(const SymMatrix& A, double r, const Matrix& X,
                        PowerVariant v);
Matrix derivative_trig_hyp(const SymMatrix& G, const Matrix& X,
                           TrigHypFunction which, TrigHypVariant v);

// A^p X A^q evaluated as e^((p+q) ac) e^((p-q) ad) at log A, i.e. purely
// through commutator calculus.
Matrix hadamard_identity(const SymMatrix& A, double p, double q,
                         const Matrix& X);

// Closed operator forms of the power/log derivatives applied to the
// combinations A^p X A^q -+ A^q X A^p (minus keeps the antisymmetric one).
Matrix dpower_applied(const SymMatrix& A, double r, double p, double q,
                      const Matrix& X, CombineSign sign);
Matrix dlog_applied(const SymMatrix& A, double p, double q, const Matrix& X,
                    CombineSign sign);

// || (f(G)X - Xf(G))/2 - Df(G)[(GX - XG)/2] ||_F -- the commutator chain
// rule; zero in exact arithmetic.
double chain_rule_commutator(const ScalarFn1& f, const SymMatrix& G,
                             const Matrix& X);

// String-keyed entry point used by the command-line tool.
struct DerivativeRequest {
    std::string function;               // exp|log|power|cosh|sinh|cos|sin
    std::optional<double> parameter;    // exponent r for power
    std::string variant;                // E0..E4, L0..L6, PP0/PP00/PP1/PP2,
                                        // anticomm, exp_ac, dk
    SymMatrix base;
    Matrix direction;
};

Matrix evaluate_derivative(const DerivativeRequest& req);

}  // namespace commcalc
