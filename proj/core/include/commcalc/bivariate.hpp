#pragma once

#include "commcalc/matrix.hpp"
#include "commcalc/scalar_functions.hpp"
#include "commcalc/spectral.hpp"

namespace commcalc {

// The two one-parameter families the calculus is built from: functions of
// the commutator map X -> (GX - XG)/2 and of the anticommutator map
// X -> (GX + XG)/2.
enum class OperatorKind { commutator, anticommutator };

// Entrywise value table F_ij = f2(g_i, g_j) of a bivariate function on the
// spectrum pairs of a decomposition.
Matrix bivariate_values(const ScalarFn2& f2, const SpectralDecomp& d);

// f2(L_G, R_G) X = Q (F .* (Q^T X Q)) Q^T where L_G/R_G are left/right
// multiplication by G.  `apply_entrywise` is the same map for a caller-built
// table F.
Matrix apply_bivariate(const ScalarFn2& f2, const SpectralDecomp& d,
                       const Matrix& X);
Matrix apply_entrywise(const Matrix& F, const SpectralDecomp& d,
                       const Matrix& X);

// h applied to the halved commutator or anticommutator operator:
// f2(x, y) = h((x - y)/2) or h((x + y)/2).
ScalarFn2 commutator_kernel(const ScalarFn1& h, OperatorKind kind);
Matrix apply_commutator_function(const ScalarFn1& h, OperatorKind kind,
                                 const SpectralDecomp& d, const Matrix& X);

// Solves f2(L_G, R_G) Y = X by entrywise division; MathError when f2
// vanishes at a required spectrum pair (the operator is then singular).
Matrix invert_operator(const ScalarFn2& f2, const SpectralDecomp& d,
                       const Matrix& X);

// Coefficients J with f2(L_G, R_G) X = sum_pr J_pr G^(p-1) X G^(r-1),
// obtained from V J V^T = F with the Vandermonde matrix V_ij = g_i^(j-1).
// Requires pairwise distinct eigenvalues: MathError when any cluster holds
// more than one.
Matrix vandermonde_representation(const ScalarFn2& f2,
                                  const SpectralDecomp& d);
Matrix apply_polynomial_representation(const Matrix& J, const Matrix& G,
                                       const Matrix& X);

}  // namespace commcalc
