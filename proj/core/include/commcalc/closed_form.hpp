#pragma once

#include "commcalc/matrix.hpp"
#include "commcalc/scalar_functions.hpp"

namespace commcalc {

// Symmetric-polynomial and divided-difference invariants entering the
// three-dimensional coordinate-free formula: J's are the elementary
// symmetric polynomials of the eigenvalues, K's weight the commutator
// (odd) terms and L's the anticommutator (even) terms.
struct Invariants3D {
    double J1 = 0.0, J2 = 0.0, J3 = 0.0;
    double K0 = 0.0, K1 = 0.0, K2 = 0.0;
    double L0 = 0.0, L1 = 0.0, L2 = 0.0;
};

// Eigenvalues of a symmetric matrix of dimension <= 3, ascending, computed
// from the characteristic polynomial alone (quadratic formula resp.
// trigonometric Cardano) -- no iterative decomposition, no eigenvectors.
Vector closed_form_eigenvalues(const SymMatrix& G);

Invariants3D closed_form_invariants(const ScalarFn1& f, double g1, double g2,
                                    double g3);

// f applied to the halved commutator operator X -> (GX - XG)/2, evaluated
// purely from eigenvalues, traces and matrix products.  Dimension <= 3;
// coincident eigenvalues (within tau * scale) drop to the lower-rank
// branch of the formula.
Matrix apply_closed_form(const ScalarFn1& f, const SymMatrix& G,
                         const Matrix& X, double tau = kClusterTol);

// Derivative of the matrix logarithm at a 2x2 positive definite A, applied
// to X, written so that only A, log A and the scalar invariant
// delta = sqrt(tr^2 log A - 4 det log A)/2 appear -- no eigenvectors.
Matrix theta_fast_path_2d(const SymMatrix& A, const Matrix& X);

}  // namespace commcalc
