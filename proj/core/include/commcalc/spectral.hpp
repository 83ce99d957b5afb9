#pragma once

#include <vector>

#include "commcalc/matrix.hpp"
#include "commcalc/scalar_functions.hpp"

namespace commcalc {

// Orthogonal eigendecomposition G = Q diag(eigs) Q^T of a symmetric matrix.
// Eigenvalues are ascending.  `clusters` groups indices whose eigenvalues
// chain within tau * scale of their neighbour, so every index belongs to
// exactly one cluster and clusters are contiguous; downstream code treats
// eigenvalues in one cluster as numerically coincident.
struct SpectralDecomp {
    Matrix Q;
    Vector eigs;
    std::vector<std::vector<int>> clusters;
    double scale = 0.0;  // max |eigenvalue|, the yardstick for tau

    int dim() const { return static_cast<int>(eigs.size()); }
};

// tau is a relative coincidence tolerance, accepted in [0, 1e-3].
SpectralDecomp schur_decompose(const SymMatrix& G, double tau = kClusterTol);

// The cluster partition used everywhere a multiplicity decision is made:
// ascending eigenvalues chain into one cluster while consecutive gaps stay
// within tau * scale.
std::vector<std::vector<int>> chain_clusters(const Vector& ascending_eigs,
                                             double tau, double scale);

bool is_positive_definite(const SymMatrix& A);

// phi(G) = Q diag(phi(g_i)) Q^T.
Matrix matrix_function(const ScalarFn1& phi, const SpectralDecomp& d);
Matrix matrix_function(const ScalarFn1& phi, const SymMatrix& G,
                       double tau = kClusterTol);

// Decomposition of phi(G) without a fresh eigensolve: same eigenvectors,
// eigenvalues phi(g_i) re-sorted ascending and re-clustered.
SpectralDecomp map_eigenvalues(const ScalarFn1& phi, const SpectralDecomp& d,
                               double tau = kClusterTol);

}  // namespace commcalc
