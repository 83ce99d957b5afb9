#include "commcalc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "commcalc/errors.hpp"

namespace commcalc {
namespace {

void check_tau(double tau) {
    if (!(tau >= 0.0 && tau <= 1e-3))
        throw std::invalid_argument(
            "cluster tolerance must lie in [0, 1e-3], got " +
            std::to_string(tau));
}

}  // namespace

std::vector<std::vector<int>> chain_clusters(const Vector& ascending_eigs,
                                             double tau, double scale) {
    std::vector<std::vector<int>> clusters;
    const int n = static_cast<int>(ascending_eigs.size());
    for (int i = 0; i < n; ++i) {
        const bool extend = !clusters.empty() &&
                            ascending_eigs[i] -
                                    ascending_eigs[clusters.back().back()] <=
                                tau * scale;
        if (extend)
            clusters.back().push_back(i);
        else
            clusters.push_back({i});
    }
    return clusters;
}

SpectralDecomp schur_decompose(const SymMatrix& G, double tau) {
    check_tau(tau);
    Eigen::SelfAdjointEigenSolver<Matrix> es(G.mat());
    if (es.info() != Eigen::Success)
        throw MathError("schur_decompose: eigensolver failed to converge");
    SpectralDecomp d;
    d.Q = es.eigenvectors();
    d.eigs = es.eigenvalues();  // ascending by construction
    d.scale = std::max(std::abs(d.eigs[0]), std::abs(d.eigs[d.dim() - 1]));
    d.clusters = chain_clusters(d.eigs, tau, d.scale);
    return d;
}

bool is_positive_definite(const SymMatrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A.mat(),
                                             Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw MathError("is_positive_definite: eigensolver failed");
    return es.eigenvalues()[0] > 0.0;
}

Matrix matrix_function(const ScalarFn1& phi, const SpectralDecomp& d) {
    Vector vals(d.dim());
    for (int i = 0; i < d.dim(); ++i) vals[i] = phi.eval(d.eigs[i]);
    return d.Q * vals.asDiagonal() * d.Q.transpose();
}

Matrix matrix_function(const ScalarFn1& phi, const SymMatrix& G, double tau) {
    return matrix_function(phi, schur_decompose(G, tau));
}

SpectralDecomp map_eigenvalues(const ScalarFn1& phi, const SpectralDecomp& d,
                               double tau) {
    check_tau(tau);
    const int n = d.dim();
    Vector mapped(n);
    for (int i = 0; i < n; ++i) mapped[i] = phi.eval(d.eigs[i]);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return mapped[a] < mapped[b]; });

    SpectralDecomp out;
    out.Q.resize(n, n);
    out.eigs.resize(n);
    for (int i = 0; i < n; ++i) {
        out.eigs[i] = mapped[order[i]];
        out.Q.col(i) = d.Q.col(order[i]);
    }
    out.scale = std::max(std::abs(out.eigs[0]), std::abs(out.eigs[n - 1]));
    out.clusters = chain_clusters(out.eigs, tau, out.scale);
    return out;
}

}  // namespace commcalc
