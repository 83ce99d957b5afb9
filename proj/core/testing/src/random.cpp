#include "commcalc_testing/random.hpp"

#include <Eigen/QR>

namespace commcalc::testing {

Matrix random_general(Rng& rng, int d, double scale) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = rng.gaussian(scale);
    return m;
}

Matrix random_skew(Rng& rng, int d, double scale) {
    return skew_part(random_general(rng, d, scale)) * 2.0;
}

Matrix random_orthogonal(Rng& rng, int d) {
    const Matrix g = random_general(rng, d);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the column signs so the distribution is Haar rather than
    // QR-convention dependent.
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

SymMatrix random_symmetric(Rng& rng, int d, double scale) {
    return SymMatrix(symmetric_part(random_general(rng, d, scale)) * 2.0);
}

SymMatrix random_with_eigenvalues(Rng& rng, const Vector& eigs) {
    const int d = static_cast<int>(eigs.size());
    const Matrix q = random_orthogonal(rng, d);
    return SymMatrix(q * eigs.asDiagonal() * q.transpose());
}

SymMatrix random_spd(Rng& rng, int d, double lo, double hi) {
    Vector eigs(d);
    for (int i = 0; i < d; ++i) eigs[i] = rng.uniform(lo, hi);
    return random_with_eigenvalues(rng, eigs);
}

}  // namespace commcalc::testing
