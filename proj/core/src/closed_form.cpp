#include "commcalc/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "commcalc/errors.hpp"
#include "commcalc/spectral.hpp"

namespace commcalc {
namespace {

constexpr double kTwoPiOverThree = 2.0943951023931954923;

// f_odd(t)/(2t): relative error stays at a few ulp because odd parts
// vanish linearly, so the quotient never cancels.
double odd_quotient(const OddEvenSplit& s, double t) {
    return s.odd.eval(t) / (2.0 * t);
}

// f_even(t)/(4t^2).  The raw quotient is fine when the even part is
// evaluated in a cancellation-free form or t is moderate; otherwise the
// numerator carries an absolute error ~eps*|f(0)| and the quotient is
// garbage for small t, so we switch to a Richardson-extrapolated form built
// from the derivative: with B(s) = (f'(s) - f'(-s))/(4s),
// (7 B(t) - B(2t))/24 reproduces the quotient through fourth order.
double even_quotient(const OddEvenSplit& s, const ScalarFn1& f, double t) {
    if (s.even_is_stable || std::abs(t) >= 1e-4)
        return s.even.eval(t) / (4.0 * t * t);
    if (f.has_derivative()) {
        auto B = [&f](double w) {
            return (f.deriv(w) - f.deriv(-w)) / (4.0 * w);
        };
        return (7.0 * B(t) - B(2.0 * t)) / 24.0;
    }
    throw MathError(
        "apply_closed_form: the even part of " + f.name +
        " cannot be evaluated stably at half-gap " + std::to_string(t) +
        "; provide a derivative or use the spectral path");
}

// theta(x)/x extended through the origin (limit -2/3).
double theta_over_x(double x) {
    if (std::abs(x) < 1e-4) return -2.0 / 3.0 + 14.0 * x * x / 45.0;
    return guarded::theta(x) / x;
}

struct KLInvariants {
    double K0, K1, K2, L0, L1, L2;
};

KLInvariants kl_invariants(const OddEvenSplit& s, const ScalarFn1& f,
                           double g1, double g2, double g3) {
    const double d12 = g1 - g2, d23 = g2 - g3, d31 = g3 - g1;
    const double den = d12 * d23 * d31;
    const double u1 = odd_quotient(s, d23 / 2.0);
    const double u2 = odd_quotient(s, d31 / 2.0);
    const double u3 = odd_quotient(s, d12 / 2.0);
    const double v1 = even_quotient(s, f, d23 / 2.0);
    const double v2 = even_quotient(s, f, d31 / 2.0);
    const double v3 = even_quotient(s, f, d12 / 2.0);

    KLInvariants r{};
    double p1 = 1.0, p2 = 1.0, p3 = 1.0;
    double* K[3] = {&r.K0, &r.K1, &r.K2};
    double* L[3] = {&r.L0, &r.L1, &r.L2};
    for (int n = 0; n < 3; ++n) {
        *K[n] = (p1 * d23 * u1 + p2 * d31 * u2 + p3 * d12 * u3) / den;
        *L[n] = (p1 * d23 * v1 + p2 * d31 * v2 + p3 * d12 * v3) / den;
        p1 *= g1;
        p2 *= g2;
        p3 *= g3;
    }
    return r;
}

// Formula for two distinct (representative) eigenvalues; also the branch a
// three-dimensional matrix falls into when two eigenvalues coincide,
// because the minimal polynomial then has degree two.
Matrix two_point_formula(const OddEvenSplit& s, const ScalarFn1& f, double g1,
                         double g2, const Matrix& G, const Matrix& X) {
    const double t = (g1 - g2) / 2.0;
    const double u = odd_quotient(s, t);
    const double v = even_quotient(s, f, t);
    const Matrix GX = G * X;
    const Matrix XG = X * G;
    const Matrix GXG = GX * G;
    return s.f0 * X + u * (GX - XG) +
           v * (-2.0 * g1 * g2 * X + (g1 + g2) * (GX + XG) - 2.0 * GXG);
}

}  // namespace

Vector closed_form_eigenvalues(const SymMatrix& G) {
    const int n = G.dim();
    const Matrix& m = G.mat();
    Vector eigs(n);
    if (n == 1) {
        eigs[0] = m(0, 0);
    } else if (n == 2) {
        const double mid = (m(0, 0) + m(1, 1)) / 2.0;
        const double rad = std::hypot((m(0, 0) - m(1, 1)) / 2.0, m(0, 1));
        eigs[0] = mid - rad;
        eigs[1] = mid + rad;
    } else if (n == 3) {
        const double q = m.trace() / 3.0;
        const double p1 = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) +
                          m(1, 2) * m(1, 2);
        const double p2 = (m(0, 0) - q) * (m(0, 0) - q) +
                          (m(1, 1) - q) * (m(1, 1) - q) +
                          (m(2, 2) - q) * (m(2, 2) - q) + 2.0 * p1;
        const double p = std::sqrt(p2 / 6.0);
        if (p == 0.0) {
            eigs.setConstant(q);
        } else {
            const Matrix B = (m - q * Matrix::Identity(3, 3)) / p;
            const double r = std::clamp(B.determinant() / 2.0, -1.0, 1.0);
            const double phi = std::acos(r) / 3.0;
            const double e_hi = q + 2.0 * p * std::cos(phi);
            const double e_lo = q + 2.0 * p * std::cos(phi + kTwoPiOverThree);
            eigs[0] = e_lo;
            eigs[1] = 3.0 * q - e_hi - e_lo;
            eigs[2] = e_hi;
            std::sort(eigs.data(), eigs.data() + 3);
        }
    } else {
        throw MathError("closed_form_eigenvalues: dimension " +
                        std::to_string(n) +
                        " unsupported; use the spectral path");
    }
    return eigs;
}

Invariants3D closed_form_invariants(const ScalarFn1& f, double g1, double g2,
                                    double g3) {
    const OddEvenSplit s = odd_even_split(f);
    const KLInvariants kl = kl_invariants(s, f, g1, g2, g3);
    Invariants3D inv;
    inv.J1 = g1 + g2 + g3;
    inv.J2 = g1 * g2 + g2 * g3 + g3 * g1;
    inv.J3 = g1 * g2 * g3;
    inv.K0 = kl.K0;
    inv.K1 = kl.K1;
    inv.K2 = kl.K2;
    inv.L0 = kl.L0;
    inv.L1 = kl.L1;
    inv.L2 = kl.L2;
    return inv;
}

Matrix apply_closed_form(const ScalarFn1& f, const SymMatrix& G,
                         const Matrix& X, double tau) {
    const int n = G.dim();
    detail::require_square_finite(X, "apply_closed_form");
    if (X.rows() != n)
        throw std::invalid_argument(
            "apply_closed_form: operand dimension mismatch");
    if (n > 3)
        throw MathError("apply_closed_form: dimension " + std::to_string(n) +
                        " unsupported; use the spectral path");

    const Vector eigs = closed_form_eigenvalues(G);
    const double scale = std::max(std::abs(eigs[0]), std::abs(eigs[n - 1]));
    const auto clusters = chain_clusters(eigs, tau, scale);

    std::vector<double> rep;
    rep.reserve(clusters.size());
    for (const auto& c : clusters) {
        double sum = 0.0;
        for (int idx : c) sum += eigs[idx];
        rep.push_back(sum / static_cast<double>(c.size()));
    }

    const OddEvenSplit s = odd_even_split(f);
    const Matrix& Gm = G.mat();

    if (rep.size() == 1) return s.f0 * X;
    if (rep.size() == 2) return two_point_formula(s, f, rep[0], rep[1], Gm, X);

    const double g1 = rep[0], g2 = rep[1], g3 = rep[2];
    const KLInvariants kl = kl_invariants(s, f, g1, g2, g3);
    const double J1 = g1 + g2 + g3;
    const double J2 = g1 * g2 + g2 * g3 + g3 * g1;
    const double J3 = g1 * g2 * g3;

    const Matrix G2 = Gm * Gm;
    const Matrix GX = Gm * X;
    const Matrix XG = X * Gm;
    const Matrix G2X = G2 * X;
    const Matrix XG2 = X * G2;
    const Matrix GXG = GX * Gm;
    const Matrix G2XG = G2X * Gm;
    const Matrix GXG2 = GX * G2;
    const Matrix G2XG2 = G2X * G2;

    return -kl.K2 * (GX - XG) + kl.K1 * (G2X - XG2) -
           kl.K0 * (G2XG - GXG2) + (s.f0 + 2.0 * J3 * kl.L1) * X -
           (J2 * kl.L1 + J3 * kl.L0) * (GX + XG) +
           2.0 * (kl.L2 + J2 * kl.L0) * GXG +
           (J1 * kl.L1 - kl.L2) * (G2X + XG2) -
           (kl.L1 + J1 * kl.L0) * (G2XG + GXG2) + 2.0 * kl.L0 * G2XG2;
}

Matrix theta_fast_path_2d(const SymMatrix& A, const Matrix& X) {
    if (A.dim() != 2 || X.rows() != 2 || X.cols() != 2)
        throw std::invalid_argument("theta_fast_path_2d: needs 2x2 operands");
    detail::require_square_finite(X, "theta_fast_path_2d");

    const Vector a = closed_form_eigenvalues(A);
    if (a[0] <= 0.0)
        throw MathError("theta_fast_path_2d: matrix is not positive definite");

    // log A = alpha I + beta A by interpolating log on the two eigenvalues;
    // this keeps the whole evaluation free of eigenvectors.
    const double beta =
        divided_difference(builtin("log"), a[1], a[0], std::abs(a[1]));
    const double alpha = std::log(a[0]) - beta * a[0];
    const Matrix L = alpha * Matrix::Identity(2, 2) + beta * A.mat();

    const double tr = L.trace();
    const double disc = tr * tr - 4.0 * L.determinant();
    const double delta = 0.5 * std::sqrt(std::max(disc, 0.0));

    const Matrix Ainv = A.mat().inverse();
    const Matrix M = L * X - X * L;
    const Matrix C = L * M - M * L;  // L^2 X - 2 L X L + X L^2
    return 0.5 * (Ainv * X + X * Ainv) +
           (theta_over_x(delta) / 8.0) * (Ainv * C + C * Ainv);
}

}  // namespace commcalc
