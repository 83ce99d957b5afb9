#include "commcalc/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "commcalc/bivariate.hpp"
#include "commcalc/derivatives.hpp"
#include "commcalc/errors.hpp"
#include "commcalc/spectral.hpp"

namespace commcalc {
namespace {

constexpr double kTwoPi = 6.283185307179586477;

ScalarFn1 lambda_fn(std::string name, std::function<double(double)> eval) {
    ScalarFn1 f;
    f.name = std::move(name);
    f.eval = std::move(eval);
    return f;
}

SpectralDecomp decompose_spd(const SymMatrix& A, const std::string& op) {
    SpectralDecomp d = schur_decompose(A);
    if (d.eigs[0] <= 0.0)
        throw MathError(op + ": matrix is not positive definite (smallest "
                             "eigenvalue " +
                        std::to_string(d.eigs[0]) + ")");
    return d;
}

Matrix half_commutator(const Matrix& M, const Matrix& Y) {
    return 0.5 * (M * Y - Y * M);
}

void check_odd(const ScalarFn1& f, double half_width) {
    const double w = std::max(1.0, half_width);
    for (int i = 0; i <= 32; ++i) {
        const double x = w * static_cast<double>(i) / 32.0;
        const double plus = f.eval(x);
        const double minus = f.eval(-x);
        const double tol =
            1e-10 * std::max({1.0, std::abs(plus), std::abs(minus)});
        if (std::abs(plus + minus) > tol)
            throw MathError("generalized_spin: " + f.name +
                            " is not odd (checked at x = " +
                            std::to_string(x) + ")");
    }
}

}  // namespace

FlowKinematics make_kinematics(const Matrix& gradv) {
    detail::require_square_finite(gradv, "make_kinematics");
    FlowKinematics kin;
    kin.gradv = gradv;
    kin.D = symmetric_part(gradv);
    kin.W = skew_part(gradv);
    return kin;
}

Matrix FlowProtocol::gradv(double t, int dim) const {
    switch (kind) {
        case Kind::constant:
            if (constant_gradv.rows() != dim || constant_gradv.cols() != dim)
                throw std::invalid_argument(
                    "FlowProtocol: constant velocity gradient has the wrong "
                    "dimension");
            return constant_gradv;
        case Kind::shear: {
            Matrix g = Matrix::Zero(dim, dim);
            if (dim < 2)
                throw std::invalid_argument(
                    "FlowProtocol: shear needs dimension >= 2");
            g(0, 1) = rate;
            return g;
        }
        case Kind::extension: {
            Matrix g = Matrix::Zero(dim, dim);
            if (dim < 2)
                throw std::invalid_argument(
                    "FlowProtocol: extension needs dimension >= 2");
            g(0, 0) = rate;
            g(1, 1) = -rate;
            return g;
        }
        case Kind::sin_shear: {
            Matrix g = Matrix::Zero(dim, dim);
            if (dim < 2)
                throw std::invalid_argument(
                    "FlowProtocol: sinusoidal shear needs dimension >= 2");
            g(0, 1) = rate * std::sin(kTwoPi * frequency * t);
            return g;
        }
    }
    throw std::invalid_argument("FlowProtocol: unknown kind");
}

Matrix generalized_spin(const ScalarFn1& f_odd, const SymMatrix& H,
                        const FlowKinematics& kin) {
    const SpectralDecomp d = schur_decompose(H);
    check_odd(f_odd, (d.eigs[d.dim() - 1] - d.eigs[0]) / 2.0);
    return kin.W - apply_commutator_function(f_odd, OperatorKind::commutator,
                                             d, kin.D);
}

Matrix log_spin(const SymMatrix& H, const FlowKinematics& kin) {
    const ScalarFn1 f = lambda_fn("langevin(2x)", [](double x) {
        return guarded::langevin(2.0 * x);
    });
    const SpectralDecomp d = schur_decompose(H);
    return kin.W -
           apply_commutator_function(f, OperatorKind::commutator, d, kin.D);
}

Matrix upper_convected_rate(const SymMatrix& B, const SymMatrix& dBdt,
                            const FlowKinematics& kin) {
    return dBdt.mat() - kin.gradv * B.mat() -
           B.mat() * kin.gradv.transpose();
}

Matrix log_rate(const SymMatrix& H, const SymMatrix& dHdt,
                const FlowKinematics& kin) {
    const Matrix spin = log_spin(H, kin);
    return dHdt.mat() + (H.mat() * spin - spin * H.mat());
}

Matrix constitutive_rhs(const MaterialState& state, const FlowKinematics& kin,
                        double tau, ConstitutiveModel model) {
    if (!(tau > 0.0))
        throw std::invalid_argument("constitutive_rhs: relaxation time must "
                                    "be positive");
    const int n = static_cast<int>(state.value.rows());
    const Matrix I = Matrix::Identity(n, n);

    const bool conformation_model = model == ConstitutiveModel::oldroyd_B ||
                                    model ==
                                        ConstitutiveModel::giesekus_interp;
    if (conformation_model != (state.rep == StateRep::conformation))
        throw MathError(
            "constitutive_rhs: state representation does not match the "
            "model's evolved variable");

    switch (model) {
        case ConstitutiveModel::oldroyd_B: {
            const SymMatrix B(state.value);
            if (!is_positive_definite(B))
                throw MathError(
                    "constitutive_rhs: conformation tensor is not positive "
                    "definite");
            return kin.gradv * B.mat() + B.mat() * kin.gradv.transpose() -
                   (B.mat() - I) / tau;
        }
        case ConstitutiveModel::giesekus_interp: {
            const SymMatrix B(state.value);
            const SpectralDecomp d = decompose_spd(B, "constitutive_rhs");
            const Matrix logB = matrix_function(builtin("log"), d);
            return kin.gradv * B.mat() + B.mat() * kin.gradv.transpose() -
                   B.mat() * logB / tau;
        }
        case ConstitutiveModel::log_oldroyd: {
            const SymMatrix H(state.value);
            const Matrix spin = log_spin(H, kin);
            const SpectralDecomp d = schur_decompose(H);
            const ScalarFn1 em2 = lambda_fn(
                "exp(-2x)", [](double x) { return std::exp(-2.0 * x); });
            const Matrix relax = (I - matrix_function(em2, d)) / (2.0 * tau);
            return kin.D - (H.mat() * spin - spin * H.mat()) - relax;
        }
        case ConstitutiveModel::linearized_log: {
            const SymMatrix H(state.value);
            const Matrix spin = log_spin(H, kin);
            return kin.D - (H.mat() * spin - spin * H.mat()) -
                   H.mat() / tau;
        }
    }
    throw std::invalid_argument("constitutive_rhs: unknown model");
}

namespace {

Matrix rk4_step(const MaterialState& state, const FlowProtocol& proto,
                double tau, ConstitutiveModel model, double dt) {
    const int n = static_cast<int>(state.value.rows());
    auto rhs = [&](double t, const Matrix& value) {
        const FlowKinematics kin = make_kinematics(proto.gradv(t, n));
        MaterialState s{state.rep, value, t};
        return constitutive_rhs(s, kin, tau, model);
    };
    const double t = state.time;
    const Matrix k1 = rhs(t, state.value);
    const Matrix k2 = rhs(t + dt / 2.0, state.value + (dt / 2.0) * k1);
    const Matrix k3 = rhs(t + dt / 2.0, state.value + (dt / 2.0) * k2);
    const Matrix k4 = rhs(t + dt, state.value + dt * k3);
    Matrix next = state.value + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return symmetric_part(next);  // remove roundoff drift
}

void check_spd_along(const MaterialState& state) {
    if (state.rep == StateRep::conformation &&
        !is_positive_definite(SymMatrix(state.value)))
        throw MathError(
            "integrate: conformation tensor lost positive definiteness at "
            "time t = " +
            std::to_string(state.time) + " (step size too large)");
}

}  // namespace

Trajectory integrate(const MaterialState& state0, const FlowProtocol& proto,
                     double tau, ConstitutiveModel model, double dt,
                     double T) {
    if (!(dt > 0.0))
        throw std::invalid_argument("integrate: dt must be positive");
    if (T < 0.0)
        throw std::invalid_argument("integrate: T must be nonnegative");

    MaterialState state = state0;
    check_spd_along(state);
    Trajectory traj;
    const long long n_steps = std::llround(T / dt);
    traj.times.reserve(n_steps + 1);
    traj.times.push_back(state.time);
    traj.states.push_back(state.value);
    traj.cross_residuals.push_back(0.0);
    for (long long k = 0; k < n_steps; ++k) {
        try {
            state.value = rk4_step(state, proto, tau, model, dt);
        } catch (const MathError& e) {
            // A stage of the step left the model's domain (typically
            // positive definiteness): report it as an integration failure
            // with the time, since a smaller step usually cures it.
            throw MathError("integrate: step from time t = " +
                            std::to_string(state.time) +
                            " failed (step size too large?): " + e.what());
        }
        state.time = state0.time + static_cast<double>(k + 1) * dt;
        check_spd_along(state);
        traj.times.push_back(state.time);
        traj.states.push_back(state.value);
        traj.cross_residuals.push_back(0.0);
    }
    return traj;
}

std::pair<Trajectory, Trajectory> integrate_paired(
    const Matrix& B0, const FlowProtocol& proto, double tau,
    ConstitutiveModel conformation_model, ConstitutiveModel hencky_model,
    double dt, double T) {
    const SymMatrix B0s(B0);
    const SpectralDecomp d0 = decompose_spd(B0s, "integrate_paired");
    const Matrix H0 = 0.5 * matrix_function(builtin("log"), d0);

    MaterialState sB{StateRep::conformation, B0, 0.0};
    MaterialState sH{StateRep::hencky, H0, 0.0};
    Trajectory tB = integrate(sB, proto, tau, conformation_model, dt, T);
    Trajectory tH = integrate(sH, proto, tau, hencky_model, dt, T);

    const ScalarFn1 exp2 =
        lambda_fn("exp(2x)", [](double x) { return std::exp(2.0 * x); });
    for (std::size_t k = 0; k < tB.states.size(); ++k) {
        const SpectralDecomp dh = schur_decompose(SymMatrix(tH.states[k]));
        const double res =
            frobenius_norm(matrix_function(exp2, dh) - tB.states[k]);
        tB.cross_residuals[k] = res;
        tH.cross_residuals[k] = res;
    }
    return {std::move(tB), std::move(tH)};
}

RateConversionResiduals rate_conversion_residual(const SymMatrix& G,
                                                 const SymMatrix& dGdt,
                                                 const FlowKinematics& kin) {
    // The corotational spin belongs to the half variable H = G/2 (the
    // Hencky measure), so it is evaluated there even though the rate being
    // converted is that of G itself.
    const SymMatrix H(0.5 * G.mat());
    const Matrix spin = log_spin(H, kin);
    const Matrix g_rate = dGdt.mat() + (G.mat() * spin - spin * G.mat());

    const SpectralDecomp dG = schur_decompose(G);
    const Matrix A = matrix_function(builtin("exp"), dG);
    const Matrix dAdt = derivative_exp(G, dGdt.mat(), ExpVariant::dk);
    const Matrix upc =
        upper_convected_rate(SymMatrix(A), SymMatrix(dAdt), kin);

    const Matrix core = g_rate - 2.0 * kin.D;
    RateConversionResiduals r;
    r.log_form = frobenius_norm(
        core - derivative_log(SymMatrix(A), upc, LogVariant::dk));
    r.exp_form =
        frobenius_norm(upc - derivative_exp(G, core, ExpVariant::dk));
    return r;
}

MonotonicityReport monotonicity_representation(const ScalarFn1& f,
                                               const SymMatrix& G,
                                               const SymMatrix& H) {
    if (!f.has_derivative())
        throw MathError("monotonicity_representation: " + f.name +
                        " carries no derivative");
    const SpectralDecomp dG = schur_decompose(G);
    const SpectralDecomp dH = schur_decompose(H);
    const double lo = std::min(dG.eigs[0], dH.eigs[0]);
    const double hi =
        std::max(dG.eigs[dG.dim() - 1], dH.eigs[dH.dim() - 1]);
    for (int i = 0; i <= 256; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / 256.0;
        if (!f.in_domain(x))
            throw MathError("monotonicity_representation: spectral hull "
                            "leaves the domain of " +
                            f.name);
        if (f.deriv(x) < 0.0)
            throw MathError("monotonicity_representation: " + f.name +
                            " is decreasing at x = " + std::to_string(x));
    }

    const Matrix delta = G.mat() - H.mat();
    const double value = dot(matrix_function(f, dG) - matrix_function(f, dH),
                             delta);

    auto phi = [&](double s) {
        const SymMatrix Gs(H.mat() + s * delta);
        return dot(frechet_derivative(f, schur_decompose(Gs), delta), delta) -
               value;
    };

    // The integral mean of phi over [0,1] is zero, so a sign change exists
    // (or phi vanishes identically); bracket it on a grid, then bisect.
    constexpr int kGrid = 64;
    double prev = phi(0.0);
    double best_s = 0.0, best_abs = std::abs(prev);
    double xi = -1.0;
    for (int i = 1; i <= kGrid; ++i) {
        const double s = static_cast<double>(i) / kGrid;
        const double cur = phi(s);
        if (std::abs(cur) < best_abs) {
            best_abs = std::abs(cur);
            best_s = s;
        }
        if (xi < 0.0 && (prev == 0.0 || (prev < 0.0) != (cur < 0.0))) {
            double a = static_cast<double>(i - 1) / kGrid, fa = prev;
            double b = s;
            if (fa == 0.0) {
                xi = a;
            } else {
                while (b - a > 1e-10) {
                    const double m = 0.5 * (a + b);
                    const double fm = phi(m);
                    if (fm == 0.0 || (fm < 0.0) == (fa < 0.0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                xi = 0.5 * (a + b);
            }
        }
        prev = cur;
    }
    if (xi < 0.0) xi = best_s;  // no bracket: settle for the grid minimum

    // Quadratic-form representation at the located point: the divided-
    // difference kernel of a nondecreasing f is entrywise nonnegative, so
    // this is || sqrt(kernel) .* (rotated delta) ||^2.
    const SymMatrix Gxi(H.mat() + xi * delta);
    const SpectralDecomp dxi = schur_decompose(Gxi);
    const int n = dxi.dim();
    std::vector<int> cluster_of(n);
    for (int c = 0; c < static_cast<int>(dxi.clusters.size()); ++c)
        for (int idx : dxi.clusters[c]) cluster_of[idx] = c;
    const Matrix dt = dxi.Q.transpose() * delta * dxi.Q;
    double rep = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double kernel =
                cluster_of[i] == cluster_of[j]
                    ? f.deriv(0.5 * (dxi.eigs[i] + dxi.eigs[j]))
                    : (f.eval(dxi.eigs[i]) - f.eval(dxi.eigs[j])) /
                          (dxi.eigs[i] - dxi.eigs[j]);
            rep += kernel * dt(i, j) * dt(i, j);
        }

    return {value, xi, std::abs(rep - value)};
}

SobolevReport sobolev_identity(const SymMatrix& B,
                               const std::vector<SymMatrix>& grads,
                               double r) {
    if (r == 0.0 || r == -1.0)
        throw MathError(
            "sobolev_identity: exponent must avoid 0 and -1, got " +
            std::to_string(r));
    const SpectralDecomp dB = decompose_spd(B, "sobolev_identity");
    const SpectralDecomp dL = map_eigenvalues(builtin("log"), dB);
    const ScalarFn1 power_r = builtin("power", r);
    const ScalarFn1 power_mid = builtin("power", (r + 1.0) / 2.0);
    const ScalarFn1 x_omega =
        lambda_fn("x*omega(x)", [r](double x) {
            return x == 0.0 ? 0.0 : x * guarded::omega(x, r);
        });

    SobolevReport rep{0.0, 0.0, 0.0};
    const double factor = 4.0 / ((r + 1.0) * (r + 1.0));
    for (const SymMatrix& g : grads) {
        rep.lhs +=
            dot(frechet_derivative(power_r, dB, g.mat()), g.mat()) / r;
        const Matrix mid = frechet_derivative(power_mid, dB, g.mat());
        const Matrix comm = apply_commutator_function(
            x_omega, OperatorKind::commutator, dL, mid);
        const double mid2 = dot(mid, mid);
        const double comm2 = dot(comm, comm);
        rep.rhs += factor * (mid2 + comm2);
        rep.commutator_energy += factor * comm2;
    }
    return rep;
}

GapReport logconv_gap(const SymMatrix& A, const Matrix& X, double r) {
    detail::require_square_finite(X, "logconv_gap");
    const SpectralDecomp dA = decompose_spd(A, "logconv_gap");
    if (X.rows() != dA.dim())
        throw std::invalid_argument("logconv_gap: dimension mismatch");
    const SpectralDecomp dL = map_eigenvalues(builtin("log"), dA);

    auto P = [&](double rho) {
        const ScalarFn1 h = lambda_fn(
            "eta(2(1+rho)x)", [rho](double x) {
                return guarded::eta(2.0 * (1.0 + rho) * x);
            });
        return apply_commutator_function(h, OperatorKind::commutator, dL, X);
    };
    const Matrix Pp = P(r);
    const Matrix Pm = P(-r);
    const Matrix P0 = P(0.0);

    GapReport rep{dot(Pp, Pm) - dot(P0, P0), 0.0, 0};

    const Matrix L = matrix_function(builtin("log"), dA);
    const Matrix Ah = matrix_function(builtin("power", 0.5), dA);
    const Matrix Amh = matrix_function(builtin("power", -0.5), dA);
    const double stop = 1e-14 * std::max(1.0, dot(X, X));

    Matrix Y = X;
    double geometric = 0.0;   // sum_{k=1..n} r^(2k)
    double r_pow = 1.0;       // r^(2k) running
    double factorial = 2.0;   // (2n+2)! running
    double two_pow = 2.0;     // 2^(2n+1) running
    for (int n = 1; n <= 60; ++n) {
        Y = half_commutator(L, Y);
        r_pow *= r * r;
        geometric += r_pow;
        factorial *= (2.0 * n + 1.0) * (2.0 * n + 2.0);
        two_pow *= 4.0;
        const Matrix weighted = Ah * Y * Amh;
        const double term =
            (two_pow * geometric / factorial) * dot(weighted, weighted);
        rep.series += term;
        rep.terms_used = n;
        if (term < stop) return rep;
    }
    throw MathError(
        "logconv_gap: commutator series did not reach the truncation "
        "threshold in 60 terms");
}

DissipationReport dissipation_compare(const SymMatrix& B,
                                      const std::vector<SymMatrix>& grads,
                                      int N) {
    if (N < 0)
        throw std::invalid_argument("dissipation_compare: N must be >= 0");
    const SpectralDecomp dB = decompose_spd(B, "dissipation_compare");
    const Matrix Bmh = matrix_function(builtin("power", -0.5), dB);
    const Matrix Hm = 0.5 * matrix_function(builtin("log"), dB);

    DissipationReport rep;
    rep.full = 0.0;
    std::vector<Matrix> Y;
    Y.reserve(grads.size());
    for (const SymMatrix& g : grads) {
        const Matrix w = Bmh * g.mat() * Bmh;
        rep.full += dot(w, w);
        Y.push_back(0.5 * frechet_derivative(builtin("log"), dB, g.mat()));
    }

    rep.partials.assign(N + 1, 0.0);
    double coeff = 4.0;  // 2^(4n+3)/(2n+2)! at n = 0
    double cumulative = 0.0;
    for (int n = 0; n <= N; ++n) {
        double level = 0.0;
        for (Matrix& y : Y) {
            if (n > 0) y = half_commutator(Hm, y);
            level += dot(y, y);
        }
        cumulative += coeff * level;
        rep.partials[n] = cumulative;
        coeff *= 16.0 / ((2.0 * n + 3.0) * (2.0 * n + 4.0));
    }
    return rep;
}

}  // namespace commcalc
