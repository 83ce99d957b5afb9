#pragma once

#include <utility>
#include <vector>

#include "commcalc/matrix.hpp"
#include "commcalc/scalar_functions.hpp"

namespace commcalc {

// Velocity-gradient split: D is the stretching (symmetric part), W the
// vorticity (antisymmetric part).
struct FlowKinematics {
    Matrix gradv;
    Matrix D;
    Matrix W;
};

FlowKinematics make_kinematics(const Matrix& gradv);

// Time-dependent velocity gradients for the standard rheometric flows.
// Shear flows place the rate in the (0,1) entry of the top-left 2x2 block;
// planar extension stretches axis 0 and compresses axis 1.
struct FlowProtocol {
    enum class Kind { constant, shear, extension, sin_shear };
    Kind kind = Kind::constant;
    double rate = 0.0;
    double frequency = 0.0;  // cycles per unit time, sin_shear only
    Matrix constant_gradv;   // Kind::constant only

    Matrix gradv(double t, int dim) const;
};

enum class StateRep { conformation, hencky };

enum class ConstitutiveModel {
    oldroyd_B,        // evolves the conformation tensor B
    log_oldroyd,      // evolves H = log(B)/2, exact reformulation
    linearized_log,   // evolves H with the relaxation linearized to -H/tau
    giesekus_interp   // evolves B with relaxation -B log(B)/tau
};

struct MaterialState {
    StateRep rep = StateRep::conformation;
    Matrix value;
    double time = 0.0;
};

// Spin tensor W - f(ad_H)D for odd f; log_spin fixes f to the Langevin
// function of the doubled commutator, the choice that makes the
// Hencky-variable evolution exactly corotational.
Matrix generalized_spin(const ScalarFn1& f_odd, const SymMatrix& H,
                        const FlowKinematics& kin);
Matrix log_spin(const SymMatrix& H, const FlowKinematics& kin);

// Material-point objective rates.  Advective transport is the caller's
// business: dBdt/dHdt already contain it.
Matrix upper_convected_rate(const SymMatrix& B, const SymMatrix& dBdt,
                            const FlowKinematics& kin);
Matrix log_rate(const SymMatrix& H, const SymMatrix& dHdt,
                const FlowKinematics& kin);

Matrix constitutive_rhs(const MaterialState& state, const FlowKinematics& kin,
                        double tau, ConstitutiveModel model);

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;
    std::vector<double> cross_residuals;  // zero unless produced by a pair
};

// Classical fixed-step fourth-order Runge-Kutta; positive definiteness is
// monitored every step for conformation-variable models.
Trajectory integrate(const MaterialState& state0, const FlowProtocol& proto,
                     double tau, ConstitutiveModel model, double dt, double T);

// Integrates a conformation-variable model and a Hencky-variable model
// side by side from the same initial conformation B0, recording
// ||e^(2H) - B||_F at every sample as the cross residual of both runs.
std::pair<Trajectory, Trajectory> integrate_paired(
    const Matrix& B0, const FlowProtocol& proto, double tau,
    ConstitutiveModel conformation_model, ConstitutiveModel hencky_model,
    double dt, double T);

// Consistency of the two evolution forms for G = 2H: the corotational rate
// of G minus 2D must equal the logarithm derivative of the upper-convected
// rate of A = e^G, and conversely through the exponential derivative.
struct RateConversionResiduals {
    double log_form;  // corotational-rate identity residual
    double exp_form;  // upper-convected identity residual
};

RateConversionResiduals rate_conversion_residual(const SymMatrix& G,
                                                 const SymMatrix& dGdt,
                                                 const FlowKinematics& kin);

// <f(G) - f(H), G - H> with its mean-value representation: xi in [0,1] is
// located so that the divided-difference quadratic form of f at
// H + xi (G - H) reproduces the inner product.
struct MonotonicityReport {
    double value;
    double xi;
    double residual;
};

MonotonicityReport monotonicity_representation(const ScalarFn1& f,
                                               const SymMatrix& G,
                                               const SymMatrix& H);

// Pointwise identity splitting the power-gradient energy into a plain
// gradient part and a commutator part.
struct SobolevReport {
    double lhs;
    double rhs;
    double commutator_energy;
};

SobolevReport sobolev_identity(const SymMatrix& B,
                               const std::vector<SymMatrix>& grads, double r);

// Log-convexity gap <P(r)X, P(-r)X> - ||P(0)X||^2 and its everywhere-
// nonnegative commutator series.
struct GapReport {
    double gap;
    double series;
    int terms_used;
};

GapReport logconv_gap(const SymMatrix& A, const Matrix& X, double r);

// Entropy-production comparison: the full weighted gradient norm versus
// the cumulative partial sums of its commutator expansion.
struct DissipationReport {
    double full;
    std::vector<double> partials;  // cumulative, indices 0..N
};

DissipationReport dissipation_compare(const SymMatrix& B,
                                      const std::vector<SymMatrix>& grads,
                                      int N);

}  // namespace commcalc
