// Microbenchmarks for the hot paths: spectral decomposition, operator
// application, the competing derivative routes, closed-form evaluation, and
// one constitutive integration step.

#include <benchmark/benchmark.h>

#include "commcalc/bivariate.hpp"
#include "commcalc/closed_form.hpp"
#include "commcalc/derivatives.hpp"
#include "commcalc/matrix.hpp"
#include "commcalc/mechanics.hpp"
#include "commcalc/scalar_functions.hpp"
#include "commcalc/spectral.hpp"
#include "commcalc_testing/random.hpp"

using namespace commcalc;
using namespace commcalc::testing;

namespace {

SymMatrix fixed_symmetric(int d, double scale = 1.0) {
    Rng rng(2026);
    return random_symmetric(rng, d, scale);
}

SymMatrix fixed_spd(int d) {
    Rng rng(2027);
    return random_spd(rng, d, 0.4, 4.0);
}

Matrix fixed_general(int d) {
    Rng rng(2028);
    return random_general(rng, d);
}

void bm_schur_decompose(benchmark::State& state) {
    const SymMatrix G = fixed_symmetric(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(schur_decompose(G));
}
BENCHMARK(bm_schur_decompose)->Arg(2)->Arg(3)->Arg(8)->Arg(32);

void bm_apply_commutator_function(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const SpectralDecomp dec = schur_decompose(fixed_symmetric(d));
    const Matrix X = fixed_general(d);
    const ScalarFn1 f = builtin("langevin");
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_commutator_function(
            f, OperatorKind::commutator, dec, X));
}
BENCHMARK(bm_apply_commutator_function)->Arg(3)->Arg(8)->Arg(32);

void bm_closed_form_route(benchmark::State& state) {
    const SymMatrix G = fixed_symmetric(3);
    const Matrix X = fixed_general(3);
    const ScalarFn1 f = builtin("tanh");
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_closed_form(f, G, X));
}
BENCHMARK(bm_closed_form_route);

void bm_spectral_route(benchmark::State& state) {
    const SymMatrix G = fixed_symmetric(3);
    const Matrix X = fixed_general(3);
    const ScalarFn1 f = builtin("tanh");
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_commutator_function(
            f, OperatorKind::commutator, schur_decompose(G), X));
}
BENCHMARK(bm_spectral_route);

void bm_derivative_exp_dk(benchmark::State& state) {
    const SymMatrix G = fixed_symmetric(3, 0.7);
    const Matrix X = fixed_general(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(derivative_exp(G, X, ExpVariant::dk));
}
BENCHMARK(bm_derivative_exp_dk);

void bm_derivative_exp_quadrature(benchmark::State& state) {
    const SymMatrix G = fixed_symmetric(3, 0.7);
    const Matrix X = fixed_general(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            derivative_exp(G, X, ExpVariant::integral_E0));
}
BENCHMARK(bm_derivative_exp_quadrature);

void bm_derivative_log_inversion(benchmark::State& state) {
    const SymMatrix A = fixed_spd(3);
    const Matrix X = fixed_general(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            derivative_log(A, X, LogVariant::inverse_of_dexp_L0));
}
BENCHMARK(bm_derivative_log_inversion);

void bm_integrate_step(benchmark::State& state) {
    FlowProtocol shear;
    shear.kind = FlowProtocol::Kind::shear;
    shear.rate = 1.0;
    const MaterialState s0{StateRep::conformation, Matrix::Identity(2, 2),
                           0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(
            s0, shear, 1.0, ConstitutiveModel::oldroyd_B, 0.005, 0.005));
}
BENCHMARK(bm_integrate_step);

}  // namespace

BENCHMARK_MAIN();
