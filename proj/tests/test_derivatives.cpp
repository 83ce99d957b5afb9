#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "commcalc/derivatives.hpp"
#include "commcalc/errors.hpp"
#include "commcalc/scalar_functions.hpp"
#include "commcalc/spectral.hpp"
#include "commcalc_testing/oracles.hpp"
#include "commcalc_testing/random.hpp"

using namespace commcalc;
using testing::Rng;

namespace {
double rel(const Matrix& diff, const Matrix& ref) {
    return frobenius_norm(diff) / std::max(1.0, frobenius_norm(ref));
}
}  // namespace

TEST_CASE("derivative at the identity base echoes the direction") {
    Rng rng(41);
    const Matrix X = testing::random_general(rng, 3);
    const SymMatrix I(Matrix::Identity(3, 3));
    CHECK(rel(derivative_log(I, X, LogVariant::dk) - X, X) <= 1e-13);
    CHECK(rel(derivative_power(I, 3.0, X, PowerVariant::dk) - 3.0 * X, X) <=
          1e-13);
}

TEST_CASE("exponential derivative at a diagonal base") {
    // At diag(a, b) the derivative multiplies entry (i, j) by the exp
    // divided difference of the eigenvalue pair.
    Matrix g(2, 2);
    g << 0.3, 0.0, 0.0, 1.1;
    Matrix x(2, 2);
    x << 1.0, 1.0, 1.0, 1.0;
    const Matrix out =
        derivative_exp(SymMatrix(g), x, ExpVariant::integral_E0);
    CHECK(out(0, 0) == doctest::Approx(std::exp(0.3)).epsilon(1e-12));
    CHECK(out(1, 1) == doctest::Approx(std::exp(1.1)).epsilon(1e-12));
    const double dd = (std::exp(1.1) - std::exp(0.3)) / 0.8;
    CHECK(out(0, 1) == doctest::Approx(dd).epsilon(1e-12));
    CHECK(out(1, 0) == doctest::Approx(dd).epsilon(1e-12));
}

TEST_CASE("log and power derivatives require a positive definite base") {
    // The precondition is uniform across variants: the commutator-split
    // routes run through log(A), so every route demands positivity even
    // when the exponent alone would not.
    Rng rng(42);
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = -0.5;
    const SymMatrix bad(m);
    const Matrix X = testing::random_general(rng, 2);
    CHECK_THROWS_AS(derivative_log(bad, X, LogVariant::dk), MathError);
    CHECK_THROWS_AS(derivative_power(bad, 0.5, X, PowerVariant::dk),
                    MathError);
    CHECK_THROWS_AS(derivative_power(bad, 2.0, X, PowerVariant::dk),
                    MathError);
    // The plain Frechet machinery still differentiates entire functions
    // (here x^2) at indefinite bases.
    const Matrix fd = frechet_derivative(builtin("power", 2.0), bad, X);
    const Matrix exact = bad.mat() * X + X * bad.mat();
    CHECK(frobenius_norm(fd - exact) <= 1e-12);
}

TEST_CASE("finite-difference oracle confirms the spectral derivative") {
    Rng rng(43);
    const SymMatrix G = testing::random_symmetric(rng, 3, 0.6);
    const SymMatrix X = testing::random_symmetric(rng, 3);
    const Matrix fd = testing::finite_difference_frechet(builtin("exp"), G, X);
    CHECK(rel(derivative_exp(G, X.mat(), ExpVariant::dk) - fd, fd) <= 1e-6);
}

TEST_CASE("variant formulas agree across routes") {
    Rng rng(44);
    const SymMatrix A = testing::random_spd(rng, 3, 0.4, 4.0);
    const Matrix Y = testing::random_general(rng, 3);
    const Matrix ref = derivative_log(A, Y, LogVariant::dk);
    for (LogVariant v : {LogVariant::integral_L5, LogVariant::integral_L6,
                         LogVariant::left_L1, LogVariant::right_L2,
                         LogVariant::anticomm_L3, LogVariant::exp_ac_L4,
                         LogVariant::inverse_of_dexp_L0})
        CHECK(rel(derivative_log(A, Y, v) - ref, ref) <= 1e-10);
}

TEST_CASE("power-sum route accepts only natural exponents") {
    Rng rng(45);
    const SymMatrix A = testing::random_spd(rng, 3, 0.5, 3.0);
    const Matrix X = testing::random_general(rng, 3);
    CHECK(rel(derivative_power(A, 4.0, X, PowerVariant::sum_PP00) -
                  derivative_power(A, 4.0, X, PowerVariant::dk),
              X) <= 1e-10);
    CHECK_THROWS_AS(derivative_power(A, 2.5, X, PowerVariant::sum_PP00),
                    MathError);
}

TEST_CASE("exp and log derivatives invert each other") {
    Rng rng(46);
    const SymMatrix G = testing::random_symmetric(rng, 3, 0.8);
    const Matrix X = testing::random_general(rng, 3);
    const Matrix A = matrix_function(builtin("exp"), G);
    const Matrix back = derivative_log(
        SymMatrix(A), derivative_exp(G, X, ExpVariant::dk),
        LogVariant::inverse_of_dexp_L0);
    CHECK(rel(back - X, X) <= 1e-9);
}

TEST_CASE("chain rule of the commutator representation") {
    Rng rng(47);
    const SymMatrix G = testing::random_symmetric(rng, 3, 0.7);
    const Matrix X = testing::random_general(rng, 3);
    CHECK(chain_rule_commutator(builtin("exp"), G, X) <=
          1e-10 * std::max(1.0, frobenius_norm(X)));
}

TEST_CASE("two-sided power sandwich") {
    Rng rng(48);
    const SymMatrix A = testing::random_spd(rng, 3, 0.5, 3.0);
    const SpectralDecomp dec = schur_decompose(A);
    const Matrix X = testing::random_general(rng, 3);
    const Matrix direct = matrix_function(builtin("power", 0.7), dec) * X *
                          matrix_function(builtin("power", -0.4), dec);
    CHECK(rel(hadamard_identity(A, 0.7, -0.4, X) - direct, direct) <= 1e-10);
}

TEST_CASE("applied log derivative: the minus combination is a commutator") {
    Rng rng(49);
    const SymMatrix A = testing::random_spd(rng, 3, 0.5, 3.0);
    const Matrix X = testing::random_general(rng, 3);
    const Matrix L = matrix_function(builtin("log"), A);
    CHECK(rel(dlog_applied(A, 1.0, 0.0, X, CombineSign::minus) -
                  (L * X - X * L),
              X) <= 1e-11);
    // Commuting direction: the plus combination collapses to 2X.
    const Matrix P = A.mat() * A.mat() + 0.5 * A.mat();
    CHECK(rel(dlog_applied(A, 1.0, 0.0, P, CombineSign::plus) - 2.0 * P, P) <=
          1e-10);
}

TEST_CASE("string-keyed dispatch mirrors the typed interface") {
    Rng rng(50);
    const SymMatrix G = testing::random_symmetric(rng, 3, 0.6);
    const Matrix X = testing::random_general(rng, 3);
    const Matrix via_string =
        evaluate_derivative({"exp", std::nullopt, "E4", G, X});
    CHECK(rel(via_string - derivative_exp(G, X, ExpVariant::exp_ac_E4),
              via_string) <= 1e-15);
    CHECK_THROWS_AS(
        evaluate_derivative({"exp", std::nullopt, "L1", G, X}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        evaluate_derivative({"gamma", std::nullopt, "dk", G, X}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        evaluate_derivative({"power", std::nullopt, "dk", G, X}),
        std::invalid_argument);
}
