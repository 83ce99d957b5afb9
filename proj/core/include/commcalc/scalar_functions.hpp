#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace commcalc {

// Default relative tolerance deciding when two eigenvalues count as one.
// sqrt of double epsilon: balances branch error against cancellation error.
inline constexpr double kClusterTol = 1e-8;

struct RemovablePoint {
    double location;
    double extension;  // the two-sided limit substituted at `location`
};

// Scalar function of one real variable.  `eval` is total on the declared
// domain; continuous extensions at removable singularities are baked in.
// `deriv` may be empty.  `parity` and the exact split parts, when present,
// let downstream code evaluate f_odd and f_even - f(0) without the
// catastrophic cancellation of the generic (f(x) +- f(-x))/2 differences.
struct ScalarFn1 {
    enum class Parity { none, odd, even };

    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::function<bool(double)> domain;  // empty = all of R
    std::vector<RemovablePoint> removable;
    Parity parity = Parity::none;
    std::function<double(double)> odd_part;       // f_odd, stable form
    std::function<double(double)> even_less_f0;   // f_even, stable form

    bool has_derivative() const { return static_cast<bool>(deriv); }
    bool in_domain(double x) const { return !domain || domain(x); }
};

// Scalar function of two variables, extensions on removable loci included.
struct ScalarFn2 {
    std::string name;
    std::function<double(double, double)> eval;
};

// f = f0 + f_odd + f_even with f_odd(-x) = -f_odd(x), f_even even and
// f_even(0) = 0.  `even_is_stable` records whether f_even is evaluated in a
// cancellation-free form near 0; when it is not, quotients f_even(t)/t^2
// need a derivative-based fallback for small t.
struct OddEvenSplit {
    double f0;
    ScalarFn1 odd;
    ScalarFn1 even;
    bool even_is_stable = false;
};

// Catalog lookup.  Known names: eta, inv_eta, mu, nu, langevin, theta,
// omega (needs r, r not in {0,-1}), sinch, x_over_sinh, x_over_tanh, exp,
// log, power (needs r), cosh, sinh, cos, sin, tanh, coth_minus (= langevin).
// Unknown names throw std::invalid_argument; bad omega parameters throw
// MathError.
ScalarFn1 builtin(const std::string& name,
                  std::optional<double> param = std::nullopt);

// (f(x) - f(y))/(x - y), replaced by f'((x+y)/2) when |x - y| <= tau * scale.
// Exactly symmetric in (x, y).  Throws MathError if the derivative branch is
// required but f carries no derivative.
double divided_difference(const ScalarFn1& f, double x, double y, double scale,
                          double tau = kClusterTol);

OddEvenSplit odd_even_split(const ScalarFn1& f);

// Guarded scalar kernels.  Each is evaluated through a series or a
// rewritten form near its removable point, keeping relative error at a few
// ulp on all of R; raw quotients would lose up to half the digits.
namespace guarded {

double sinch(double x);         // sinh(x)/x
double sinc(double x);          // sin(x)/x
double tanhc(double x);         // tanh(x)/x
double tanc(double x);          // tan(x)/x, MathError within 1e-8 of a pole
double eta(double x);           // (e^x - 1)/x
double eta_deriv(double x);
double inv_eta(double x);       // x/(e^x - 1)
double x_over_sinh(double x);
double x_over_tanh(double x);
double langevin(double x);      // coth(x) - 1/x
double langevin_deriv(double x);
double mu(double x);            // 1/(x tanh x) - 1/x^2
double nu(double x);            // 1/x^2 - 1/(x sinh x)
double theta(double x);         // 2/sinh(2x) - 1/x
double omega(double x, double r);
double coshm1(double x);        // cosh(x) - 1 = 2 sinh^2(x/2)
double cosm1(double x);         // cos(x) - 1 = -2 sin^2(x/2)
double sinh_minus_x(double x);  // sinh(x) - x, series-summed
double xcosh_minus_sinh(double x);

// sinh(a x)/sinh(b x) and tanh(a x)/tanh(b x) as whole functions of x,
// finite at x = 0 (limit a/b).
double sinh_ratio(double a, double b, double x);
double tanh_ratio(double a, double b, double x);

}  // namespace guarded

}  // namespace commcalc
