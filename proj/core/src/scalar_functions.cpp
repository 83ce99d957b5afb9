#include "commcalc/scalar_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "commcalc/errors.hpp"

namespace commcalc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTaylorGuard = 1e-4;  // quotient kernels switch to series here
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvTwoSqrt3 = 0.28867513459481288225;  // 1/(2 sqrt 3)

// sinh(z) - z summed as a series for |z| < 1; the direct difference loses
// ~log10(6/z^2) digits there.
double sinh_minus_series(double z) {
    const double z2 = z * z;
    double term = z * z2 / 6.0;
    double acc = term;
    for (int k = 2; k < 40; ++k) {
        term *= z2 / ((2.0 * k) * (2.0 * k + 1.0));
        acc += term;
        if (std::abs(term) < kEps * std::abs(acc)) break;
    }
    return acc;
}

// z cosh(z) - sinh(z) = sum_{k>=1} 2k z^(2k+1)/(2k+1)!, same regime.
double xcosh_minus_sinh_series(double z) {
    const double z2 = z * z;
    double term = z * z2 / 3.0;
    double acc = term;
    for (int k = 1; k < 40; ++k) {
        term *= z2 / ((2.0 * k) * (2.0 * k + 3.0));
        acc += term;
        if (std::abs(term) < kEps * std::abs(acc)) break;
    }
    return acc;
}

}  // namespace

namespace guarded {

double sinh_minus_x(double x) {
    return std::abs(x) < 1.0 ? sinh_minus_series(x) : std::sinh(x) - x;
}

double xcosh_minus_sinh(double x) {
    return std::abs(x) < 1.0 ? xcosh_minus_sinh_series(x)
                             : x * std::cosh(x) - std::sinh(x);
}

double sinch(double x) {
    const double x2 = x * x;
    if (std::abs(x) < kTaylorGuard)
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0 + x2 * x2 * x2 / 5040.0;
    return std::sinh(x) / x;
}

double sinc(double x) {
    const double x2 = x * x;
    if (std::abs(x) < kTaylorGuard)
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
    return std::sin(x) / x;
}

double tanhc(double x) {
    const double x2 = x * x;
    if (std::abs(x) < kTaylorGuard)
        return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0 -
               17.0 * x2 * x2 * x2 / 315.0;
    return std::tanh(x) / x;
}

double tanc(double x) {
    const double dist_to_pole = std::abs(std::remainder(x, kPi)) - kPi / 2.0;
    if (std::abs(dist_to_pole) < 1e-8)
        throw MathError("tanc: argument within 1e-8 of a pole of tan");
    const double x2 = x * x;
    if (std::abs(x) < kTaylorGuard)
        return 1.0 + x2 / 3.0 + 2.0 * x2 * x2 / 15.0 +
               17.0 * x2 * x2 * x2 / 315.0;
    return std::tan(x) / x;
}

double eta(double x) {
    if (x == 0.0) return 1.0;
    return std::expm1(x) / x;
}

double eta_deriv(double x) {
    if (std::abs(x) < 0.02) {
        // d/dx sum x^n/(n+1)! ; truncation at x^6 is below one ulp here.
        return 0.5 + x / 3.0 + x * x / 8.0 + x * x * x / 30.0 +
               x * x * x * x / 144.0 + x * x * x * x * x / 840.0 +
               x * x * x * x * x * x / 5760.0;
    }
    return (std::exp(x) - eta(x)) / x;
}

double inv_eta(double x) {
    const double x2 = x * x;
    if (std::abs(x) < kTaylorGuard)
        return 1.0 - x / 2.0 + x2 / 12.0 - x2 * x2 / 720.0 +
               x2 * x2 * x2 / 30240.0;
    return x / std::expm1(x);
}

double x_over_sinh(double x) {
    const double x2 = x * x;
    if (std::abs(x) < kTaylorGuard)
        return 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0 -
               31.0 * x2 * x2 * x2 / 15120.0;
    return x / std::sinh(x);
}

double x_over_tanh(double x) {
    const double x2 = x * x;
    if (std::abs(x) < kTaylorGuard)
        return 1.0 + x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0;
    return x / std::tanh(x);
}

double langevin(double x) {
    const double ax = std::abs(x);
    const double x2 = x * x;
    if (ax < kTaylorGuard) return x / 3.0 - x * x2 / 45.0;
    if (ax > 30.0) return 1.0 / std::tanh(x) - 1.0 / x;
    return xcosh_minus_sinh(x) / (x * std::sinh(x));
}

double langevin_deriv(double x) {
    const double x2 = x * x;
    if (std::abs(x) < kTaylorGuard)
        return 1.0 / 3.0 - x2 / 15.0 + 2.0 * x2 * x2 / 189.0;
    const double s = std::sinh(x);
    if (!std::isfinite(s)) return 1.0 / x2;  // coth' ~ 0 far out
    return sinh_minus_x(x) * (s + x) / (x2 * s * s);
}

double mu(double x) {
    const double ax = std::abs(x);
    const double x2 = x * x;
    if (ax < kTaylorGuard) return 1.0 / 3.0 - x2 / 45.0 + 2.0 * x2 * x2 / 945.0;
    if (ax > 30.0) return 1.0 / (x * std::tanh(x)) - 1.0 / x2;
    return xcosh_minus_sinh(x) / (x2 * std::sinh(x));
}

double nu(double x) {
    const double ax = std::abs(x);
    const double x2 = x * x;
    if (ax < kTaylorGuard)
        return 1.0 / 6.0 - 7.0 * x2 / 360.0 + 31.0 * x2 * x2 / 15120.0;
    if (ax > 30.0) return 1.0 / x2 - 1.0 / (x * std::sinh(x));
    return sinh_minus_x(x) / (x2 * std::sinh(x));
}

double theta(double x) {
    const double ax = std::abs(x);
    if (ax < kTaylorGuard) return -2.0 * x / 3.0 + 14.0 * x * x * x / 45.0;
    if (ax > 30.0) {
        const double s2 = std::sinh(2.0 * x);
        return (std::isfinite(s2) ? 2.0 / s2 : 0.0) - 1.0 / x;
    }
    return -sinh_minus_x(2.0 * x) / (x * std::sinh(2.0 * x));
}

double omega(double x, double r) {
    if (r == 0.0 || r == -1.0)
        throw MathError("omega: parameter r must avoid 0 and -1");
    if (x == 0.0) return std::abs(r - 1.0) * kInvTwoSqrt3;

    const double half_sum = (r + 1.0) * x / 2.0;   // argument pairing the poles
    const double half_dif = (r - 1.0) * x / 2.0;
    double radicand;
    if (std::abs(half_sum) < 0.3 && std::abs(half_dif) < 0.3) {
        // omega^2 = N/D with the m = 1 term of N cancelling identically;
        // summing it in floating point would poison the result, so the
        // series starts at m = 2.
        const double a2 = half_sum * half_sum;
        const double b2 = half_dif * half_dif;
        const double wa = (r - 1.0) * (r - 1.0);
        const double wb = (r + 1.0) * (r + 1.0);
        double pa = a2 * a2;  // half_sum^(2m) at m = 2
        double pb = b2 * b2;
        double cm = 8.0 / 24.0;  // 2^(2m-1)/(2m)! at m = 2
        double num = 0.0;
        for (int m = 2; m < 40; ++m) {
            const double term = cm * (wa * pa - wb * pb);
            num += term;
            if (std::abs(term) < kEps * std::abs(num) + 1e-300) break;
            pa *= a2;
            pb *= b2;
            cm *= 4.0 / ((2.0 * m + 1.0) * (2.0 * m + 2.0));
        }
        const double sh = std::sinh(half_sum);
        radicand = num / (4.0 * r * x * x * sh * sh);
    } else {
        const double sh = std::sinh(half_sum);
        radicand = (r + 1.0) * (r + 1.0) * std::sinh(r * x) * std::sinh(x) /
                       (4.0 * r * x * x * sh * sh) -
                   1.0 / (x * x);
    }
    return std::sqrt(std::max(radicand, 0.0));
}

double coshm1(double x) {
    const double s = std::sinh(x / 2.0);
    return 2.0 * s * s;
}

double cosm1(double x) {
    const double s = std::sin(x / 2.0);
    return -2.0 * s * s;
}

double sinh_ratio(double a, double b, double x) {
    return (a / b) * sinch(a * x) / sinch(b * x);
}

double tanh_ratio(double a, double b, double x) {
    return (a / b) * tanhc(a * x) / tanhc(b * x);
}

}  // namespace guarded

namespace {

// sinh_minus_x(x)/x and coshm1(x)/x with the 0/0 at the origin removed.
double sinh_minus_over_x(double x) {
    const double x2 = x * x;
    if (std::abs(x) < 1e-2) return x2 / 6.0 + x2 * x2 / 120.0 + x2 * x2 * x2 / 5040.0;
    return guarded::sinh_minus_x(x) / x;
}

double coshm1_over_x(double x) {
    const double x2 = x * x;
    if (std::abs(x) < 1e-2) return x / 2.0 + x * x2 / 24.0 + x * x2 * x2 / 720.0;
    return guarded::coshm1(x) / x;
}

ScalarFn1 make_fn(std::string name, std::function<double(double)> eval) {
    ScalarFn1 f;
    f.name = std::move(name);
    f.eval = std::move(eval);
    return f;
}

double require_param(const std::string& name, std::optional<double> param) {
    if (!param)
        throw std::invalid_argument("builtin: " + name +
                                    " requires a real parameter");
    return *param;
}

}  // namespace

ScalarFn1 builtin(const std::string& name, std::optional<double> param) {
    using Parity = ScalarFn1::Parity;
    ScalarFn1 f;

    if (param && name != "power" && name != "omega")
        throw std::invalid_argument("builtin: " + name +
                                    " does not take a parameter");

    if (name == "exp") {
        f = make_fn(name, [](double x) { return std::exp(x); });
        f.deriv = [](double x) { return std::exp(x); };
        f.odd_part = [](double x) { return std::sinh(x); };
        f.even_less_f0 = guarded::coshm1;
    } else if (name == "log") {
        f = make_fn(name, [](double x) { return std::log(x); });
        f.deriv = [](double x) { return 1.0 / x; };
        f.domain = [](double x) { return x > 0.0; };
    } else if (name == "power") {
        const double r = require_param(name, param);
        f = make_fn(name, [r](double x) { return std::pow(x, r); });
        f.deriv = [r](double x) { return r * std::pow(x, r - 1.0); };
        const bool integral = std::floor(r) == r;
        if (integral) {
            f.parity = std::fmod(r, 2.0) == 0.0 ? Parity::even : Parity::odd;
            if (r < 0.0) f.domain = [](double x) { return x != 0.0; };
        } else if (r > 0.0) {
            f.domain = [](double x) { return x >= 0.0; };
        } else {
            f.domain = [](double x) { return x > 0.0; };
        }
    } else if (name == "cosh") {
        f = make_fn(name, [](double x) { return std::cosh(x); });
        f.deriv = [](double x) { return std::sinh(x); };
        f.parity = Parity::even;
        f.even_less_f0 = guarded::coshm1;
    } else if (name == "sinh") {
        f = make_fn(name, [](double x) { return std::sinh(x); });
        f.deriv = [](double x) { return std::cosh(x); };
        f.parity = Parity::odd;
    } else if (name == "cos") {
        f = make_fn(name, [](double x) { return std::cos(x); });
        f.deriv = [](double x) { return -std::sin(x); };
        f.parity = Parity::even;
        f.even_less_f0 = guarded::cosm1;
    } else if (name == "sin") {
        f = make_fn(name, [](double x) { return std::sin(x); });
        f.deriv = [](double x) { return std::cos(x); };
        f.parity = Parity::odd;
    } else if (name == "tanh") {
        f = make_fn(name, [](double x) { return std::tanh(x); });
        f.deriv = [](double x) {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        };
        f.parity = Parity::odd;
    } else if (name == "eta") {
        f = make_fn(name, guarded::eta);
        f.deriv = guarded::eta_deriv;
        f.removable = {{0.0, 1.0}};
        f.odd_part = coshm1_over_x;
        f.even_less_f0 = sinh_minus_over_x;
    } else if (name == "inv_eta") {
        f = make_fn(name, guarded::inv_eta);
        f.deriv = [](double x) {
            const double e = guarded::eta(x);
            return -guarded::eta_deriv(x) / (e * e);
        };
        f.removable = {{0.0, 1.0}};
    } else if (name == "mu") {
        f = make_fn(name, guarded::mu);
        f.removable = {{0.0, 1.0 / 3.0}};
        f.parity = Parity::even;
    } else if (name == "nu") {
        f = make_fn(name, guarded::nu);
        f.removable = {{0.0, 1.0 / 6.0}};
        f.parity = Parity::even;
    } else if (name == "langevin" || name == "coth_minus") {
        f = make_fn(name, guarded::langevin);
        f.deriv = guarded::langevin_deriv;
        f.removable = {{0.0, 0.0}};
        f.parity = Parity::odd;
    } else if (name == "theta") {
        f = make_fn(name, guarded::theta);
        f.removable = {{0.0, 0.0}};
        f.parity = Parity::odd;
    } else if (name == "omega") {
        const double r = require_param(name, param);
        if (r == 0.0 || r == -1.0)
            throw MathError("builtin: omega parameter must avoid 0 and -1");
        f = make_fn(name, [r](double x) { return guarded::omega(x, r); });
        f.removable = {{0.0, std::abs(r - 1.0) * kInvTwoSqrt3}};
        f.parity = Parity::even;
    } else if (name == "sinch") {
        f = make_fn(name, guarded::sinch);
        f.removable = {{0.0, 1.0}};
        f.parity = Parity::even;
        f.even_less_f0 = sinh_minus_over_x;
    } else if (name == "x_over_sinh") {
        f = make_fn(name, guarded::x_over_sinh);
        f.removable = {{0.0, 1.0}};
        f.parity = Parity::even;
        f.even_less_f0 = [](double x) {
            return x == 0.0 ? 0.0 : -guarded::sinh_minus_x(x) / std::sinh(x);
        };
    } else if (name == "x_over_tanh") {
        f = make_fn(name, guarded::x_over_tanh);
        f.removable = {{0.0, 1.0}};
        f.parity = Parity::even;
        f.even_less_f0 = [](double x) {
            return x == 0.0 ? 0.0
                            : guarded::xcosh_minus_sinh(x) / std::sinh(x);
        };
    } else {
        throw std::invalid_argument("builtin: unknown function '" + name + "'");
    }

    // Reject out-of-domain evaluation loudly instead of returning NaN.
    if (f.domain) {
        auto raw = f.eval;
        auto dom = f.domain;
        auto fname = f.name;
        f.eval = [raw, dom, fname](double x) {
            if (!dom(x))
                throw MathError(fname + ": argument " + std::to_string(x) +
                                " outside the function domain");
            return raw(x);
        };
    }
    return f;
}

double divided_difference(const ScalarFn1& f, double x, double y, double scale,
                          double tau) {
    if (std::abs(x - y) > tau * scale)
        return (f.eval(x) - f.eval(y)) / (x - y);
    if (!f.has_derivative())
        throw MathError("divided_difference: " + f.name +
                        " carries no derivative for the confluent branch");
    return f.deriv(0.5 * (x + y));
}

OddEvenSplit odd_even_split(const ScalarFn1& f) {
    using Parity = ScalarFn1::Parity;
    if (!f.in_domain(0.0))
        throw MathError("odd_even_split: " + f.name +
                        " is undefined at 0; the split needs a symmetric "
                        "domain around the origin");
    OddEvenSplit s;
    s.f0 = f.eval(0.0);

    s.odd.name = f.name + "_odd";
    s.odd.parity = Parity::odd;
    if (f.odd_part) {
        s.odd.eval = f.odd_part;
    } else if (f.parity == Parity::odd) {
        s.odd.eval = f.eval;
    } else if (f.parity == Parity::even) {
        s.odd.eval = [](double) { return 0.0; };
    } else {
        auto e = f.eval;
        s.odd.eval = [e](double x) { return 0.5 * (e(x) - e(-x)); };
    }

    s.even.name = f.name + "_even";
    s.even.parity = Parity::even;
    s.even_is_stable = static_cast<bool>(f.even_less_f0) ||
                       f.parity == Parity::odd ||
                       (f.parity == Parity::even && s.f0 == 0.0);
    if (f.even_less_f0) {
        s.even.eval = f.even_less_f0;
    } else if (f.parity == Parity::odd) {
        s.even.eval = [](double) { return 0.0; };
    } else {
        auto e = f.eval;
        const double f0 = s.f0;
        if (f.parity == Parity::even)
            s.even.eval = [e, f0](double x) { return e(x) - f0; };
        else
            s.even.eval = [e, f0](double x) {
                return 0.5 * (e(x) + e(-x)) - f0;
            };
    }

    if (f.deriv) {
        auto d = f.deriv;
        s.odd.deriv = [d](double x) { return 0.5 * (d(x) + d(-x)); };
        s.even.deriv = [d](double x) { return 0.5 * (d(x) - d(-x)); };
    }
    if (f.domain) {
        auto dom = f.domain;
        auto sym = [dom](double x) { return dom(x) && dom(-x); };
        s.odd.domain = sym;
        s.even.domain = sym;
    }
    return s;
}

}  // namespace commcalc
