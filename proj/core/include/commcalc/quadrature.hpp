#pragma once

#include <array>
#include <type_traits>

namespace commcalc::quadrature {

// 64-point Gauss-Legendre rule mapped to [0, 1].  Exact for polynomials up
// to degree 127; for the analytic integrands used here (entire in the
// integration variable on bounded spectral ranges) the error is far below
// 1e-14 at the matrix scales the library accepts.
inline constexpr int kGaussLegendreN = 64;

inline constexpr std::array<double, 64> kGaussLegendreNodes = {
    3.47479132113914790e-04, 1.82994161402239008e-03,
    4.49331426162785652e-03, 8.33187305768701147e-03,
    1.33365861050445123e-02, 1.94956001739731155e-02,
    2.67943125707986174e-02, 3.52154139340302152e-02,
    4.47389314607485877e-02, 5.53422770024429300e-02,
    6.70003009229536151e-02, 7.96853518737098421e-02,
    9.33673424386012307e-02, 1.08013820528329307e-01,
    1.23590046369734030e-01, 1.40059074914194615e-01,
    1.57381843472883365e-01, 1.75517264372671344e-01,
    1.94422322413803361e-01, 2.14052176898683000e-01,
    2.34360267990052717e-01, 2.55298427146473550e-01,
    2.76816991373267984e-01, 2.98864921018004215e-01,
    3.21389920831165909e-01, 3.44338564004894487e-01,
    3.67656418895616288e-01, 3.91288178129996445e-01,
    4.15177789788003571e-01, 4.39268590351939714e-01,
    4.63503439106100479e-01, 4.87824853668287761e-01,
    5.12175146331712239e-01, 5.36496560893899521e-01,
    5.60731409648060231e-01, 5.84822210211996429e-01,
    6.08711821870003500e-01, 6.32343581104383712e-01,
    6.55661435995105513e-01, 6.78610079168834091e-01,
    7.01135078981995785e-01, 7.23183008626732016e-01,
    7.44701572853526450e-01, 7.65639732009947283e-01,
    7.85947823101317056e-01, 8.05577677586196694e-01,
    8.24482735627328656e-01, 8.42618156527116691e-01,
    8.59940925085805441e-01, 8.76409953630265970e-01,
    8.91986179471670693e-01, 9.06632657561398769e-01,
    9.20314648126290158e-01, 9.32999699077046385e-01,
    9.44657722997557014e-01, 9.55261068539251412e-01,
    9.64784586065969840e-01, 9.73205687429201438e-01,
    9.80504399826026884e-01, 9.86663413894955488e-01,
    9.91668126942312989e-01, 9.95506685738372088e-01,
    9.98170058385977610e-01, 9.99652520867886141e-01,
};

inline constexpr std::array<double, 64> kGaussLegendreWeights = {
    8.91640360847107587e-04, 2.07351663028146165e-03,
    3.25222898448982714e-03, 4.42337991318219551e-03,
    5.58406973006573323e-03, 6.73152394835911574e-03,
    7.86301523801254121e-03, 8.97585788784865078e-03,
    1.00674115767650472e-02, 1.11350869041915036e-02,
    1.21763512843554265e-02, 1.31887348575273136e-02,
    1.41698363071298510e-02, 1.51173285362012477e-02,
    1.60289641774257266e-02, 1.69025809185708933e-02,
    1.77361066284411617e-02, 1.85275642701200755e-02,
    1.92750765893077956e-02, 1.99768705663601748e-02,
    2.06312816213117430e-02, 2.12367575618267988e-02,
    2.17918622646617322e-02, 2.22952790818782727e-02,
    2.27458139637090571e-02, 2.31423982906571873e-02,
    2.34840914081049998e-02, 2.37700828574151507e-02,
    2.39996942982291586e-02, 2.41723811174014772e-02,
    2.42877337207517280e-02, 2.43454785045698757e-02,
    2.43454785045698757e-02, 2.42877337207517280e-02,
    2.41723811174014772e-02, 2.39996942982291586e-02,
    2.37700828574151507e-02, 2.34840914081049998e-02,
    2.31423982906571873e-02, 2.27458139637090571e-02,
    2.22952790818782727e-02, 2.17918622646617322e-02,
    2.12367575618267988e-02, 2.06312816213117430e-02,
    1.99768705663601748e-02, 1.92750765893077956e-02,
    1.85275642701200755e-02, 1.77361066284411617e-02,
    1.69025809185708933e-02, 1.60289641774257266e-02,
    1.51173285362012477e-02, 1.41698363071298510e-02,
    1.31887348575273136e-02, 1.21763512843554265e-02,
    1.11350869041915036e-02, 1.00674115767650472e-02,
    8.97585788784865078e-03, 7.86301523801254121e-03,
    6.73152394835911574e-03, 5.58406973006573323e-03,
    4.42337991318219551e-03, 3.25222898448982714e-03,
    2.07351663028146165e-03, 8.91640360847107587e-04,
};

// integral over [0, 1] of fn(s) ds.  The accumulator is the callable's
// value type, not an expression template, so Eigen results are materialized
// before the node temporary dies.
template <typename Fn>
auto integrate_unit(Fn&& fn) {
    using R = std::decay_t<decltype(fn(0.5))>;
    R acc = kGaussLegendreWeights[0] * fn(kGaussLegendreNodes[0]);
    for (int i = 1; i < kGaussLegendreN; ++i)
        acc += kGaussLegendreWeights[i] * fn(kGaussLegendreNodes[i]);
    return acc;
}

}  // namespace commcalc::quadrature
