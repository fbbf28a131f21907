#include "conetail/levy.hpp"

#include <cmath>

#include "conetail/random_sum.hpp"

namespace conetail {

LevySpec::LevySpec(MRVSpectrum spec, double lambda)
    : jump_spectrum(std::move(spec)), intensity(lambda) {
    if (!(lambda > 0.0)) raise(ErrorCode::BadParam, "intensity must be positive");
}

double levy_tail_approx(const LevySpec& spec, const RectSet& a, double t, double s,
                        LevyRegime regime) {
    const MRVSpectrum& js = spec.jump_spectrum;
    if (a.dim != js.d) raise(ErrorCode::DimensionMismatch, "set dimension does not match spectrum");
    if (!(t > 0.0) || !(s > 0.0)) raise(ErrorCode::DomainError, "t and s must be positive");
    const int i = cone_level(a);
    const double lambda = spec.intensity;

    switch (regime) {
        case LevyRegime::Linear: {
            if (js.delta != js.d || !is_strictly_superadditive(js))
                raise(ErrorCode::RegimeMismatch,
                      "Linear regime requires alpha_i < alpha_m + alpha_{i-m} on all cones");
            const auto& e = js.entry(i);
            return s * lambda * eval_measure(e.mu, a) / invert(e.b)(t);
        }
        case LevyRegime::PowerS: {
            if (!is_delta1(js))
                raise(ErrorCode::RegimeMismatch, "PowerS regime requires Delta = 1");
            const TailMeasure muL = level1_product(js.entry(1).mu, i);
            const double b1inv = invert(js.entry(1).b)(t);
            return std::pow(lambda * s, i) * eval_measure(muL, a) / std::pow(b1inv, i);
        }
        case LevyRegime::PoissonMoment: {
            if (!is_product_form(js))
                raise(ErrorCode::RegimeMismatch,
                      "PoissonMoment regime requires product-form limit measures");
            const double w = raw_moment(CountDistribution::poisson(lambda * s), i);
            const double b1inv = invert(js.entry(1).b)(t);
            return w * eval_measure(js.entry(i).mu, a) / std::pow(b1inv, i);
        }
    }
    raise(ErrorCode::BadParam, "unknown regime");
}

LevyRegime choose_regime(const LevySpec& spec) {
    const MRVSpectrum& js = spec.jump_spectrum;
    if (is_delta1(js) && js.d > 1) return LevyRegime::PowerS;
    if (is_product_form(js) && js.d > 1) return LevyRegime::PoissonMoment;
    if (js.delta == js.d && is_strictly_superadditive(js)) return LevyRegime::Linear;
    raise(ErrorCode::RegimeMismatch,
          "no tail regime applies: indices neither strictly superadditive, Delta=1, "
          "nor product-form");
}

double marginal_levy_tail(const LevySpec& spec, int j, double t) {
    const MRVSpectrum& js = spec.jump_spectrum;
    if (j < 1 || j > js.d) raise(ErrorCode::BadParam, "coordinate out of range");
    if (!(t > 0.0)) raise(ErrorCode::DomainError, "t must be positive");
    RectSet single(js.d, {{j - 1, 1.0}});
    return spec.intensity * eval_measure(js.entry(1).mu, single) / invert(js.entry(1).b)(t);
}

}  // namespace conetail
