#include "conetail/model_spectrum.hpp"

#include <bit>
#include <cmath>

#include "conetail/convolution.hpp"

namespace conetail {

namespace {

bool rates_equal(const JumpModel& m) {
    const double first = m.rates.begin()->second;
    for (const auto& [_, lam] : m.rates)
        if (std::abs(lam - first) > 1e-12 * first) return false;
    return true;
}

bool rates_proportional(const JumpModel& m) {
    const double unit = m.rates.begin()->second / std::popcount(m.rates.begin()->first);
    for (const auto& [mask, lam] : m.rates)
        if (std::abs(lam - unit * std::popcount(mask)) > 1e-12 * lam) return false;
    return true;
}

}  // namespace

MRVSpectrum model_spectrum(const JumpModel& m, double gamma) {
    const int d = m.d;
    const double alpha = m.alpha;
    if (gamma <= 0.0) gamma = alpha / (2.0 * d);
    if (!(gamma < alpha / d))
        raise(ErrorCode::BadParam, "gamma must lie in (0, alpha/d)");
    const PowerFn b1(1.0, 1.0 / alpha);

    std::vector<SpectrumEntry> entries;
    switch (m.family) {
        case ModelFamily::IndependencePareto: {
            std::vector<double> kappa(d, 1.0);
            for (int i = 1; i <= d; ++i)
                entries.push_back(SpectrumEntry::make_rv(
                    i * alpha, pow(b1, 1.0 / i), make_independence(d, i, alpha, kappa)));
            break;
        }
        case ModelFamily::MarshallOlkin: {
            if (rates_equal(m)) {
                for (int i = 1; i <= d; ++i) {
                    TailMeasure mu = make_mo_equal(d, i, alpha);
                    entries.push_back(
                        SpectrumEntry::make_rv(mu.alpha, PowerFn(1.0, 1.0 / mu.alpha), mu));
                }
            } else if (rates_proportional(m)) {
                for (int i = 1; i <= d; ++i) {
                    TailMeasure mu = make_mo_proportional(d, i, alpha);
                    entries.push_back(
                        SpectrumEntry::make_rv(mu.alpha, PowerFn(1.0, 1.0 / mu.alpha), mu));
                }
            } else {
                raise(ErrorCode::UnsupportedModel,
                      "closed-form spectrum known only for equal or proportional "
                      "Marshall-Olkin rates; supply an explicit spectrum");
            }
            break;
        }
        case ModelFamily::Mardia: {
            for (int i = 1; i <= d; ++i)
                entries.push_back(SpectrumEntry::make_rv(alpha, b1, make_mardia(d, alpha)));
            break;
        }
        case ModelFamily::ACIG: {
            entries.push_back(
                SpectrumEntry::make_rv(alpha, b1, make_acig(d, 1, alpha, m.beta)));
            for (int i = 2; i <= d; ++i)
                entries.push_back(SpectrumEntry::make_rv(alpha * m.beta, pow(b1, 1.0 / m.beta),
                                                         make_acig(d, i, alpha, m.beta)));
            break;
        }
        case ModelFamily::CompleteDependence: {
            for (int i = 1; i <= d; ++i)
                entries.push_back(
                    SpectrumEntry::make_rv(alpha, b1, make_complete_dependence(d, alpha)));
            break;
        }
        case ModelFamily::DiscreteMixture: {
            entries.push_back(
                SpectrumEntry::make_rv(alpha, b1, make_discrete_mixture_level1(d, alpha, m.p)));
            for (int i = 2; i <= d; ++i) entries.push_back(SpectrumEntry::make_null(gamma));
            break;
        }
        case ModelFamily::TwoShock: {
            TailMeasure mu1 = make_discrete_mixture_level1(d, alpha, m.p);
            entries.push_back(SpectrumEntry::make_rv(alpha, b1, mu1));
            if (d >= 2) {
                TailMeasure mu2 = scale_measure(product_measure(mu1, mu1, 1, 2), 0.5);
                entries.push_back(SpectrumEntry::make_rv(2 * alpha, pow(b1, 0.5), mu2));
            }
            for (int i = 3; i <= d; ++i) entries.push_back(SpectrumEntry::make_null(gamma));
            break;
        }
    }
    return make_spectrum(d, std::move(entries));
}

FactorRule model_factor_rule(const JumpModel& m) {
    switch (m.family) {
        case ModelFamily::IndependencePareto:
            return FactorRule::NearlyIndependent;
        case ModelFamily::DiscreteMixture:
            return FactorRule::Delta1;
        case ModelFamily::TwoShock:
            return FactorRule::TwoShock;
        default:
            return FactorRule::Superadditive;
    }
}

}  // namespace conetail
