#pragma once

#include "conetail/convolution.hpp"

namespace conetail {

// A Levy process description reduced to what the tail formulas need:
// the adapted-MRV spectrum of the jump-size law and the total jump rate.
// The Levy measure Pi inherits  mu_i^Pi = lambda * mu_i  with the same
// scaling functions; drift and Gaussian part are zero (subordinators).
struct LevySpec {
    MRVSpectrum jump_spectrum;
    double intensity = 1.0;  // lambda > 0

    LevySpec() = default;
    LevySpec(MRVSpectrum spec, double lambda);
};

enum class LevyRegime { Linear, PowerS, PoissonMoment };

// P(L(s) in tA) under the regime's hypothesis:
//   Linear:        s * lambda * mu_i(A) / b_i^{<-}(t)      (strictly
//                  superadditive indices)
//   PowerS:        (lambda s)^i * mu_i^L(A) / (b_1^{<-}(t))^i   (Delta = 1;
//                  mu_i^L the i-fold product of mu_1)
//   PoissonMoment: E(N*(lambda s)^i) * mu_i(A) / (b_1^{<-}(t))^i
//                  (product-form mu_i)
double levy_tail_approx(const LevySpec& spec, const RectSet& a, double t, double s,
                        LevyRegime regime);

// Pick the regime whose structural hypothesis the spectrum satisfies.
LevyRegime choose_regime(const LevySpec& spec);

// Pi_j((t, infinity)), the marginal Levy measure tail.
double marginal_levy_tail(const LevySpec& spec, int j, double t);

}  // namespace conetail
