#pragma once

#include "conetail/convolution.hpp"
#include "conetail/samplers.hpp"

namespace conetail {

// The adapted-MRV spectrum of a jump model: the theory object matching
// each sampler family.  Marshall-Olkin spectra exist in closed form only
// for the equal and proportional rate patterns; other rate maps error
// (pass an explicit spectrum instead).  gamma is the null-convergence
// rate parameter for families with Delta < d; any value in
// (0, alpha/d) is valid and the default is alpha/(2d).
MRVSpectrum model_spectrum(const JumpModel& m, double gamma = -1.0);

// The factor rule satisfied by the model's aggregates.
FactorRule model_factor_rule(const JumpModel& m);

}  // namespace conetail
