#pragma once

#include <vector>

#include "conetail/measures.hpp"

namespace conetail {

// Weights of the convolution theorem at one cone level: the chosen index
// I(i) and the coefficients c_0..c_i multiplying the split measures
// mu*_{m,i}.  Infinite candidates never enter: an infinite \bar c_j
// disqualifies j before the argmax.
struct ConvolutionWeights {
    int i = 0;
    int I = 0;
    std::vector<double> c;  // size i+1, c[I] == 1
};

ConvolutionWeights compute_weights(const MRVSpectrum& spec1, const MRVSpectrum& spec2, int i);

MRVSpectrum convolve(const MRVSpectrum& spec1, const MRVSpectrum& spec2);

// n-fold self-convolution.  Closed-form fast paths are applied when the
// spectrum's structure identifies one (Delta=1, strictly superadditive
// indices, or product-form measures); otherwise the convolution is
// iterated.  Both routes agree and are cross-checked in the tests.
MRVSpectrum self_convolve(const MRVSpectrum& spec, int n);

// Force the iterated route (reference path for tests).
MRVSpectrum self_convolve_iterated(const MRVSpectrum& spec, int n);

enum class FactorRule { NearlyIndependent, Superadditive, Delta1, TwoShock };

// Aggregation constant C_{n,i}: the factor multiplying the base measure
// of cone level i after summing n i.i.d. vectors under the given rule.
double closed_form_factor(FactorRule rule, int n, int i);

// Structural classification used by the fast paths (and by the Levy
// regime checks): these probe the spectrum's indices and measures.
bool is_delta1(const MRVSpectrum& spec);
bool is_strictly_superadditive(const MRVSpectrum& spec);
bool is_product_form(const MRVSpectrum& spec);

// Agreement of two measures on the deterministic probe rectangles of
// cone level i (relative tolerance).
bool measures_match(const TailMeasure& a, const TailMeasure& b, int d, int i, double tol);

}  // namespace conetail
