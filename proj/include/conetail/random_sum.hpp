#pragma once

#include <vector>

#include "conetail/convolution.hpp"

namespace conetail {

// Counting laws with everywhere-finite moment generating function, the
// hypothesis E(kappa^tau) < infinity for all kappa > 0 of the random-sum
// theorem.  Laws without it (geometric, negative binomial) are rejected.
struct CountDistribution {
    enum Kind { Fixed, Poisson, Binomial } kind = Fixed;
    long long n = 1;     // Fixed, Binomial
    double lambda = 1.0; // Poisson mean (rate * horizon)
    double p = 0.5;      // Binomial

    static CountDistribution fixed(long long n);
    static CountDistribution poisson(double lambda);
    static CountDistribution binomial(long long n, double p);
};

// E[tau^k], exact.
double raw_moment(const CountDistribution& c, int k);

// E[tau (tau-1) ... (tau-k+1)], exact.
double factorial_moment(const CountDistribution& c, int k);

// The aggregation constant as a polynomial in the number of summands.
struct FactorPoly {
    bool is_rule = true;
    FactorRule rule = FactorRule::Superadditive;
    std::vector<double> coeffs;  // ExplicitPoly: f(n) = sum coeffs[k] n^k

    static FactorPoly from_rule(FactorRule r) { return {true, r, {}}; }
    static FactorPoly explicit_poly(std::vector<double> c) {
        return {false, FactorRule::Superadditive, std::move(c)};
    }
};

// E[f_i(tau)], exact via moment expansion of the polynomial f_i.
double expected_factor(const CountDistribution& c, const FactorPoly& f, int i);
double expected_factor(const CountDistribution& c, FactorRule rule, int i);

// Spectrum of sum_{k=1}^tau Z^(k) given the single-vector spectrum and the
// factor rule it satisfies (validated against self_convolve at n = d).
MRVSpectrum random_sum_spectrum(const MRVSpectrum& spec, FactorRule rule,
                                const CountDistribution& c);

}  // namespace conetail
