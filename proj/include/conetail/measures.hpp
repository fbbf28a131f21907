#pragma once

#include <map>
#include <string>
#include <vector>

#include "conetail/regvar.hpp"

namespace conetail {

enum class MeasureFamily {
    Independence,        // level i, prod_{j in S} kappa_j x_j^-alpha, 0 above level
    MOEqual,             // Marshall-Olkin, equal shock rates
    MOProportional,      // Marshall-Olkin, rates proportional to |S|
    ACIG,                // Archimedean (inverse-gamma LT); level >= 2 calibrated
    MardiaDependent,     // (sum_j x_j^alpha)^-1 on every cone
    CompleteDependence,  // (max_j x_j)^-alpha on every cone
    ClaytonLevy,         // (sum_j x_j^(-alpha*theta))^(-1/theta)
    DiscreteMixtureLevel1,  // p_j x_j^-alpha on level 1, 0 deeper
    Scaled,              // c * child
    Sum,                 // sum of children (same alpha, same d)
    Product,             // the theorem's mu*_{m,i} built from two children
};

// An evaluatable homogeneous limit measure on rectangular sets.
// `alpha` is the homogeneity index: eval(tA) = t^-alpha eval(A).
struct TailMeasure {
    MeasureFamily family = MeasureFamily::Independence;
    int d = 0;
    double alpha = 1.0;
    int level = 1;  // cone level for cone-indexed families; i for Product

    std::vector<double> kappa;       // Independence weights
    std::vector<double> p;           // DiscreteMixtureLevel1 probabilities
    double beta = 1.5;               // ACIG dependence parameter (1,2)
    double theta = 1.0;              // Clayton parameter > 0
    double scale = 1.0;              // Scaled factor >= 0
    std::map<int, double> acig_c;    // ACIG level>=2 calibration, keyed by |S|
    int prod_m = 0;                  // Product: thresholds routed to children[0]
    std::vector<TailMeasure> children;
};

// Family constructors (validated).  `params` usage is family specific;
// see each factory.
TailMeasure make_independence(int d, int level, double alpha, std::vector<double> kappa);
TailMeasure make_mo_equal(int d, int level, double alpha);
TailMeasure make_mo_proportional(int d, int level, double alpha);
TailMeasure make_acig(int d, int level, double alpha, double beta,
                      std::map<int, double> calib = {});
TailMeasure make_mardia(int d, double alpha);
TailMeasure make_complete_dependence(int d, double alpha);
TailMeasure make_clayton_levy(int d, double alpha, double theta);
TailMeasure make_discrete_mixture_level1(int d, double alpha, std::vector<double> p);

double eval_measure(const TailMeasure& mu, const RectSet& a);

// Inclusion-exclusion value of a finite union of rectangles.
double eval_union(const TailMeasure& mu, const std::vector<RectSet>& sets);

TailMeasure scale_measure(const TailMeasure& mu, double c);
TailMeasure add_measures(const std::vector<TailMeasure>& parts);

// mu*_{m,i}: eval(A) = sum over J subset of S, |J| = m, of
// mu1({z_j > x_j, j in J}) * mu2({z_j > x_j, j in S \ J}), with the
// empty product convention mu_0 == 1 at m = 0 and m = i.
TailMeasure product_measure(const TailMeasure& mu1, const TailMeasure& mu2, int m, int i);

// The plain coordinate product prod_{j in S} mu1({z_j > x_j}) on |S| = i
// rectangles (0 deeper): the Delta=1 aggregate shape.  Chaining
// product_measure symmetrizes over subsets and inflates by i!, so this
// rescales accordingly.
TailMeasure level1_product(const TailMeasure& mu1, int i);

// One entry of an adapted-MRV spectrum: either genuine regular variation
// (alpha_i, b_i, mu_i) on the cone, or null convergence at rate
// t^(1/(i(alpha_1+gamma))).
struct SpectrumEntry {
    bool rv = true;
    double alpha = 1.0;   // RV only
    PowerFn b;            // RV only; scaling function, b.exponent = 1/alpha
    TailMeasure mu;       // RV only
    double gamma = 0.0;   // NullConv only

    static SpectrumEntry make_rv(double alpha, PowerFn b, TailMeasure mu);
    static SpectrumEntry make_null(double gamma);
};

struct MRVSpectrum {
    int d = 0;
    std::vector<SpectrumEntry> entries;  // entries[i-1] describes cone level i
    int delta = 0;                       // entries 1..delta RV, rest NullConv

    const SpectrumEntry& entry(int i) const { return entries.at(i - 1); }
};

MRVSpectrum make_spectrum(int d, std::vector<SpectrumEntry> entries);

// P(Z in tA) ~ mu_i(A) / b_i^{<-}(t) with i = cone_level(a).
// On a null-convergence cone only the conservative bound
// (t * min threshold)^(-i(alpha_1+gamma)) is available.
struct TailApprox {
    double value = 0.0;
    bool upper_bound_only = false;
};

TailApprox tail_prob_approx(const MRVSpectrum& spec, const RectSet& a, double t);

// Same, but errors with NullConvOnly when no finite approximation exists.
double tail_prob_estimate(const MRVSpectrum& spec, const RectSet& a, double t);

}  // namespace conetail
