#pragma once

#include <map>
#include <vector>

#include "conetail/rng.hpp"

namespace conetail {

enum class ModelFamily {
    IndependencePareto,
    MarshallOlkin,
    Mardia,
    ACIG,
    CompleteDependence,
    DiscreteMixture,
    TwoShock,
};

// A jump-size / claim-size model: marginally Pareto-type with tail index
// alpha, dependence per family.
struct JumpModel {
    ModelFamily family = ModelFamily::IndependencePareto;
    int d = 1;
    double alpha = 1.0;
    std::map<std::uint32_t, double> rates;  // MarshallOlkin: bitmask subset -> lambda_S
    std::vector<double> p;                  // DiscreteMixture / TwoShock
    double beta = 1.5;                      // ACIG
    bool noise = false;                     // DiscreteMixture: add uniform(0,1) coords
};

JumpModel make_independence_model(int d, double alpha);
// Equal rate lambda for every nonempty subset.
JumpModel make_marshall_olkin_equal(int d, double alpha, double lambda);
// lambda_S = |S| * lambda.
JumpModel make_marshall_olkin_proportional(int d, double alpha, double lambda);
JumpModel make_marshall_olkin(int d, double alpha, std::map<std::uint32_t, double> rates);
JumpModel make_mardia_model(int d, double alpha);
JumpModel make_acig_model(int d, double alpha, double beta);
JumpModel make_complete_dependence_model(int d, double alpha);
JumpModel make_discrete_mixture_model(int d, double alpha, std::vector<double> p, bool noise);
JumpModel make_two_shock_model(int d, double alpha, std::vector<double> p);

std::vector<double> sample_vector(const JumpModel& m, RngStream& rng);
std::vector<double> sample_sum(const JumpModel& m, long long n, RngStream& rng);
std::vector<double> sample_compound_poisson(const JumpModel& m, double lambda, double s,
                                            RngStream& rng);

// Exact joint survival P(Z_1 > x_1, ..., Z_d > x_d) for the families with
// a closed form (IndependencePareto, MarshallOlkin, Mardia,
// CompleteDependence).  Errors with UnsupportedModel otherwise.
double joint_survival(const JumpModel& m, const std::vector<double>& x);

// ACIG generator: Laplace transform of the inverse gamma distribution,
// psi(s) = 2 s^(beta/2) K_beta(2 sqrt(s)) / Gamma(beta), psi(0) = 1.
double acig_psi(double s, double beta);

}  // namespace conetail
