#include "conetail/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace conetail {

long long poisson_draw(RngStream& rng, double mean) {
    if (!(mean > 0.0)) raise(ErrorCode::BadParam, "Poisson mean must be positive");
    // product-of-uniforms inversion, chunked so exp(-chunk) never underflows
    long long count = 0;
    double remaining = mean;
    while (remaining > 0.0) {
        const double chunk = std::min(remaining, 500.0);
        const double limit = std::exp(-chunk);
        double prod = rng.uniform();
        while (prod > limit) {
            ++count;
            prod *= rng.uniform();
        }
        remaining -= chunk;
    }
    return count;
}

double normal_draw(RngStream& rng) {
    // polar method; consumes a variable, stream-local number of uniforms
    while (true) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double gamma_draw(RngStream& rng, double shape) {
    if (!(shape >= 1.0)) raise(ErrorCode::BadParam, "gamma_draw requires shape >= 1");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        const double x = normal_draw(rng);
        const double v = (1.0 + c * x) * (1.0 + c * x) * (1.0 + c * x);
        if (v <= 0.0) continue;
        const double u = rng.uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

namespace {

void check_model_dim(int d) {
    if (d < 1 || d > 16) raise(ErrorCode::BadModel, "model dimension must be in 1..16");
}

void check_probs(const std::vector<double>& p, int d) {
    if (static_cast<int>(p.size()) != d)
        raise(ErrorCode::BadModel, "p must have one entry per coordinate");
    double tot = 0.0;
    for (double pj : p) {
        if (pj < 0.0) raise(ErrorCode::BadModel, "probabilities must be nonnegative");
        tot += pj;
    }
    if (std::abs(tot - 1.0) > 1e-12) raise(ErrorCode::BadModel, "probabilities must sum to 1");
}

int categorical(const std::vector<double>& p, RngStream& rng) {
    double u = rng.uniform();
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
        if (u < p[j]) return static_cast<int>(j);
        u -= p[j];
    }
    return static_cast<int>(p.size()) - 1;
}

}  // namespace

JumpModel make_independence_model(int d, double alpha) {
    check_model_dim(d);
    if (!(alpha > 0.0)) raise(ErrorCode::BadModel, "alpha must be positive");
    JumpModel m;
    m.family = ModelFamily::IndependencePareto;
    m.d = d;
    m.alpha = alpha;
    return m;
}

JumpModel make_marshall_olkin(int d, double alpha, std::map<std::uint32_t, double> rates) {
    check_model_dim(d);
    if (!(alpha > 0.0)) raise(ErrorCode::BadModel, "alpha must be positive");
    const std::uint32_t full = (1u << d) - 1;
    if (rates.size() != full)
        raise(ErrorCode::BadModel, "Marshall-Olkin needs a rate for every nonempty subset");
    for (const auto& [mask, lam] : rates) {
        if (mask == 0 || mask > full) raise(ErrorCode::BadModel, "invalid subset mask");
        if (!(lam > 0.0)) raise(ErrorCode::BadModel, "shock rates must be positive");
    }
    JumpModel m;
    m.family = ModelFamily::MarshallOlkin;
    m.d = d;
    m.alpha = alpha;
    m.rates = std::move(rates);
    return m;
}

JumpModel make_marshall_olkin_equal(int d, double alpha, double lambda) {
    std::map<std::uint32_t, double> rates;
    for (std::uint32_t mask = 1; mask < (1u << d); ++mask) rates[mask] = lambda;
    return make_marshall_olkin(d, alpha, std::move(rates));
}

JumpModel make_marshall_olkin_proportional(int d, double alpha, double lambda) {
    std::map<std::uint32_t, double> rates;
    for (std::uint32_t mask = 1; mask < (1u << d); ++mask)
        rates[mask] = lambda * std::popcount(mask);
    return make_marshall_olkin(d, alpha, std::move(rates));
}

JumpModel make_mardia_model(int d, double alpha) {
    JumpModel m = make_independence_model(d, alpha);
    m.family = ModelFamily::Mardia;
    return m;
}

JumpModel make_acig_model(int d, double alpha, double beta) {
    if (!(beta > 1.0 && beta < 2.0)) raise(ErrorCode::BadModel, "ACIG beta must lie in (1,2)");
    JumpModel m = make_independence_model(d, alpha);
    m.family = ModelFamily::ACIG;
    m.beta = beta;
    return m;
}

JumpModel make_complete_dependence_model(int d, double alpha) {
    JumpModel m = make_independence_model(d, alpha);
    m.family = ModelFamily::CompleteDependence;
    return m;
}

JumpModel make_discrete_mixture_model(int d, double alpha, std::vector<double> p, bool noise) {
    check_probs(p, d);
    JumpModel m = make_independence_model(d, alpha);
    m.family = ModelFamily::DiscreteMixture;
    m.p = std::move(p);
    m.noise = noise;
    return m;
}

JumpModel make_two_shock_model(int d, double alpha, std::vector<double> p) {
    check_probs(p, d);
    if (d < 2) raise(ErrorCode::BadModel, "two-shock model needs d >= 2");
    JumpModel m = make_independence_model(d, alpha);
    m.family = ModelFamily::TwoShock;
    m.p = std::move(p);
    return m;
}

double acig_psi(double s, double beta) {
    if (s == 0.0) return 1.0;
    if (!(s > 0.0)) raise(ErrorCode::DomainError, "psi defined on s >= 0");
    const double r = 2.0 * std::sqrt(s);
    return 2.0 * std::pow(s, beta / 2.0) * std::cyl_bessel_k(beta, r) / std::tgamma(beta);
}

std::vector<double> sample_vector(const JumpModel& m, RngStream& rng) {
    std::vector<double> z(m.d, 0.0);
    switch (m.family) {
        case ModelFamily::IndependencePareto: {
            for (int j = 0; j < m.d; ++j) z[j] = pareto_quantile(rng.uniform(), m.alpha);
            return z;
        }
        case ModelFamily::MarshallOlkin: {
            // common-shock construction: E_S ~ Exp(lambda_S),
            // T_j = min over S containing j, U_j = exp(-Lambda_j T_j)
            std::vector<double> t(m.d, std::numeric_limits<double>::infinity());
            for (const auto& [mask, lam] : m.rates) {
                const double e = rng.exponential(lam);
                for (int j = 0; j < m.d; ++j)
                    if (mask & (1u << j)) t[j] = std::min(t[j], e);
            }
            std::vector<double> big(m.d, 0.0);
            for (const auto& [mask, lam] : m.rates)
                for (int j = 0; j < m.d; ++j)
                    if (mask & (1u << j)) big[j] += lam;
            for (int j = 0; j < m.d; ++j) {
                const double u = std::exp(-big[j] * t[j]);  // uniform(0,1)
                z[j] = std::pow(u, -1.0 / m.alpha);
            }
            return z;
        }
        case ModelFamily::Mardia: {
            // frailty: Z_j = (E_j / S)^(1/alpha), survival (1+sum x^a)^-1
            const double s = rng.exponential();
            for (int j = 0; j < m.d; ++j)
                z[j] = std::pow(rng.exponential() / s, 1.0 / m.alpha);
            return z;
        }
        case ModelFamily::ACIG: {
            // Archimedean frailty: V ~ inverse gamma(beta), U_j = psi(E_j / V),
            // then the Pareto quantile transform Z_j = (1 - U_j)^(-1/alpha).
            const double v = 1.0 / gamma_draw(rng, m.beta);
            for (int j = 0; j < m.d; ++j) {
                const double u = acig_psi(rng.exponential() / v, m.beta);
                const double w = std::min(std::max(1.0 - u, 1e-300), 1.0 - 1e-16);
                z[j] = std::pow(w, -1.0 / m.alpha);
            }
            return z;
        }
        case ModelFamily::CompleteDependence: {
            const double x = pareto_quantile(rng.uniform(), m.alpha);
            std::fill(z.begin(), z.end(), x);
            return z;
        }
        case ModelFamily::DiscreteMixture: {
            const int l = categorical(m.p, rng);
            z[l] = pareto_quantile(rng.uniform(), m.alpha);
            if (m.noise)
                for (int j = 0; j < m.d; ++j) z[j] += rng.uniform();
            return z;
        }
        case ModelFamily::TwoShock: {
            const double w = std::pow(2.0, -1.0 / m.alpha);
            const int l1 = categorical(m.p, rng);
            z[l1] += w * pareto_quantile(rng.uniform(), m.alpha);
            const int l2 = categorical(m.p, rng);
            z[l2] += w * pareto_quantile(rng.uniform(), m.alpha);
            return z;
        }
    }
    raise(ErrorCode::BadModel, "unknown model family");
}

std::vector<double> sample_sum(const JumpModel& m, long long n, RngStream& rng) {
    if (n < 0) raise(ErrorCode::BadModel, "n must be nonnegative");
    std::vector<double> acc(m.d, 0.0);
    for (long long k = 0; k < n; ++k) {
        const auto z = sample_vector(m, rng);
        for (int j = 0; j < m.d; ++j) acc[j] += z[j];
    }
    return acc;
}

std::vector<double> sample_compound_poisson(const JumpModel& m, double lambda, double s,
                                            RngStream& rng) {
    if (!(lambda > 0.0) || !(s > 0.0))
        raise(ErrorCode::BadModel, "lambda and s must be positive");
    return sample_sum(m, poisson_draw(rng, lambda * s), rng);
}

double joint_survival(const JumpModel& m, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != m.d)
        raise(ErrorCode::DimensionMismatch, "threshold dimension does not match model");
    switch (m.family) {
        case ModelFamily::IndependencePareto: {
            double v = 1.0;
            for (double xj : x) v *= std::min(1.0, std::pow(std::max(xj, 0.0), -m.alpha));
            return v;
        }
        case ModelFamily::MarshallOlkin: {
            // P(Z > x) = exp(-sum_S lambda_S max_{j in S} alpha ln+ x_j / Lambda_j)
            std::vector<double> big(m.d, 0.0);
            for (const auto& [mask, lam] : m.rates)
                for (int j = 0; j < m.d; ++j)
                    if (mask & (1u << j)) big[j] += lam;
            double expo = 0.0;
            for (const auto& [mask, lam] : m.rates) {
                double mx = 0.0;
                for (int j = 0; j < m.d; ++j)
                    if (mask & (1u << j))
                        mx = std::max(mx, m.alpha * std::max(0.0, std::log(x[j])) / big[j]);
                expo += lam * mx;
            }
            return std::exp(-expo);
        }
        case ModelFamily::Mardia: {
            double t = 1.0;
            for (double xj : x) t += std::pow(std::max(xj, 0.0), m.alpha);
            return 1.0 / t;
        }
        case ModelFamily::CompleteDependence: {
            double mx = 0.0;
            for (double xj : x) mx = std::max(mx, xj);
            return std::min(1.0, std::pow(mx, -m.alpha));
        }
        default:
            raise(ErrorCode::UnsupportedModel, "no closed-form joint survival for this family");
    }
}

}  // namespace conetail
