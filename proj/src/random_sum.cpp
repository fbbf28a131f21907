#include "conetail/random_sum.hpp"

#include <cmath>

namespace conetail {

namespace {

constexpr int kMaxMoment = 20;

// Stirling numbers of the second kind, S(k, j).
double stirling2(int k, int j) {
    static double table[kMaxMoment + 1][kMaxMoment + 1] = {};
    static bool built = false;
    if (!built) {
        table[0][0] = 1.0;
        for (int n = 1; n <= kMaxMoment; ++n)
            for (int m = 1; m <= n; ++m)
                table[n][m] = m * table[n - 1][m] + table[n - 1][m - 1];
        built = true;
    }
    if (j < 0 || j > k) return 0.0;
    return table[k][j];
}

double falling(double n, int k) {
    double f = 1.0;
    for (int j = 0; j < k; ++j) f *= (n - j);
    return f;
}

// Coefficients of prod_{k<i} (n - roots[k]) in powers of n.
std::vector<double> poly_from_roots(const std::vector<double>& roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

}  // namespace

CountDistribution CountDistribution::fixed(long long n) {
    if (n < 0) raise(ErrorCode::BadParam, "fixed count must be nonnegative");
    CountDistribution c;
    c.kind = Fixed;
    c.n = n;
    return c;
}

CountDistribution CountDistribution::poisson(double lambda) {
    if (!(lambda > 0.0)) raise(ErrorCode::BadParam, "Poisson mean must be positive");
    CountDistribution c;
    c.kind = Poisson;
    c.lambda = lambda;
    return c;
}

CountDistribution CountDistribution::binomial(long long n, double p) {
    if (n < 0) raise(ErrorCode::BadParam, "binomial n must be nonnegative");
    if (!(p >= 0.0 && p <= 1.0)) raise(ErrorCode::BadParam, "binomial p must be in [0,1]");
    CountDistribution c;
    c.kind = Binomial;
    c.n = n;
    c.p = p;
    return c;
}

double raw_moment(const CountDistribution& c, int k) {
    if (k < 0 || k > kMaxMoment) raise(ErrorCode::BadParam, "moment order out of range");
    if (k == 0) return 1.0;
    switch (c.kind) {
        case CountDistribution::Fixed:
            return std::pow(static_cast<double>(c.n), k);
        case CountDistribution::Poisson: {
            // Touchard polynomial: E tau^k = sum_j S(k,j) lambda^j
            double v = 0.0;
            for (int j = 1; j <= k; ++j) v += stirling2(k, j) * std::pow(c.lambda, j);
            return v;
        }
        case CountDistribution::Binomial: {
            double v = 0.0;
            for (int j = 1; j <= k; ++j)
                v += stirling2(k, j) * falling(static_cast<double>(c.n), j) * std::pow(c.p, j);
            return v;
        }
    }
    raise(ErrorCode::BadParam, "unknown count distribution");
}

double factorial_moment(const CountDistribution& c, int k) {
    if (k < 0 || k > kMaxMoment) raise(ErrorCode::BadParam, "moment order out of range");
    if (k == 0) return 1.0;
    switch (c.kind) {
        case CountDistribution::Fixed:
            return std::max(0.0, falling(static_cast<double>(c.n), k));
        case CountDistribution::Poisson:
            return std::pow(c.lambda, k);
        case CountDistribution::Binomial:
            return std::max(0.0, falling(static_cast<double>(c.n), k)) * std::pow(c.p, k);
    }
    raise(ErrorCode::BadParam, "unknown count distribution");
}

namespace {

double expected_poly(const CountDistribution& c, const std::vector<double>& coeffs) {
    double v = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] != 0.0) v += coeffs[k] * raw_moment(c, static_cast<int>(k));
    return v;
}

}  // namespace

double expected_factor(const CountDistribution& c, const FactorPoly& f, int i) {
    if (i < 1) raise(ErrorCode::BadParam, "level must be >= 1");
    if (!f.is_rule) {
        for (int n = 0; n <= 64; ++n) {
            double v = 0.0;
            for (std::size_t k = 0; k < f.coeffs.size(); ++k) v += f.coeffs[k] * std::pow(n, k);
            if (v < -1e-12) raise(ErrorCode::UnsupportedRule, "f_i takes negative values");
        }
        return expected_poly(c, f.coeffs);
    }
    return expected_factor(c, f.rule, i);
}

double expected_factor(const CountDistribution& c, FactorRule rule, int i) {
    if (i < 1) raise(ErrorCode::BadParam, "level must be >= 1");
    switch (rule) {
        case FactorRule::NearlyIndependent:
            return raw_moment(c, i);
        case FactorRule::Superadditive:
            return raw_moment(c, 1);
        case FactorRule::Delta1:
            return factorial_moment(c, i);
        case FactorRule::TwoShock: {
            if (i > 4) raise(ErrorCode::UnsupportedLevel, "TwoShock factors known for i <= 4");
            static const double roots[4] = {0.0, 0.5, 1.0, 1.5};
            std::vector<double> r(roots, roots + i);
            return expected_poly(c, poly_from_roots(r));
        }
    }
    raise(ErrorCode::UnsupportedRule, "unknown factor rule");
}

namespace {

void check_rule_structure(const MRVSpectrum& spec, FactorRule rule) {
    switch (rule) {
        case FactorRule::NearlyIndependent:
            if (!is_product_form(spec))
                raise(ErrorCode::AssumptionAViolated,
                      "NearlyIndependent rule requires product-form limit measures");
            return;
        case FactorRule::Superadditive:
            if (spec.delta != spec.d || !is_strictly_superadditive(spec))
                raise(ErrorCode::AssumptionAViolated,
                      "Superadditive rule requires strictly superadditive indices on all cones");
            return;
        case FactorRule::Delta1:
            if (!is_delta1(spec))
                raise(ErrorCode::AssumptionAViolated, "Delta1 rule requires Delta = 1");
            return;
        case FactorRule::TwoShock: {
            if (spec.d > 4)
                raise(ErrorCode::UnsupportedLevel, "TwoShock factors known for i <= 4");
            if (spec.delta != std::min(spec.d, 2))
                raise(ErrorCode::AssumptionAViolated, "TwoShock rule requires Delta = 2");
            if (spec.d >= 2) {
                const TailMeasure expect =
                    scale_measure(level1_product(spec.entry(1).mu, 2), 0.5);
                if (!measures_match(spec.entry(2).mu, expect, spec.d, 2, 1e-9))
                    raise(ErrorCode::AssumptionAViolated,
                          "TwoShock rule requires mu_2 = (1/2) mu_1 x mu_1");
            }
            return;
        }
    }
}

}  // namespace

MRVSpectrum random_sum_spectrum(const MRVSpectrum& spec, FactorRule rule,
                                const CountDistribution& c) {
    check_rule_structure(spec, rule);
    if (!(raw_moment(c, 1) > 0.0))
        raise(ErrorCode::BadParam, "degenerate count distribution (mean zero)");

    // Assumption A base measures and the self_convolve cross-check at n = d.
    const int ncheck = std::max(2, spec.d);
    const MRVSpectrum iter = self_convolve(spec, ncheck);

    std::vector<SpectrumEntry> out;
    double gamma = -1.0;
    for (const auto& e : spec.entries)
        if (!e.rv) gamma = e.gamma;

    for (int i = 1; i <= spec.d; ++i) {
        TailMeasure base;
        double alpha_i;
        PowerFn b_i;
        switch (rule) {
            case FactorRule::NearlyIndependent:
            case FactorRule::Superadditive:
                base = spec.entry(i).mu;
                alpha_i = spec.entry(i).alpha;
                b_i = spec.entry(i).b;
                break;
            case FactorRule::Delta1:
            case FactorRule::TwoShock:
                base = level1_product(spec.entry(1).mu, i);
                alpha_i = i * spec.entry(1).alpha;
                b_i = pow(spec.entry(1).b, 1.0 / i);
                break;
        }

        const double fn = closed_form_factor(rule, ncheck, i);
        if (fn > 0.0) {
            if (!iter.entry(i).rv ||
                !measures_match(iter.entry(i).mu, scale_measure(base, fn), spec.d, i, 1e-9))
                raise(ErrorCode::AssumptionAViolated,
                      "self_convolve cross-check failed at level " + std::to_string(i));
        }

        const double w = expected_factor(c, rule, i);
        if (w > 0.0)
            out.push_back(SpectrumEntry::make_rv(alpha_i, b_i,
                                                 w == 1.0 ? base : scale_measure(base, w)));
        else
            out.push_back(SpectrumEntry::make_null(gamma));
    }
    return make_spectrum(spec.d, std::move(out));
}

}  // namespace conetail
