#include "conetail/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace conetail {

namespace {

constexpr int kMaxSubsetDim = 16;  // Product enumeration bound

void check_dim(int d) {
    if (d <= 0 || d > kMaxSubsetDim)
        raise(ErrorCode::BadParam, "dimension must be in 1.." + std::to_string(kMaxSubsetDim));
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        raise(ErrorCode::BadParam, "alpha must be positive and finite");
}

void check_level(int level, int d) {
    if (level < 1 || level > d)
        raise(ErrorCode::BadParam, "cone level must be in 1..d");
}

}  // namespace

TailMeasure make_independence(int d, int level, double alpha, std::vector<double> kappa) {
    check_dim(d);
    check_level(level, d);
    check_alpha(alpha);
    if (static_cast<int>(kappa.size()) != d)
        raise(ErrorCode::BadParam, "kappa must have one weight per coordinate");
    for (double k : kappa)
        if (!(k > 0.0)) raise(ErrorCode::BadParam, "kappa weights must be positive");
    TailMeasure mu;
    mu.family = MeasureFamily::Independence;
    mu.d = d;
    mu.level = level;
    mu.alpha = level * alpha;
    mu.kappa = std::move(kappa);
    mu.theta = alpha;  // marginal index, stored separately from homogeneity
    return mu;
}

namespace {

// Marginal tail index for families that index their closed form by the
// per-coordinate alpha rather than the homogeneity index.
double marginal_alpha(const TailMeasure& mu) { return mu.theta; }

double mo_equal_alpha_i(double alpha, int i) {
    return (2.0 - std::pow(2.0, -(i - 1))) * alpha;
}

double mo_prop_alpha_i(double alpha, int i, int d) {
    double s = 0.0;
    for (int j = 1; j <= i; ++j)
        s += (1.0 - static_cast<double>(j - 1) / (d + 1)) * alpha * std::pow(2.0, -(j - 1));
    return s;
}

}  // namespace

TailMeasure make_mo_equal(int d, int level, double alpha) {
    check_dim(d);
    check_level(level, d);
    check_alpha(alpha);
    TailMeasure mu;
    mu.family = MeasureFamily::MOEqual;
    mu.d = d;
    mu.level = level;
    mu.theta = alpha;
    mu.alpha = mo_equal_alpha_i(alpha, level);
    return mu;
}

TailMeasure make_mo_proportional(int d, int level, double alpha) {
    check_dim(d);
    check_level(level, d);
    check_alpha(alpha);
    TailMeasure mu;
    mu.family = MeasureFamily::MOProportional;
    mu.d = d;
    mu.level = level;
    mu.theta = alpha;
    mu.alpha = mo_prop_alpha_i(alpha, level, d);
    return mu;
}

TailMeasure make_acig(int d, int level, double alpha, double beta, std::map<int, double> calib) {
    check_dim(d);
    check_level(level, d);
    check_alpha(alpha);
    if (!(beta > 1.0 && beta < 2.0))
        raise(ErrorCode::BadParam, "ACIG beta must lie in (1,2)");
    for (const auto& [k, c] : calib)
        if (k < 2 || k > d || !(c > 0.0))
            raise(ErrorCode::BadParam, "ACIG calibration keys must be cone sizes 2..d with positive values");
    TailMeasure mu;
    mu.family = MeasureFamily::ACIG;
    mu.d = d;
    mu.level = level;
    mu.theta = alpha;
    mu.beta = beta;
    mu.alpha = (level == 1) ? alpha : alpha * beta;
    mu.acig_c = std::move(calib);
    return mu;
}

TailMeasure make_mardia(int d, double alpha) {
    check_dim(d);
    check_alpha(alpha);
    TailMeasure mu;
    mu.family = MeasureFamily::MardiaDependent;
    mu.d = d;
    mu.level = 1;
    mu.theta = alpha;
    mu.alpha = alpha;
    return mu;
}

TailMeasure make_complete_dependence(int d, double alpha) {
    check_dim(d);
    check_alpha(alpha);
    TailMeasure mu;
    mu.family = MeasureFamily::CompleteDependence;
    mu.d = d;
    mu.level = 1;
    mu.theta = alpha;
    mu.alpha = alpha;
    return mu;
}

TailMeasure make_clayton_levy(int d, double alpha, double theta) {
    check_dim(d);
    check_alpha(alpha);
    if (!(theta > 0.0)) raise(ErrorCode::BadParam, "Clayton theta must be positive");
    TailMeasure mu;
    mu.family = MeasureFamily::ClaytonLevy;
    mu.d = d;
    mu.level = 1;
    mu.theta = alpha;
    mu.alpha = alpha;
    mu.beta = theta;  // reuse slot; accessor below keeps this readable
    return mu;
}

TailMeasure make_discrete_mixture_level1(int d, double alpha, std::vector<double> p) {
    check_dim(d);
    check_alpha(alpha);
    if (static_cast<int>(p.size()) != d)
        raise(ErrorCode::BadParam, "p must have one probability per coordinate");
    double tot = 0.0;
    for (double pj : p) {
        if (pj < 0.0) raise(ErrorCode::BadParam, "probabilities must be nonnegative");
        tot += pj;
    }
    if (std::abs(tot - 1.0) > 1e-12)
        raise(ErrorCode::BadParam, "probabilities must sum to 1");
    TailMeasure mu;
    mu.family = MeasureFamily::DiscreteMixtureLevel1;
    mu.d = d;
    mu.level = 1;
    mu.theta = alpha;
    mu.alpha = alpha;
    mu.p = std::move(p);
    return mu;
}

TailMeasure scale_measure(const TailMeasure& mu, double c) {
    if (!(c >= 0.0) || !std::isfinite(c))
        raise(ErrorCode::BadParam, "scale factor must be nonnegative and finite");
    TailMeasure out;
    out.family = MeasureFamily::Scaled;
    out.d = mu.d;
    out.alpha = mu.alpha;
    out.level = mu.level;
    out.scale = c;
    out.children.push_back(mu);
    return out;
}

TailMeasure add_measures(const std::vector<TailMeasure>& parts) {
    if (parts.empty()) raise(ErrorCode::BadParam, "add_measures needs at least one summand");
    for (const auto& m : parts) {
        if (m.d != parts.front().d)
            raise(ErrorCode::DimensionMismatch, "summands must share dimension");
        if (std::abs(m.alpha - parts.front().alpha) > 1e-9 * std::max(1.0, std::abs(m.alpha)))
            raise(ErrorCode::IndexMismatch, "summands must share homogeneity index");
    }
    TailMeasure out;
    out.family = MeasureFamily::Sum;
    out.d = parts.front().d;
    out.alpha = parts.front().alpha;
    out.level = parts.front().level;
    out.children = parts;
    return out;
}

TailMeasure product_measure(const TailMeasure& mu1, const TailMeasure& mu2, int m, int i) {
    if (m < 0 || m > i) raise(ErrorCode::LevelError, "product_measure requires 0 <= m <= i");
    TailMeasure out;
    out.family = MeasureFamily::Product;
    out.d = std::max(mu1.d, mu2.d);
    out.level = i;
    out.prod_m = m;
    double a1 = (m == 0) ? 0.0 : mu1.alpha;
    double a2 = (m == i) ? 0.0 : mu2.alpha;
    out.alpha = a1 + a2;
    out.children.push_back(mu1);
    out.children.push_back(mu2);
    return out;
}

TailMeasure level1_product(const TailMeasure& mu1, int i) {
    if (i < 1) raise(ErrorCode::LevelError, "i must be >= 1");
    if (i == 1) return mu1;
    TailMeasure acc = mu1;
    double factorial = 1.0;
    for (int k = 2; k <= i; ++k) {
        acc = product_measure(acc, mu1, k - 1, k);
        factorial *= k;
    }
    return scale_measure(acc, 1.0 / factorial);
}

namespace {

double eval_product(const TailMeasure& mu, const RectSet& a) {
    const auto S = a.indices();
    const int n = static_cast<int>(S.size());
    const int m = mu.prod_m;
    if (n > kMaxSubsetDim)
        raise(ErrorCode::BadParam, "subset enumeration limited to |S| <= 16");
    const TailMeasure& mu1 = mu.children[0];
    const TailMeasure& mu2 = mu.children[1];
    if (m == 0) return eval_measure(mu2, a);
    double total = 0.0;
    // iterate over all m-subsets J of S via bitmask
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != m) continue;
        std::map<int, double> xa, xb;
        for (int k = 0; k < n; ++k) {
            if (mask & (1u << k))
                xa[S[k]] = a.threshold(S[k]);
            else
                xb[S[k]] = a.threshold(S[k]);
        }
        double f1 = 1.0;
        if (!xa.empty()) f1 = eval_measure(mu1, RectSet(a.dim, std::move(xa)));
        double f2 = 1.0;
        if (!xb.empty()) f2 = eval_measure(mu2, RectSet(a.dim, std::move(xb)));
        total += f1 * f2;
    }
    return total;
}

}  // namespace

double eval_measure(const TailMeasure& mu, const RectSet& a) {
    if (a.dim != mu.d && mu.family != MeasureFamily::Product)
        raise(ErrorCode::DimensionMismatch, "set dimension does not match measure");
    const int s = cone_level(a);
    const double alpha = marginal_alpha(mu);

    switch (mu.family) {
        case MeasureFamily::Independence: {
            if (s < mu.level) raise(ErrorCode::ConeMismatch, "rectangle below measure cone level");
            if (s > mu.level) return 0.0;
            double v = 1.0;
            for (const auto& [j, xj] : a.thresholds) v *= mu.kappa[j] * std::pow(xj, -alpha);
            return v;
        }
        case MeasureFamily::MOEqual: {
            if (s < mu.level) raise(ErrorCode::ConeMismatch, "rectangle below measure cone level");
            if (s > mu.level) return 0.0;
            const auto x = descending_thresholds(a);
            double v = 1.0;
            for (int j = 1; j <= mu.level; ++j)
                v *= std::pow(x[j - 1], -alpha * std::pow(2.0, -(j - 1)));
            return v;
        }
        case MeasureFamily::MOProportional: {
            if (s < mu.level) raise(ErrorCode::ConeMismatch, "rectangle below measure cone level");
            if (s > mu.level) return 0.0;
            const auto x = descending_thresholds(a);
            double v = 1.0;
            for (int j = 1; j <= mu.level; ++j)
                v *= std::pow(x[j - 1],
                              -alpha * (1.0 - static_cast<double>(j - 1) / (mu.d + 1)) *
                                  std::pow(2.0, -(j - 1)));
            return v;
        }
        case MeasureFamily::ACIG: {
            if (s < mu.level) raise(ErrorCode::ConeMismatch, "rectangle below measure cone level");
            if (mu.level == 1) {
                if (s > 1) return 0.0;
                return std::pow(a.thresholds.begin()->second, -alpha);
            }
            // The level-2 measure lives on all deeper cones with index
            // alpha*beta; its rectangle form is only known on symmetric
            // diagonal sets, with a calibration constant per cone size.
            const auto x = descending_thresholds(a);
            if (std::abs(x.front() - x.back()) > 1e-12 * x.front())
                raise(ErrorCode::UnsupportedModel,
                      "ACIG level>=2 supports only diagonal rectangles {z_j > x for all j in S}");
            auto it = mu.acig_c.find(s);
            double c = (it != mu.acig_c.end()) ? it->second : 1.0;
            return c * std::pow(x.front(), -alpha * mu.beta);
        }
        case MeasureFamily::MardiaDependent: {
            double t = 0.0;
            for (const auto& [_, xj] : a.thresholds) t += std::pow(xj, alpha);
            return 1.0 / t;
        }
        case MeasureFamily::CompleteDependence: {
            double mx = 0.0;
            for (const auto& [_, xj] : a.thresholds) mx = std::max(mx, xj);
            return std::pow(mx, -alpha);
        }
        case MeasureFamily::ClaytonLevy: {
            // Clayton Levy copula applied to marginal tails x_j^-alpha:
            // (sum_j (x_j^-alpha)^-theta)^(-1/theta); comonotone (min) as
            // theta -> infinity, vanishing joint mass as theta -> 0
            const double theta = mu.beta;
            double t = 0.0;
            for (const auto& [_, xj] : a.thresholds) t += std::pow(xj, alpha * theta);
            return std::pow(t, -1.0 / theta);
        }
        case MeasureFamily::DiscreteMixtureLevel1: {
            if (s > 1) return 0.0;
            const int j = a.thresholds.begin()->first;
            return mu.p[j] * std::pow(a.thresholds.begin()->second, -alpha);
        }
        case MeasureFamily::Scaled:
            if (mu.scale == 0.0) return 0.0;
            return mu.scale * eval_measure(mu.children[0], a);
        case MeasureFamily::Sum: {
            double v = 0.0;
            for (const auto& c : mu.children) v += eval_measure(c, a);
            return v;
        }
        case MeasureFamily::Product:
            if (s < mu.level) raise(ErrorCode::ConeMismatch, "rectangle below measure cone level");
            return eval_product(mu, a);
    }
    raise(ErrorCode::BadParam, "unknown measure family");
}

double eval_union(const TailMeasure& mu, const std::vector<RectSet>& sets) {
    const int n = static_cast<int>(sets.size());
    if (n == 0) return 0.0;
    if (n > kMaxSubsetDim) raise(ErrorCode::BadParam, "union limited to 16 rectangles");
    double total = 0.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        RectSet inter;
        bool first = true;
        for (int k = 0; k < n; ++k) {
            if (!(mask & (1u << k))) continue;
            inter = first ? sets[k] : intersect(inter, sets[k]);
            first = false;
        }
        const double sign = (std::popcount(mask) % 2 == 1) ? 1.0 : -1.0;
        total += sign * eval_measure(mu, inter);
    }
    return total;
}

SpectrumEntry SpectrumEntry::make_rv(double alpha, PowerFn b, TailMeasure mu) {
    SpectrumEntry e;
    e.rv = true;
    e.alpha = alpha;
    e.b = b;
    e.mu = std::move(mu);
    return e;
}

SpectrumEntry SpectrumEntry::make_null(double gamma) {
    SpectrumEntry e;
    e.rv = false;
    e.gamma = gamma;
    return e;
}

MRVSpectrum make_spectrum(int d, std::vector<SpectrumEntry> entries) {
    check_dim(d);
    if (static_cast<int>(entries.size()) != d)
        raise(ErrorCode::SpectrumInvalid, "spectrum needs one entry per cone level 1..d");
    if (!entries.front().rv)
        raise(ErrorCode::SpectrumInvalid, "level-1 entry must be regularly varying");
    MRVSpectrum spec;
    spec.d = d;
    int delta = 0;
    double prev_alpha = 0.0;
    double gamma = -1.0;
    for (int i = 1; i <= d; ++i) {
        const auto& e = entries[i - 1];
        if (e.rv) {
            if (delta != i - 1)
                raise(ErrorCode::SpectrumInvalid, "RV entries must precede null-convergence entries");
            delta = i;
            if (!(e.alpha > 0.0))
                raise(ErrorCode::SpectrumInvalid, "alpha_i must be positive");
            if (e.alpha + 1e-12 < prev_alpha)
                raise(ErrorCode::SpectrumInvalid, "alpha_i must be nondecreasing in i");
            prev_alpha = e.alpha;
            if (std::abs(e.b.exponent - 1.0 / e.alpha) > 1e-9 * std::abs(e.b.exponent))
                raise(ErrorCode::SpectrumInvalid, "b_i must have exponent 1/alpha_i");
            if (std::abs(e.mu.alpha - e.alpha) > 1e-9 * e.alpha)
                raise(ErrorCode::SpectrumInvalid,
                      "mu_i homogeneity index must equal alpha_i");
        } else {
            if (!(e.gamma > 0.0) || !(e.gamma < entries.front().alpha / d))
                raise(ErrorCode::SpectrumInvalid, "null-convergence gamma must lie in (0, alpha_1/d)");
            if (gamma < 0.0)
                gamma = e.gamma;
            else if (std::abs(gamma - e.gamma) > 1e-12)
                raise(ErrorCode::SpectrumInvalid, "gamma must agree across null-convergence entries");
        }
    }
    spec.entries = std::move(entries);
    spec.delta = delta;
    return spec;
}

TailApprox tail_prob_approx(const MRVSpectrum& spec, const RectSet& a, double t) {
    if (a.dim != spec.d)
        raise(ErrorCode::DimensionMismatch, "set dimension does not match spectrum");
    if (!(t > 0.0)) raise(ErrorCode::DomainError, "t must be positive");
    const int i = cone_level(a);
    const auto& e = spec.entry(i);
    TailApprox out;
    if (e.rv) {
        out.value = eval_measure(e.mu, a) / invert(e.b)(t);
        out.upper_bound_only = false;
    } else {
        const double alpha1 = spec.entry(1).alpha;
        double minx = descending_thresholds(a).back();
        out.value = std::pow(t * minx, -i * (alpha1 + e.gamma));
        out.upper_bound_only = true;
    }
    return out;
}

double tail_prob_estimate(const MRVSpectrum& spec, const RectSet& a, double t) {
    const int i = cone_level(a);
    if (!spec.entry(i).rv)
        raise(ErrorCode::NullConvOnly, "null-convergence cone: no finite approximation");
    return tail_prob_approx(spec, a, t).value;
}

}  // namespace conetail
