#include "conetail/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "conetail/random_sum.hpp"

namespace conetail {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::vector<double> draw(const SampleKind& kind, const JumpModel& m, RngStream& rng) {
    switch (kind.type) {
        case SampleKind::Vector:
            return sample_vector(m, rng);
        case SampleKind::Sum:
            return sample_sum(m, kind.n, rng);
        case SampleKind::CompoundPoisson:
            return sample_compound_poisson(m, kind.lambda, kind.s, rng);
    }
    raise(ErrorCode::BadParam, "unknown sample kind");
}

long long shard_hits(const SampleKind& kind, const JumpModel& m, const RectSet& scaled,
                     long long count, std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    long long hits = 0;
    for (long long k = 0; k < count; ++k)
        if (contains(scaled, draw(kind, m, rng))) ++hits;
    return hits;
}

}  // namespace

Estimate estimate_from_hits(long long hits, long long n_samples) {
    if (n_samples < 1) raise(ErrorCode::BadParam, "n_samples must be >= 1");
    Estimate e;
    e.hits = hits;
    e.n_samples = n_samples;
    e.p_hat = static_cast<double>(hits) / static_cast<double>(n_samples);
    e.stderr_ = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n_samples));
    // Wilson 95% interval
    const double n = static_cast<double>(n_samples);
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (e.p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        kZ95 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / n + z2 / (4.0 * n * n)) / denom;
    e.ci_lo = std::max(0.0, center - half);
    e.ci_hi = std::min(1.0, center + half);
    return e;
}

bool insufficient_samples(const Estimate& e, double theory) {
    return e.hits == 0 && theory > e.ci_hi;
}

Estimate estimate_tail_prob_serial(const SampleKind& kind, const JumpModel& m, const RectSet& a,
                                   double t, long long n_samples, std::uint64_t seed,
                                   std::uint64_t stream_base) {
    if (n_samples < 1) raise(ErrorCode::BadParam, "n_samples must be >= 1");
    if (!(t > 0.0)) raise(ErrorCode::DomainError, "t must be positive");
    const RectSet scaled = a.scaled(t);
    const long long shards = (n_samples + kShardSize - 1) / kShardSize;
    long long hits = 0;
    for (long long g = 0; g < shards; ++g) {
        const long long count = std::min(kShardSize, n_samples - g * kShardSize);
        hits += shard_hits(kind, m, scaled, count, seed, stream_base + g);
    }
    return estimate_from_hits(hits, n_samples);
}

Estimate estimate_tail_prob(const SampleKind& kind, const JumpModel& m, const RectSet& a,
                            double t, long long n_samples, std::uint64_t seed,
                            std::uint64_t stream_base) {
    if (n_samples < 1) raise(ErrorCode::BadParam, "n_samples must be >= 1");
    if (!(t > 0.0)) raise(ErrorCode::DomainError, "t must be positive");
    const RectSet scaled = a.scaled(t);
    const long long shards = (n_samples + kShardSize - 1) / kShardSize;
    long long hits = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : hits)
    for (long long g = 0; g < shards; ++g) {
        const long long count = std::min(kShardSize, n_samples - g * kShardSize);
        hits += shard_hits(kind, m, scaled, count, seed, stream_base + g);
    }
    return estimate_from_hits(hits, n_samples);
}

double TheoryModel::approx(const RectSet& a, double t, double s) const {
    if (is_levy) return levy_tail_approx(levy, a, t, s, regime);
    return tail_prob_estimate(spectrum, a, t);
}

TheoryModel auto_theory(const JumpModel& m, const SampleKind& kind) {
    TheoryModel th;
    switch (kind.type) {
        case SampleKind::Vector:
            th.spectrum = model_spectrum(m);
            break;
        case SampleKind::Sum:
            if (kind.n < 1) raise(ErrorCode::BadParam, "sum needs n >= 1");
            th.spectrum = self_convolve(model_spectrum(m), static_cast<int>(kind.n));
            break;
        case SampleKind::CompoundPoisson:
            th.is_levy = true;
            th.levy = LevySpec(model_spectrum(m), kind.lambda);
            th.regime = choose_regime(th.levy);
            break;
    }
    return th;
}

StudyResult convergence_study(const SampleKind& kind, const JumpModel& m,
                              const TheoryModel& theory, const RectSet& a,
                              const std::vector<double>& t_grid, long long n_samples,
                              std::uint64_t seed) {
    if (t_grid.empty()) raise(ErrorCode::BadParam, "t grid must be nonempty");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1]))
            raise(ErrorCode::BadParam, "t grid must be strictly increasing");

    StudyResult out;
    double prev_dev = -1.0;
    for (std::size_t row = 0; row < t_grid.size(); ++row) {
        const double t = t_grid[row];
        const double approx = theory.approx(a, t, kind.s);
        const Estimate e =
            estimate_tail_prob(kind, m, a, t, n_samples, seed, row * kStreamsPerRow);
        StudyRow r;
        r.t = t;
        r.p_hat = e.p_hat;
        r.stderr_ = e.stderr_;
        r.ci_lo = e.ci_lo;
        r.ci_hi = e.ci_hi;
        r.approx = approx;
        r.ratio = approx > 0.0 ? e.p_hat / approx : 0.0;
        r.n_samples = n_samples;
        r.seed = seed;
        r.insufficient = insufficient_samples(e, approx);
        if (approx > 0.0) {
            const double dev = std::abs(r.ratio - 1.0);
            if (prev_dev >= 0.0 && dev > prev_dev) out.ratio_tightening = false;
            prev_dev = dev;
        }
        out.rows.push_back(r);
    }
    return out;
}

std::string study_csv(const StudyResult& r) {
    std::ostringstream os;
    os.precision(17);
    os << "t,p_hat,stderr,ci_lo,ci_hi,approx,ratio,n_samples,seed\n";
    for (const auto& row : r.rows) {
        os << row.t << ',' << row.p_hat << ',' << row.stderr_ << ',' << row.ci_lo << ','
           << row.ci_hi << ',' << row.approx << ',' << row.ratio << ',' << row.n_samples << ','
           << row.seed << '\n';
    }
    return os.str();
}

namespace {

// Adaptive Simpson quadrature.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(std::abs(whole) * rel_tol, 1e-300);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double pareto_sum_tail(int m, double alpha, double y) {
    if (m < 0) raise(ErrorCode::BadParam, "m must be nonnegative");
    if (m == 0) return 0.0;  // empty sum is 0, never exceeds y > 0
    if (y <= m) return 1.0;  // each summand exceeds 1 almost surely
    if (m == 1) return std::pow(y, -alpha);
    // condition on the last summand: X has density alpha x^-(alpha+1) on [1, inf)
    const auto integrand = [&](double x) {
        return pareto_sum_tail(m - 1, alpha, y - x) * alpha * std::pow(x, -alpha - 1.0);
    };
    const double tail = std::pow(y - (m - 1), -alpha);  // X > y-(m-1): certain exceedance
    return tail + integrate(integrand, 1.0, y - (m - 1), 1e-12);
}

namespace {

// Enumerate multinomial allocations of `total` shocks over d coordinates,
// requiring at least one shock in each threshold coordinate.
void allocations(int total, int d, std::vector<int>& counts, int coord, double weight,
                 const std::vector<double>& p, const std::function<double(const std::vector<int>&)>& leaf,
                 double& acc) {
    if (coord == d - 1) {
        counts[coord] = total;
        double w = weight * std::pow(p[coord], total);
        // remaining multinomial coefficient factor handled by caller scheme below
        acc += w * leaf(counts);
        return;
    }
    for (int k = 0; k <= total; ++k) {
        counts[coord] = k;
        allocations(total - k, d, counts, coord + 1, weight * std::pow(p[coord], k), p, leaf, acc);
    }
}

double multinomial_coeff(long long n, const std::vector<int>& counts) {
    double v = std::lgamma(static_cast<double>(n) + 1.0);
    for (int c : counts) v -= std::lgamma(static_cast<double>(c) + 1.0);
    return std::exp(v);
}

}  // namespace

double oracle_discrete_mixture(const JumpModel& m, long long n, const RectSet& a, double t) {
    const bool two_shock = (m.family == ModelFamily::TwoShock);
    if (m.family != ModelFamily::DiscreteMixture && !two_shock)
        raise(ErrorCode::UnsupportedModel, "oracle covers discrete-mixture and two-shock models");
    if (m.noise) raise(ErrorCode::UnsupportedModel, "oracle requires the noise-free model");
    if (n < 0) raise(ErrorCode::BadParam, "n must be nonnegative");
    if (a.dim != m.d) raise(ErrorCode::DimensionMismatch, "set dimension does not match model");

    // n summands contribute `shocks` Pareto variables, each landing on a
    // coordinate independently with probabilities p; coordinate j is then
    // an independent m_j-fold Pareto sum (scaled by 2^{-1/alpha} for the
    // two-shock model).
    const long long shocks = two_shock ? 2 * n : n;
    const double scale = two_shock ? std::pow(2.0, 1.0 / m.alpha) : 1.0;
    if (shocks == 0) return 0.0;
    if (shocks > 60) raise(ErrorCode::BadParam, "oracle enumeration limited to 60 shocks");

    double total = 0.0;
    std::vector<int> counts(m.d, 0);
    const auto leaf = [&](const std::vector<int>& c) {
        double v = 1.0;
        for (const auto& [j, xj] : a.thresholds) {
            if (c[j] == 0) return 0.0;
            v *= pareto_sum_tail(c[j], m.alpha, scale * t * xj);
            if (v == 0.0) return 0.0;
        }
        return v;
    };
    const auto leaf_weighted = [&](const std::vector<int>& c) {
        return multinomial_coeff(shocks, c) * leaf(c);
    };
    allocations(static_cast<int>(shocks), m.d, counts, 0, 1.0, m.p, leaf_weighted, total);
    return total;
}

double oracle_single_vector(const JumpModel& m, const RectSet& a, double t) {
    if (a.dim != m.d) raise(ErrorCode::DimensionMismatch, "set dimension does not match model");
    // joint_survival handles the family support; coordinates outside S are
    // unconstrained (threshold 0).
    std::vector<double> x(m.d, 0.0);
    for (const auto& [j, xj] : a.thresholds) x[j] = t * xj;
    return joint_survival(m, x);
}

}  // namespace conetail
