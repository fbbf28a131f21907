// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every tolerance is pinned here; stochastic criteria run at fixed seeds
// so the whole suite is reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "conetail/json_io.hpp"
#include "conetail/montecarlo.hpp"
#include "conetail/random_sum.hpp"
#include "helpers.hpp"

using namespace conetail;
using conetail::testing::close;
using conetail::testing::random_rect;

namespace {

// Pinned seeds for the stochastic criteria; the suite is deterministic.
constexpr std::uint64_t kCriterion2Seed = 1;
constexpr std::uint64_t kCriterion3Seed = 1;
constexpr std::uint64_t kCriterion4Seed = 1;
constexpr std::uint64_t kCriterion6Seed = 1;

int failures = 0;

void report(int k, bool ok, const char* what, const std::string& detail) {
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", k, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RectSet diag2() { return RectSet(2, {{0, 1.0}, {1, 1.0}}); }

// 1. Exact-oracle agreement for the discrete mixture.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto m = make_discrete_mixture_model(2, 2.0, {0.5, 0.5}, false);
    const RectSet a = diag2();

    bool ok = true;
    std::string detail;

    // oracle value is exactly 0.5 t^-4 beyond t = 2
    for (double t : {4.0, 10.0, 40.0}) {
        const double oracle = oracle_discrete_mixture(m, 2, a, t);
        if (!close(oracle, 0.5 * std::pow(t, -4.0), 1e-12)) {
            ok = false;
            detail = "oracle mismatch at t=" + std::to_string(t);
        }
    }

    // Monte Carlo at t=10 with 1e7 samples, single-threaded reference
    const double t = 10.0;
    const double oracle = oracle_discrete_mixture(m, 2, a, t);  // 5e-5
    const auto e = estimate_tail_prob_serial(SampleKind::sum(2), m, a, t, 10000000, 20250801);
    if (std::abs(e.p_hat - oracle) > 3.0 * e.stderr_) {
        ok = false;
        detail = "MC off oracle: p_hat=" + std::to_string(e.p_hat);
    }

    // theory factor n!/(n-i)! = 2 against the oracle's asymptotic constant
    const double t2 = 40.0;
    const double constant = oracle_discrete_mixture(m, 2, a, t2) * std::pow(t2, 4.0) /
                            (0.5 * 0.5);  // relative to p1 p2 (x1 x2)^-alpha
    const double factor = closed_form_factor(FactorRule::Delta1, 2, 2);
    if (std::abs(constant - factor) > 0.02 * factor) {
        ok = false;
        detail = "asymptotic constant " + std::to_string(constant);
    }

    const double secs = elapsed(t0);
    if (secs > 120.0) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + "s > 120s";
    }
    report(1, ok, "discrete-mixture oracle, MC agreement, factor 2",
           "hits=" + std::to_string(e.hits) + ", " + std::to_string(secs).substr(0, 5) + "s");
}

// 2. Nearly-independent factor n^i through the study ratios.
void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto m = make_independence_model(2, 2.0);
    const auto kind = SampleKind::sum(2);
    const auto theory = auto_theory(m, kind);
    const std::vector<double> grid = {10.0, 20.0, 40.0};
    const std::uint64_t seed = kCriterion2Seed;
    const auto r = convergence_study(kind, m, theory, diag2(), grid, 10000000, seed);

    bool ok = r.ratio_tightening;
    std::string detail = "ratios";
    for (const auto& row : r.rows) {
        detail += " " + std::to_string(row.ratio).substr(0, 6);
        if (!(row.ratio >= 0.85 && row.ratio <= 1.15)) ok = false;
        if (!close(row.approx, 4.0 * std::pow(row.t, -4.0), 1e-12)) ok = false;
    }
    const double secs = elapsed(t0);
    if (secs > 180.0) ok = false;
    report(2, ok, "factor n^i = 4 ratio band and tightening", detail);
}

// 3. One-large-jump factor n for Marshall-Olkin sums.
void criterion3() {
    const auto m = make_marshall_olkin_equal(2, 1.0, 1.0);
    const RectSet a = diag2();
    const double t = 1000.0;
    // approx = 3 mu_2(A) t^-1.5 with mu_2(A) = 1 on the unit diagonal
    const double approx = 3.0 * std::pow(t, -1.5);
    const long long n = 100000000;
    const auto e = estimate_tail_prob(SampleKind::sum(3), m, a, t, n, kCriterion3Seed);
    const double ratio = e.p_hat / approx;
    const bool ok = ratio >= 0.8 && ratio <= 1.2;
    report(3, ok, "factor n = 3 at t=1e3 with 1e8 samples",
           "ratio=" + std::to_string(ratio) + ", hits=" + std::to_string(e.hits));
}

// 4. Compound-Poisson regime algebra plus the PowerS simulation check.
void criterion4() {
    bool ok = true;
    std::string detail;

    const RectSet a = diag2();
    const double t = 30.0;
    const LevySpec dm(model_spectrum(make_discrete_mixture_model(2, 1.0, {0.5, 0.5}, false)),
                      1.0);
    const double ps = levy_tail_approx(dm, a, t, 2.0, LevyRegime::PowerS) /
                      levy_tail_approx(dm, a, t, 1.0, LevyRegime::PowerS);
    if (!close(ps, 4.0, 1e-12)) ok = false, detail += "PowerS ratio " + std::to_string(ps);

    const LevySpec mo(model_spectrum(make_marshall_olkin_equal(2, 1.0, 1.0)), 1.0);
    const double lin = levy_tail_approx(mo, a, t, 2.0, LevyRegime::Linear) /
                       levy_tail_approx(mo, a, t, 1.0, LevyRegime::Linear);
    if (!close(lin, 2.0, 1e-12)) ok = false, detail += " Linear ratio " + std::to_string(lin);

    const LevySpec ind(model_spectrum(make_independence_model(2, 1.0)), 1.0);
    const double weight = levy_tail_approx(ind, a, t, 1.0, LevyRegime::PoissonMoment) /
                          (eval_measure(ind.jump_spectrum.entry(2).mu, a) / std::pow(t, 2.0));
    if (!close(weight, 2.0, 1e-12)) ok = false, detail += " PM weight " + std::to_string(weight);

    // simulation cross-check: two independent marginal subordinators are
    // one compound Poisson with mixture jumps at twice the rate
    const auto jumps = make_discrete_mixture_model(2, 1.0, {0.5, 0.5}, false);
    const long long n = 2000000;
    const auto e1 = estimate_tail_prob(SampleKind::compound_poisson(2.0, 1.0), jumps, a, t, n,
                                       kCriterion4Seed, 0);
    const auto e2 = estimate_tail_prob(SampleKind::compound_poisson(2.0, 2.0), jumps, a, t, n,
                                       kCriterion4Seed, kStreamsPerRow);
    const double ratio = e2.p_hat / e1.p_hat;
    if (e1.hits < 300) ok = false, detail += " denominator hits " + std::to_string(e1.hits);
    if (!(ratio >= 3.2 && ratio <= 4.8)) ok = false;
    report(4, ok, "CP regimes: s^i / linear / Poisson-moment, simulated s^2",
           "sim ratio=" + std::to_string(ratio) + ", denom hits=" + std::to_string(e1.hits) +
               (detail.empty() ? "" : ", " + detail));
}

// 5. Convolution engine equivalence and the two-shock factor bounds.
void criterion5() {
    bool ok = true;
    std::string detail;

    std::vector<JumpModel> models = {
        make_independence_model(2, 1.0),       make_independence_model(3, 2.0),
        make_marshall_olkin_equal(2, 1.0, 1.0), make_marshall_olkin_equal(3, 1.5, 1.0),
        make_marshall_olkin_proportional(3, 1.0, 1.0),
        make_mardia_model(2, 2.0),             make_mardia_model(3, 1.0),
        make_complete_dependence_model(3, 1.0), make_acig_model(2, 1.0, 1.5),
        make_acig_model(3, 2.0, 1.7),
        make_discrete_mixture_model(2, 1.0, {0.5, 0.5}, false),
        make_discrete_mixture_model(3, 2.0, {0.2, 0.5, 0.3}, false),
        make_two_shock_model(2, 1.0, {0.5, 0.5}),
        make_two_shock_model(3, 1.0, {0.4, 0.3, 0.3}),
    };
    RngStream rng(55, 0);
    for (const auto& model : models) {
        const auto spec = model_spectrum(model);
        for (int n = 2; n <= 4 && ok; ++n) {
            const auto fast = self_convolve(spec, n);
            const auto iter = self_convolve_iterated(spec, n);
            if (fast.delta != iter.delta) {
                ok = false;
                detail = "delta mismatch";
                break;
            }
            for (int i = 1; i <= spec.d && ok; ++i) {
                if (fast.entry(i).rv != iter.entry(i).rv) {
                    ok = false;
                    break;
                }
                if (!fast.entry(i).rv) continue;
                const bool diagonal = (model.family == ModelFamily::ACIG);
                for (int k = 0; k < 100; ++k) {
                    const RectSet r = random_rect(rng, spec.d, i, diagonal);
                    const double vf = eval_measure(fast.entry(i).mu, r);
                    const double vi = eval_measure(iter.entry(i).mu, r);
                    if (std::abs(vf - vi) > 1e-10 * std::max({1.0, vf, vi})) {
                        ok = false;
                        detail = "measure mismatch n=" + std::to_string(n) +
                                 " i=" + std::to_string(i);
                        break;
                    }
                }
            }
        }
    }

    // factor bounds n!/(n-i)! <= f_i(n) <= n^i, and f_2(2) = 3 exactly
    for (int n = 2; n <= 6; ++n) {
        for (int i = 1; i <= 4; ++i) {
            const double f = closed_form_factor(FactorRule::TwoShock, n, i);
            if (f < closed_form_factor(FactorRule::Delta1, n, i) - 1e-12 ||
                f > closed_form_factor(FactorRule::NearlyIndependent, n, i) + 1e-12)
                ok = false;
        }
    }
    if (closed_form_factor(FactorRule::TwoShock, 2, 2) != 3.0) ok = false;
    report(5, ok, "self_convolve == iterated convolve, two-shock bounds", detail);
}

// 6. Sampler marginal and copula exactness.
void criterion6() {
    bool ok = true;
    std::string detail;
    const long long n = 1000000;
    const double crit = 1.628 / std::sqrt(static_cast<double>(n));  // KS, 1% level

    int stream = 0;
    for (const auto& m :
         {make_independence_model(2, 2.0), make_marshall_olkin_equal(2, 1.0, 1.0),
          make_complete_dependence_model(2, 1.5), make_acig_model(2, 2.0, 1.5)}) {
        RngStream rng(kCriterion6Seed, stream++);
        std::vector<double> draws;
        draws.reserve(n);
        for (long long k = 0; k < n; ++k) draws.push_back(sample_vector(m, rng)[0]);
        std::sort(draws.begin(), draws.end());
        double d = 0.0;
        for (std::size_t k = 0; k < draws.size(); ++k) {
            const double f = 1.0 - std::pow(draws[k], -m.alpha);
            d = std::max(d, std::abs(f - (k + 1) / static_cast<double>(n)));
            d = std::max(d, std::abs(f - k / static_cast<double>(n)));
        }
        if (d >= crit) {
            ok = false;
            detail += " KS family " + std::to_string(static_cast<int>(m.family)) + " d=" +
                      std::to_string(d);
        }
    }

    // Marshall-Olkin survival-copula identity on a 3x3 grid
    {
        const auto m = make_marshall_olkin_equal(2, 1.0, 1.0);
        RngStream rng(kCriterion6Seed, 100);
        std::vector<std::vector<double>> draws;
        draws.reserve(n);
        for (long long k = 0; k < n; ++k) draws.push_back(sample_vector(m, rng));
        for (double x1 : {1.5, 2.0, 3.0}) {
            for (double x2 : {1.5, 2.0, 3.0}) {
                long long hits = 0;
                for (const auto& z : draws)
                    if (z[0] > x1 && z[1] > x2) ++hits;
                const double phat = static_cast<double>(hits) / n;
                const double truth = joint_survival(m, {x1, x2});
                const double se = std::sqrt(truth * (1.0 - truth) / n);
                if (std::abs(phat - truth) > 3.0 * se) {
                    ok = false;
                    detail += " MO grid (" + std::to_string(x1) + "," + std::to_string(x2) + ")";
                }
            }
        }
    }

    // Mardia joint exceedance at (1,1) is exactly 1/3
    {
        const auto m = make_mardia_model(2, 2.0);
        RngStream rng(kCriterion6Seed, 200);
        long long hits = 0;
        for (long long k = 0; k < n; ++k) {
            const auto z = sample_vector(m, rng);
            if (z[0] > 1.0 && z[1] > 1.0) ++hits;
        }
        const double phat = static_cast<double>(hits) / n;
        const double se = std::sqrt(phat * (1.0 - phat) / n);
        if (std::abs(phat - 1.0 / 3.0) > 3.0 * se) {
            ok = false;
            detail += " Mardia p=" + std::to_string(phat);
        }
    }
    report(6, ok, "KS marginals, MO survival grid, Mardia 1/3", detail);
}

// 7. Homogeneity of every measure family.
void criterion7() {
    bool ok = true;
    std::string detail;
    std::vector<TailMeasure> measures = {
        make_independence(2, 1, 1.0, {1.0, 1.0}),
        make_independence(3, 2, 1.5, {0.5, 2.0, 1.0}),
        make_mo_equal(2, 2, 1.0),
        make_mo_equal(3, 3, 2.0),
        make_mo_proportional(3, 2, 1.0),
        make_acig(2, 1, 2.0, 1.5),
        make_acig(2, 2, 1.0, 1.5, {{2, 0.7}}),
        make_mardia(3, 2.0),
        make_complete_dependence(3, 1.0),
        make_clayton_levy(2, 1.0, 2.0),
        make_discrete_mixture_level1(3, 1.0, {0.3, 0.3, 0.4}),
        scale_measure(make_mardia(2, 2.0), 2.5),
        add_measures({make_mardia(2, 1.0), make_complete_dependence(2, 1.0)}),
        product_measure(make_independence(2, 1, 1.0, {1.0, 1.0}),
                        make_independence(2, 1, 1.0, {1.0, 1.0}), 1, 2),
    };
    RngStream rng(77, 0);
    for (const auto& mu : measures) {
        const bool diagonal = (mu.family == MeasureFamily::ACIG && mu.level >= 2);
        for (int k = 0; k < 100; ++k) {
            const RectSet a = random_rect(rng, mu.d, std::max(1, mu.level), diagonal);
            const double base = eval_measure(mu, a);
            for (double t : {2.0, 10.0, 100.0}) {
                const double v = eval_measure(mu, a.scaled(t));
                const double want = std::pow(t, -mu.alpha) * base;
                if (std::abs(v - want) > 1e-10 * std::max(std::abs(base), 1e-300)) {
                    ok = false;
                    detail = "family " + std::to_string(static_cast<int>(mu.family));
                }
            }
        }
    }
    report(7, ok, "mu(tA) = t^-alpha mu(A) across families", detail);
}

// 8. Weight machinery against the Delta=1 accumulation computations.
void criterion8() {
    bool ok = true;
    std::string detail;
    const auto z = model_spectrum(make_discrete_mixture_model(4, 1.0, {0.25, 0.25, 0.25, 0.25},
                                                              false));
    for (int i = 2; i <= 4; ++i) {
        // step from a sum of fewer than i vectors: weights only at m = i-1
        const auto before = self_convolve_iterated(z, i - 1);
        const auto w1 = compute_weights(before, z, i);
        if (w1.I != i - 1) ok = false, detail += " I(n<i," + std::to_string(i) + ")=" +
                                                 std::to_string(w1.I);
        for (int m = 0; m <= i; ++m) {
            const bool want = (m == i - 1);
            if ((w1.c[m] != 0.0) != want) ok = false;
        }

        // step from a sum of at least i vectors: weights at m in {i-1, i}
        const auto at = self_convolve_iterated(z, i);
        const auto w2 = compute_weights(at, z, i);
        if (w2.I != i - 1) ok = false, detail += " I(n>i," + std::to_string(i) + ")=" +
                                                 std::to_string(w2.I);
        for (int m = 0; m <= i; ++m) {
            const bool want = (m == i - 1 || m == i);
            if ((w2.c[m] != 0.0) != want) ok = false;
        }
    }
    report(8, ok, "Delta=1 weights: I(i)=i-1, support {i-1} then {i-1,i}", detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0)
        std::printf("acceptance: all 8 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
