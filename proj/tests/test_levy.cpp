#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conetail/json_io.hpp"
#include "conetail/levy.hpp"
#include "conetail/random_sum.hpp"
#include "helpers.hpp"

using namespace conetail;

namespace {

RectSet diag2(double x = 1.0) { return RectSet(2, {{0, x}, {1, x}}); }

}  // namespace

TEST_CASE("linear regime scales linearly in s") {
    const LevySpec spec(model_spectrum(make_marshall_olkin_equal(2, 1.0, 1.0)), 1.0);
    const double v1 = levy_tail_approx(spec, diag2(), 50.0, 1.0, LevyRegime::Linear);
    const double v2 = levy_tail_approx(spec, diag2(), 50.0, 2.0, LevyRegime::Linear);
    CHECK(v2 / v1 == doctest::Approx(2.0));
}

TEST_CASE("power-s regime scales as s^i") {
    const LevySpec spec(model_spectrum(make_discrete_mixture_model(2, 1.0, {0.5, 0.5}, false)),
                        1.0);
    const double v1 = levy_tail_approx(spec, diag2(), 50.0, 1.0, LevyRegime::PowerS);
    const double v2 = levy_tail_approx(spec, diag2(), 50.0, 2.0, LevyRegime::PowerS);
    CHECK(v2 / v1 == doctest::Approx(4.0));
}

TEST_CASE("Poisson-moment regime weight at i=2, s=1 is 2") {
    const LevySpec ind(model_spectrum(make_independence_model(2, 1.0)), 1.0);
    const LevySpec dm(model_spectrum(make_discrete_mixture_model(2, 1.0, {1.0, 0.0}, false)),
                      1.0);
    const double pm = levy_tail_approx(ind, diag2(), 50.0, 1.0, LevyRegime::PoissonMoment);
    // mu_i(A) / b_1^{<-}(t)^i = t^-2 for unit-kappa independence on the diagonal
    CHECK(pm == doctest::Approx(2.0 * std::pow(50.0, -2.0)));
    // differs from the PowerS weight (lambda s)^i = 1 by the factor 2
    const LevySpec dm2(model_spectrum(make_discrete_mixture_model(2, 1.0, {0.5, 0.5}, false)),
                       1.0);
    const double ps = levy_tail_approx(dm2, diag2(), 50.0, 1.0, LevyRegime::PowerS);
    CHECK(pm / (ps / (0.5 * 0.5)) == doctest::Approx(2.0));
    (void)dm;
}

TEST_CASE("regime hypotheses are enforced") {
    const LevySpec ind(model_spectrum(make_independence_model(2, 1.0)), 1.0);
    // independence has alpha_2 = alpha_1 + alpha_1 exactly: not strictly
    // superadditive, Linear must refuse rather than guess
    CHECK_THROWS_AS(levy_tail_approx(ind, diag2(), 50.0, 1.0, LevyRegime::Linear), Error);
    try {
        levy_tail_approx(ind, diag2(), 50.0, 1.0, LevyRegime::Linear);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RegimeMismatch);
    }
    const LevySpec mo(model_spectrum(make_marshall_olkin_equal(2, 1.0, 1.0)), 1.0);
    CHECK_THROWS_AS(levy_tail_approx(mo, diag2(), 50.0, 1.0, LevyRegime::PowerS), Error);
    CHECK_THROWS_AS(levy_tail_approx(mo, diag2(), 50.0, 1.0, LevyRegime::PoissonMoment), Error);

    CHECK(choose_regime(ind) == LevyRegime::PoissonMoment);
    CHECK(choose_regime(mo) == LevyRegime::Linear);
    const LevySpec dm(model_spectrum(make_discrete_mixture_model(2, 1.0, {0.5, 0.5}, false)),
                      1.0);
    CHECK(choose_regime(dm) == LevyRegime::PowerS);
}

TEST_CASE("homogeneity in t per regime") {
    const RectSet a = diag2();
    const LevySpec mo(model_spectrum(make_marshall_olkin_equal(2, 1.0, 1.0)), 1.0);
    // Linear at level 2 decays with the cone index alpha_2 = 1.5
    CHECK(levy_tail_approx(mo, a, 100.0, 1.0, LevyRegime::Linear) /
              levy_tail_approx(mo, a, 50.0, 1.0, LevyRegime::Linear) ==
          doctest::Approx(std::pow(2.0, -1.5)));
    // PowerS and PoissonMoment decay as t^{-i alpha}
    const LevySpec dm(model_spectrum(make_discrete_mixture_model(2, 1.0, {0.5, 0.5}, false)),
                      1.0);
    CHECK(levy_tail_approx(dm, a, 100.0, 1.0, LevyRegime::PowerS) /
              levy_tail_approx(dm, a, 50.0, 1.0, LevyRegime::PowerS) ==
          doctest::Approx(std::pow(2.0, -2.0)));
}

TEST_CASE("intensity-horizon consistency and cross-module identities") {
    const auto ind_spec = model_spectrum(make_independence_model(2, 1.0));
    const RectSet a = diag2();
    // L with intensity lambda at horizon s matches intensity 1 at horizon lambda*s
    const LevySpec l2(ind_spec, 2.0), l1(ind_spec, 1.0);
    CHECK(levy_tail_approx(l2, a, 50.0, 3.0, LevyRegime::PoissonMoment) ==
          doctest::Approx(levy_tail_approx(l1, a, 50.0, 6.0, LevyRegime::PoissonMoment)));

    // PoissonMoment weight equals E tau^i for tau ~ Poisson(lambda s)
    for (double ls : {0.5, 2.0}) {
        const LevySpec l(ind_spec, ls);
        const double v = levy_tail_approx(l, a, 50.0, 1.0, LevyRegime::PoissonMoment);
        const double expect = expected_factor(CountDistribution::poisson(ls),
                                              FactorRule::NearlyIndependent, 2) *
                              std::pow(50.0, -2.0);
        CHECK(v == doctest::Approx(expect));
    }

    // PowerS weight equals the Delta1 factor (lambda s)^i
    const auto dm_spec = model_spectrum(make_discrete_mixture_model(2, 1.0, {0.5, 0.5}, false));
    for (double lambda : {0.5, 2.0}) {
        const LevySpec l(dm_spec, lambda);
        const double v = levy_tail_approx(l, a, 50.0, 3.0, LevyRegime::PowerS);
        const double expect = expected_factor(CountDistribution::poisson(lambda * 3.0),
                                              FactorRule::Delta1, 2) *
                              0.25 * std::pow(50.0, -2.0);
        CHECK(v == doctest::Approx(expect));
    }
}

TEST_CASE("marginal Levy tails") {
    // complete dependence: identical marginals
    const LevySpec cd(model_spectrum(make_complete_dependence_model(3, 1.0)), 2.0);
    const double m1 = marginal_levy_tail(cd, 1, 40.0);
    CHECK(marginal_levy_tail(cd, 2, 40.0) == doctest::Approx(m1));
    CHECK(marginal_levy_tail(cd, 3, 40.0) == doctest::Approx(m1));

    // independence jumps with rate lambda: marginal tail ~ lambda * Fbar(t)
    const LevySpec ind(model_spectrum(make_independence_model(2, 2.0)), 3.0);
    CHECK(marginal_levy_tail(ind, 1, 10.0) == doctest::Approx(3.0 * std::pow(10.0, -2.0)));

    // Clayton theta -> infinity approaches the complete-dependence value
    const auto big_theta = make_clayton_levy(2, 1.0, 1000.0);
    CHECK(std::abs(eval_measure(big_theta, diag2()) - 1.0) < 1e-3);
}

TEST_CASE("levy spec json round trip") {
    const LevySpec spec(model_spectrum(make_independence_model(2, 1.0)), 1.5);
    const json j = to_json(spec);
    const LevySpec back = levyspec_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.intensity == doctest::Approx(1.5));
}
