#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pcert/tuner.hpp"

using namespace pcert;
using test::shipped;

namespace {

// Noise-free samples: m chosen so m/n equals the model value to 1/n.
std::vector<PilotSample> exact_samples(const LogisticModel& m, int s, std::vector<double> ps)
{
    const std::int64_t n = 100'000'000;
    std::vector<PilotSample> out;
    for (double p : ps) out.push_back({s, p, n, std::llround(m.predict(s, p) * n)});
    return out;
}

}  // namespace

TEST_SUITE("tuner") {

TEST_CASE("model predict and invert")
{
    LogisticModel m{1.0, 2.0, 0.5};
    CHECK(m.predict(16, 0.5) == doctest::Approx(1.0 / (1.0 + std::exp(1.0))));
    for (double f : {0.1, 0.5, 0.945}) CHECK(m.predict(16, m.invert(16, f)) == doctest::Approx(f));
    CHECK(scale_factor(16) == doctest::Approx(8.0));
    CHECK(logit(0.5) == 0.0);
}

TEST_CASE("two-scale fit recovers the model")
{
    LogisticModel truth{1.0, 2.0, 0.5};
    auto samples = exact_samples(truth, 72, {0.46, 0.48, 0.5, 0.52, 0.54});
    auto more = exact_samples(truth, 144, {0.47, 0.49, 0.5, 0.51, 0.53});
    samples.insert(samples.end(), more.begin(), more.end());
    LogisticModel fit = fit_model(samples);
    CHECK(std::abs(fit.a - truth.a) < 1e-4);
    CHECK(std::abs(fit.b - truth.b) < 1e-4);
    CHECK(std::abs(fit.pc - truth.pc) < 1e-6);
}

TEST_CASE("one-scale fit with pc given")
{
    LogisticModel truth{0.7, 3.0, 0.6};
    LogisticModel fit = fit_model(exact_samples(truth, 100, {0.58, 0.59, 0.6, 0.61, 0.62}), 0.6);
    CHECK(std::abs(fit.a - truth.a) < 1e-4);
    CHECK(std::abs(fit.b - truth.b) < 1e-4);
    CHECK(fit.pc == 0.6);
    CHECK_THROWS(fit_model(exact_samples(truth, 100, {0.58, 0.62})));
}

TEST_CASE("fit rejects degenerate input")
{
    CHECK_THROWS(fit_model({{72, 0.5, 100, 50}}, 0.5));
    CHECK_THROWS(fit_model({{72, 0.4, 100, 0}, {72, 0.5, 100, 0}}, 0.5));
    CHECK_THROWS(fit_model({{72, 0.4, 100, 100}, {72, 0.5, 100, 100}}, 0.5));
    CHECK_THROWS(fit_model({{72, 0.4, 100, 80}, {72, 0.5, 100, 20}}, 0.5));   // decreasing in p
}

TEST_CASE("thirds points and two-point refit")
{
    LogisticModel m{1.0, 2.0, 0.5};
    const int s0 = 256;
    Thirds t = thirds_points(m, s0);
    const double sigma = scale_factor(s0);
    CHECK(t.p_third == doctest::Approx(0.5 + (1.0 - std::log(2.0)) / (2.0 * sigma)));
    CHECK(t.p_two_thirds == doctest::Approx(0.5 + (1.0 + std::log(2.0)) / (2.0 * sigma)));
    CHECK(m.predict(s0, t.p_third) == doctest::Approx(1.0 / 3.0));
    CHECK(m.predict(s0, t.p_two_thirds) == doctest::Approx(2.0 / 3.0));

    // samples that sit exactly on the model reproduce it
    const std::int64_t n = 300'000'000;
    PilotSample lo{s0, t.p_third, n, n / 3}, hi{s0, t.p_two_thirds, n, 2 * n / 3};
    LogisticModel r = refit_two_points(lo, hi, 0.5);
    CHECK(r.a == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.b == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r.pc == 0.5);
}

TEST_CASE("parameter choice in closed form")
{
    LogisticModel m{1.0, 2.0, 0.5};
    const double expect = 0.5 + (1.0 + std::log(0.945 / 0.055)) / (2.0 * std::pow(256.0, 0.75));
    CHECK(target_p(m, 256) == doctest::Approx(expect).epsilon(1e-12));

    SidePlan plan = choose_parameters(m, 260, 4, 0.02, 400, 378);
    REQUIRE(plan.attempts.size() == 3);
    CHECK(plan.attempts[0].scale == 260);
    SidePlan at256 = choose_parameters(m, 256, 1, 0.02, 400, 378);
    CHECK(at256.attempts[0].p == Decimal::from_double(expect, 4, true));
    CHECK(at256.attempts[0].p.to_double() >= expect);
    CHECK(at256.attempts[0].p.to_double() < expect + 1e-4);
    CHECK(at256.implied_width == doctest::Approx(2.0 * (expect - 0.5)));
    CHECK(at256.attempts[0].p < at256.attempts[1].p);
    CHECK(at256.attempts[1].p < at256.attempts[2].p);
    CHECK(at256.attempts[0].predicted_f >= 0.945);
    CHECK(at256.pass_within_attempts > at256.attempts[0].pass_probability);

    CHECK_THROWS(choose_parameters(m, 3, 4, 0.02, 400, 378));
    CHECK_THROWS(choose_parameters(m, 256, 1, 0.02, 400, 378, 4));
}

TEST_CASE("distance to pc shrinks by 2^(-3/4) per doubling")
{
    LogisticModel m{0.8, 1.7, 0.59};
    for (int s : {16, 64, 256}) {
        const double ratio = (target_p(m, 2 * s) - m.pc) / (target_p(m, s) - m.pc);
        CHECK(std::abs(ratio - std::pow(2.0, -0.75)) < 1e-12);
    }
}

TEST_CASE("planning tail")
{
    CHECK(planning_tail(4, 0.5, 3) == doctest::Approx(5.0 / 16.0));
    CHECK(planning_tail(400, 0.8639, 378) == doctest::Approx(1.14899e-7).epsilon(1e-4));
    CHECK(planning_tail(10, 0.0, 1) == 0.0);
    CHECK(planning_tail(10, 1.0, 10) == 1.0);
}

TEST_CASE("pilots are monotone in p and use disjoint seed ranges")
{
    const LatticeRep& sq = shipped("square");
    std::vector<Decimal> ps = {Decimal::parse("0.45"), Decimal::parse("0.5"), Decimal::parse("0.55")};
    auto out = pilot(sq, Mode::bond, 72, ps, 1000);
    REQUIRE(out.size() == 3);
    CHECK(out[0].m < out[1].m);
    CHECK(out[1].m < out[2].m);
    CHECK(out[1].fraction() > 0.3);
    CHECK(out[1].fraction() < 0.7);
    // the second p uses the next block of seeds
    auto second = pilot(sq, Mode::bond, 72, {ps[1]}, 1000, pilot_seed_base + 1000);
    CHECK(second[0].m == out[1].m);
}

}
