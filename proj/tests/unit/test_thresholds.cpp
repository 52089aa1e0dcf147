#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>

#include "frontlab/classifier.hpp"
#include "frontlab/eigensolve.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/thresholds.hpp"

using namespace frontlab;

namespace {

const Nonlinearity kLogistic = Nonlinearity::logistic();

ProblemSpec mu_template(double h0_fraction) {
    const double ls = critical_length_lstar(0.5, 1, 0, 1);
    return make_problem(0.5, 1.0, 1.0, 0.0, h0_fraction * ls, 1.0, kLogistic, 100);
}

ThresholdRun entry(double value, Verdict v) { return ThresholdRun{value, v, 50.0, 0.0, 0.0, "bisection"}; }

}  // namespace

TEST_CASE("monotone history") {
    CHECK(monotone_history({}));
    CHECK(monotone_history({entry(1, Verdict::Vanishing), entry(2, Verdict::Spreading), entry(1.5, Verdict::Vanishing)}));
    CHECK_FALSE(monotone_history({entry(1, Verdict::Spreading), entry(2, Verdict::Vanishing)}));
    CHECK(monotone_history({entry(1, Verdict::Vanishing), entry(2, Verdict::Vanishing)}));
}

TEST_CASE("existence hypotheses") {
    CHECK(mu_star_hypothesis_warnings(mu_template(0.5)).empty());
    // b > 0, beta > 0 and h0 past pi / sqrt(c0^2 - beta^2): neither hypothesis holds
    const double ls = critical_length_lstar(0.5, 1, 1, 1);
    const auto robin = make_problem(0.5, 1.0, 1.0, 1.0, 0.95 * ls, 1.0, kLogistic, 100);
    CHECK(0.95 * ls > std::numbers::pi / std::sqrt(4.0 - 0.25));
    CHECK(mu_star_hypothesis_warnings(robin).size() == 1);
    CHECK(mu_star_hypothesis_warnings(make_problem(2.5, 1.0, 1.0, 0.0, 1.0, 1.0, kLogistic, 100)).size() == 1);
}

TEST_CASE("mu star bracket, run count and re-verified endpoints") {
    const auto tmpl = mu_template(0.5);
    ThresholdOptions opts;
    opts.tol = 0.05;
    const double lo = 0.25, hi = 4.0;
    const auto r = mu_star(tmpl, lo, hi, opts);
    CHECK(r.outcome == ThresholdOutcome::Bracketed);
    CHECK(r.parameter == ThresholdParameter::Mu);
    CHECK(r.width <= opts.tol);
    CHECK(r.width == doctest::Approx(r.hi - r.lo));
    CHECK(r.bisection_steps <= static_cast<int>(std::ceil(std::log2((hi - lo) / opts.tol))));
    CHECK(r.endpoints_verified);
    CHECK(r.monotone);
    CHECK(r.warnings.empty());
    CHECK(r.runs == static_cast<int>(r.history.size()));
    int retries = 0;
    for (const auto& h : r.history) retries += h.stage == "retry";
    CHECK(r.runs == 2 + r.bisection_steps + 2 + retries);

    // fresh runs just outside the bracket agree with the endpoint verdicts
    const double ls = critical_length_lstar(0.5, 1, 0, 1);
    for (auto [mu, expected] : {std::pair{r.lo - 0.05, Verdict::Vanishing}, {r.hi + 0.05, Verdict::Spreading}}) {
        auto s = tmpl;
        s.mu = mu;
        s.tmax = 100.0;
        CHECK(classify(simulate(s), s, ls, std::nullopt).verdict == expected);
    }
}

TEST_CASE("mu star short circuit and failures") {
    const auto big = mu_template(1.05);
    const auto r = mu_star(big, 0.5, 2.0);
    CHECK(r.outcome == ThresholdOutcome::SpreadingForAll);
    CHECK(r.runs == 0);

    ThresholdOptions quick;
    quick.tmax = 40.0;
    CHECK_THROWS_AS(mu_star(mu_template(0.5), 0.05, 0.1, quick), NoBracket);
    CHECK_THROWS_AS(mu_star(make_problem(2.5, 1.0, 1.0, 0.0, 1.0, 1.0, kLogistic, 100), 0.5, 2.0), DomainError);
    CHECK_THROWS_AS(mu_star(mu_template(0.5), 2.0, 1.0), DomainError);
}

TEST_CASE("lambda star agrees with a sweep and reports the degenerate cases") {
    const double ls = std::numbers::pi;
    const auto tmpl = make_problem(0.0, 1.0, 1.0, 0.0, 0.6 * ls, 1.0, kLogistic, 100);
    const auto psi = initial_profile(1.0, 0.0, tmpl.h0, tmpl.nx);

    // the flip located by a plain sweep
    double last_vanishing = 0.0, first_spreading = 0.0;
    for (double lambda = 0.25; lambda <= 4.0; lambda += 0.25) {
        auto s = tmpl;
        s.u0 = psi;
        for (auto& v : s.u0) v *= lambda;
        s.tmax = 100.0;
        const auto v = classify(simulate(s), s, ls, std::nullopt).verdict;
        if (v == Verdict::Vanishing) last_vanishing = lambda;
        if (v == Verdict::Spreading) {
            first_spreading = lambda;
            break;
        }
    }
    REQUIRE(first_spreading > last_vanishing);
    REQUIRE(last_vanishing > 0.0);

    ThresholdOptions opts;
    opts.tol = 0.05;
    const auto r = lambda_star(tmpl, psi, 0.25, 4.0, opts);
    CHECK(r.outcome == ThresholdOutcome::Bracketed);
    CHECK(r.parameter == ThresholdParameter::Lambda);
    CHECK(r.width <= 0.05);
    CHECK(r.lo >= last_vanishing);
    CHECK(r.hi <= first_spreading);
    CHECK(r.endpoints_verified);
    CHECK(r.monotone);

    const auto wide = make_problem(0.0, 1.0, 1.0, 0.0, 1.1 * ls, 1.0, kLogistic, 100);
    const auto zero = lambda_star(wide, initial_profile(1.0, 0.0, wide.h0, 100), 0.1, 1.0);
    CHECK(zero.outcome == ThresholdOutcome::LambdaStarZero);

    const auto never = lambda_star(tmpl, psi, 0.05, 0.1, opts);
    CHECK(never.outcome == ThresholdOutcome::PossiblyInfinite);
    CHECK_FALSE(never.warnings.empty());

    CHECK_THROWS_AS(lambda_star(tmpl, std::vector<double>(10, 1.0), 0.1, 1.0), DomainError);
}
