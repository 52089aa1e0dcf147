#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "frontlab/eigensolve.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/fbsolver.hpp"
#include "oracles.hpp"

using namespace frontlab;

namespace {

constexpr double kPi = std::numbers::pi;

// u on the physical grid of s, linearly interpolated at x; zero beyond the front
double value_at(const FrontState& s, double x) {
    if (x >= s.h) return 0.0;
    const double pos = x / s.h * static_cast<double>(s.w.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double th = pos - static_cast<double>(i);
    return (1.0 - th) * s.w[i] + th * s.w[std::min(i + 1, s.w.size() - 1)];
}

}  // namespace

TEST_CASE("initial profile family") {
    const auto d = initial_profile(1.0, 0.0, 2.0, 100, 0.7);
    for (int i = 0; i <= 100; ++i) CHECK(std::abs(d[i] - 0.7 * std::sin(kPi * i / 100.0)) < 1e-14);
    const auto n = initial_profile(0.0, 1.0, 2.0, 100);
    for (int i = 0; i <= 100; ++i) CHECK(std::abs(n[i] - std::cos(0.5 * kPi * i / 100.0)) < 1e-14);
    // Robin: a psi(0) = b psi'(0) exactly for the continuous profile
    const double a = 1.0, b = 0.5, h0 = 3.0;
    const auto r = initial_profile(a, b, h0, 3000);
    const double dx = h0 / 3000;
    const double slope = (-3 * r[0] + 4 * r[1] - r[2]) / (2 * dx);
    CHECK(std::abs(a * r[0] - b * slope) < 1e-5);
    CHECK(*std::max_element(r.begin(), r.end()) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("spec validation") {
    auto s = make_problem(0.5, 1.0, 1.0, 0.0, 2.0);
    CHECK_NOTHROW(s.validate());
    auto zero = s;
    std::fill(zero.u0.begin(), zero.u0.end(), 0.0);
    CHECK_THROWS_AS(zero.validate(), DomainError);
    auto bad_bc = s;
    bad_bc.u0 = initial_profile(0.0, 1.0, 2.0, s.nx);
    CHECK_THROWS_AS(bad_bc.validate(), DomainError);
    auto bad_mu = s;
    bad_mu.mu = 0.0;
    CHECK_THROWS_AS(bad_mu.validate(), DomainError);
    auto bad_ab = s;
    bad_ab.a = 0.0;
    CHECK_THROWS_AS(bad_ab.validate(), DomainError);
    auto bad_size = s;
    bad_size.u0.pop_back();
    CHECK_THROWS_AS(bad_size.validate(), DomainError);
}

TEST_CASE("small broad data grows at the linearized rate") {
    const double dt = 1e-2;
    auto spec = make_problem(0.0, 1.0, 1.0, 0.0, 1000.0, 1e-8, Nonlinearity::logistic(), 400, 1.0, dt);
    const auto s0 = FrontState::initial(spec);
    const auto s1 = step(s0, spec, dt);
    const std::size_t mid = 200;
    const double rate = s1.w[mid] / s0.w[mid];
    CHECK(std::abs(rate - std::exp(dt)) < dt * dt);
}

TEST_CASE("one step matches a fine-grid oracle") {
    // start past the initial layer, where u0 is not yet compatible with the front condition
    const double h0 = 4.0, t0 = 0.5;
    auto coarse = make_problem(0.5, 1.0, 1.0, 0.0, h0, 1.0, Nonlinearity::logistic(), 800);
    auto fine = make_problem(0.5, 1.0, 1.0, 0.0, h0, 1.0, Nonlinearity::logistic(), 3200);
    const double dt = coarse.time_step();
    auto f = FrontState::initial(fine);
    const int warmup = static_cast<int>(std::lround(16 * t0 / dt));
    for (int i = 0; i < warmup; ++i) f = step(f, fine, dt / 16);

    FrontState c0;
    c0.t = f.t;
    c0.h = f.h;
    c0.w.resize(801);
    for (std::size_t i = 0; i <= 800; ++i) c0.w[i] = f.w[4 * i];
    c0.hprime = front_speed(c0, coarse);

    const auto c1 = step(c0, coarse, dt);
    for (int i = 0; i < 16; ++i) f = step(f, fine, dt / 16);
    double worst = 0.0;
    for (std::size_t i = 0; i < c1.w.size(); ++i) worst = std::max(worst, std::abs(c1.w[i] - f.w[4 * i]));
    CHECK(worst < 1e-6);
    CHECK(std::abs(c1.h - f.h) < 1e-6);
}

TEST_CASE("Robin and Neumann boundary rows hold after a step") {
    for (double a : {0.0, 1.0}) {
        auto spec = make_problem(0.3, 1.0, a, 1.0, 3.0, 1.0, Nonlinearity::logistic(), 400);
        auto s = FrontState::initial(spec);
        for (int i = 0; i < 50; ++i) s = step(s, spec, stable_time_step(s, spec));
        const double dxi = 1.0 / 400;
        const double slope = (-3 * s.w[0] + 4 * s.w[1] - s.w[2]) / (2 * dxi * s.h);
        CHECK(std::abs(a * s.w[0] - spec.b * slope) < 1e-12);
        CHECK(s.w.back() == 0.0);
    }
}

TEST_CASE("ode ceiling") {
    const auto n = Nonlinearity::logistic();
    CHECK(ode_upper_bound(n, 1.5, 1.0) == doctest::Approx(oracle::logistic_ode(1.5, 1.0)).epsilon(1e-10));
    CHECK(ode_upper_bound(n, 1.5, 1.0) == doctest::Approx(1.5 * std::exp(1.0) / (1.0 + 1.5 * (std::exp(1.0) - 1.0))).epsilon(1e-10));
    CHECK(ode_upper_bound(n, 1.5, 0.0) == 1.5);
    CHECK(std::abs(ode_upper_bound(n, 2.0, 30.0) - 1.0) < 1e-6);
    CHECK_THROWS_AS(ode_upper_bound(n, 1.0, 1.0), DomainError);
}

TEST_CASE("spreading run: front advances, density persists, invariants hold") {
    const double ls = critical_length_lstar(0.5, 1, 0, 1);
    auto spec = make_problem(0.5, 1.0, 1.0, 0.0, ls + 0.1, 1.0, Nonlinearity::logistic(), 400, 10.0);
    const auto tr = simulate(spec, SimulateOptions{std::vector<double>{2.0, 5.0}, {}});
    CHECK(tr.h.back() > spec.h0);
    CHECK(tr.supu.back() > 0.5);
    REQUIRE(tr.snapshots.size() == 2);
    CHECK(tr.snapshots[0].t == 2.0);
    CHECK(tr.final_profile.t == doctest::Approx(10.0));
    const auto n = tr.size();
    CHECK(tr.h.size() == n);
    CHECK(tr.hprime.size() == n);
    CHECK(tr.supu.size() == n);
    CHECK(tr.eta.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(tr.hprime[i] > 0.0);
        CHECK(tr.supu[i] <= tr.eta[i] + 1e-6);
        if (i > 0) CHECK(tr.h[i] >= tr.h[i - 1]);
    }
}

TEST_CASE("strong negative advection: vanishing by t = 40") {
    auto spec = make_problem(-2.5, 1.0, 1.0, 0.0, 2.0, 1.0, Nonlinearity::logistic(), 400, 40.0);
    const auto tr = simulate(spec);
    CHECK(tr.supu.back() < 1e-3);
    CHECK(tr.hprime.back() < 1e-3);
}

TEST_CASE("small mu with h0 below lstar stays below lstar + 0.05") {
    const double ls = critical_length_lstar(0.0, 1, 0, 1);
    auto spec = make_problem(0.0, 0.01, 1.0, 0.0, 0.8 * ls, 1.0, Nonlinearity::logistic(), 400, 60.0);
    const auto tr = simulate(spec);
    CHECK(tr.h.back() <= ls + 0.05);
}

TEST_CASE("comparison in mu and in the initial amplitude") {
    const double dt = 1e-3;
    const auto n = Nonlinearity::logistic();
    auto lo = make_problem(0.5, 0.8, 1.0, 0.0, 2.0, 1.0, n, 200, 8.0, dt);
    auto hi = lo;
    hi.mu = 1.2;
    const auto a = simulate(lo);
    const auto b = simulate(hi);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.h[i] <= b.h[i] + 1e-6);

    auto small = make_problem(0.5, 1.0, 1.0, 0.0, 2.0, 0.5, n, 200, 8.0, dt);
    auto large = make_problem(0.5, 1.0, 1.0, 0.0, 2.0, 1.0, n, 200, 8.0, dt);
    const auto s = simulate(small, SimulateOptions{std::vector<double>{4.0}, {}});
    const auto l = simulate(large, SimulateOptions{std::vector<double>{4.0}, {}});
    for (const auto* pair : {&s.snapshots.front(), &s.final_profile}) {
        const auto& ps = *pair;
        const auto& pl = pair == &s.final_profile ? l.final_profile : l.snapshots.front();
        FrontState big{pl.t, pl.h, 0.0, pl.u};
        for (std::size_t i = 0; i < ps.x.size(); ++i) CHECK(ps.u[i] <= value_at(big, ps.x[i]) + 1e-6);
    }
}

TEST_CASE("second-order convergence of h(T) in space") {
    const auto n = Nonlinearity::logistic();
    double h[4];
    const int grids[4] = {50, 100, 200, 400};
    for (int k = 0; k < 4; ++k) {
        auto spec = make_problem(0.5, 1.0, 1.0, 0.0, 3.0, 1.0, n, grids[k], 1.0, 2e-5);
        h[k] = simulate(spec).h.back();
    }
    const double extrapolated = h[3] + (h[3] - h[2]) / 3.0;
    const double e1 = std::abs(h[1] - extrapolated);
    const double e2 = std::abs(h[2] - extrapolated);
    CHECK(e1 / e2 >= 3.0);
    CHECK(std::abs(h[0] - extrapolated) / e1 >= 3.0);
}

TEST_CASE("negative density beyond the clamp aborts") {
    auto spec = make_problem(0.0, 1.0, 1.0, 0.0, 2.0, 1.0, Nonlinearity::logistic(), 100);
    auto s = FrontState::initial(spec);
    // an absurd step lets the explicit advection overshoot
    spec.beta = 1e6;
    CHECK_THROWS_AS(step(s, spec, 1.0), NumericalError);
}
