#include <doctest.h>

#include <cmath>
#include <limits>

#include "frontlab/errors.hpp"
#include "frontlab/nonlinearity.hpp"

using namespace frontlab;

TEST_CASE("logistic passes every clause") {
    const auto n = Nonlinearity::logistic();
    const auto r = validate(n);
    CHECK(r.all_passed());
    CHECK(r.first_failure() == nullptr);
    CHECK(r.fp0 == doctest::Approx(1.0));
    CHECK(r.c0 == doctest::Approx(2.0));
    CHECK(n(0.0) == 0.0);
    CHECK(n(1.0) == 0.0);
    CHECK(n(0.5) == doctest::Approx(0.25));
    CHECK(n.validated());
}

TEST_CASE("cubic u(1-u)(1+u) passes, f(0.5) = 0.375") {
    const auto n = Nonlinearity::cubic_monostable(0.999);
    CHECK(validate(n).all_passed());
    const auto p = Nonlinearity::polynomial({0.0, 1.0, 0.0, -1.0});
    CHECK(p(0.5) == doctest::Approx(0.375));
    CHECK(p(0.5) <= p.fp0() * 0.5);
    CHECK(validate(p).all_passed());
}

TEST_CASE("u(1-u^2): fp0 = 1, c0 = 2, analytic derivative matches differences") {
    const auto n = Nonlinearity::polynomial({0.0, 1.0, 0.0, -1.0});
    CHECK(n.fp0() == 1.0);
    CHECK(n.c0() == 2.0);
    for (double u : {0.1, 0.7, 1.3, 4.0}) {
        const double h = 1e-6;
        const double fd = (n(u + h) - n(u - h)) / (2.0 * h);
        CHECK(n.derivative(u) == doctest::Approx(1.0 - 3.0 * u * u).epsilon(1e-12));
        CHECK(std::abs(fd - n.derivative(u)) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("c0 squared equals 4 fp0 within 2 ulp") {
    for (double g : {0.0, 0.25, 0.5, 0.9}) {
        const auto n = Nonlinearity::cubic_monostable(g);
        const double lhs = n.c0() * n.c0();
        const double rhs = 4.0 * n.fp0();
        CHECK(std::abs(lhs - rhs) <= 2.0 * std::numeric_limits<double>::epsilon() * rhs);
    }
}

TEST_CASE("rejections") {
    // bistable: f'(0) < 0
    CHECK_THROWS_AS(Nonlinearity::polynomial({0.0, -0.5, 1.5, -1.0}), DomainError);
    // f(1) != 0
    CHECK_THROWS_AS(Nonlinearity::polynomial({0.0, 1.0, -0.9}), DomainError);
    // exceeds its linearization: f = u + u^2 - 2u^3 has f(0.3) > 0.3
    const auto bad = Nonlinearity::unchecked({0.0, 1.0, 1.0, -2.0});
    const auto r = validate(bad);
    CHECK_FALSE(r.all_passed());
    REQUIRE(r.first_failure() != nullptr);
    CHECK_THROWS_AS(bad.require_valid(), DomainError);
    CHECK_THROWS_AS(Nonlinearity::cubic_monostable(1.0), DomainError);
    CHECK_THROWS_AS(Nonlinearity::cubic_monostable(-0.1), DomainError);
    CHECK_THROWS_AS(validate(Nonlinearity::logistic(), 50), DomainError);
    CHECK_THROWS_AS(validate(Nonlinearity::logistic(), 1000, 1.0), DomainError);
}

TEST_CASE("kind names") {
    CHECK(to_string(Nonlinearity::logistic().kind()) == "logistic");
    CHECK(to_string(Nonlinearity::cubic_monostable(0.5).kind()) == "cubic");
    CHECK(Nonlinearity::cubic_monostable(0.5).gamma() == 0.5);
}
