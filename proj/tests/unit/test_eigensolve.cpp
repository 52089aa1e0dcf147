#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>

#include "frontlab/eigensolve.hpp"
#include "frontlab/errors.hpp"
#include "oracles.hpp"

using namespace frontlab;

namespace {
constexpr double kPi = std::numbers::pi;

double closed_form(double ell, double beta, double m) { return beta * beta / 4 + kPi * kPi / (ell * ell) - m; }
}  // namespace

TEST_CASE("Dirichlet closed form") {
    CHECK(std::abs(principal_eigenvalue_value({kPi, 0, 1, 0, 1})) < 1e-12);
    CHECK(principal_eigenvalue_value({1, 1, 1, 0, 1}) == doctest::Approx(9.119604).epsilon(1e-7));
    for (double beta : {-1.5, 0.0, 1.5}) {
        for (double ell : {0.5, 1.0, kPi, 5.0}) {
            CHECK(std::abs(principal_eigenvalue_value({ell, beta, 1, 0, 1}) - closed_form(ell, beta, 1)) < 1e-10);
        }
    }
}

TEST_CASE("Neumann-Dirichlet cosine mode") {
    const auto r = principal_eigenvalue({2, 0, 0, 1, 1});
    CHECK(r.zeta1 == doctest::Approx(kPi * kPi / 16 - 1).epsilon(1e-12));
    for (std::size_t i = 0; i < r.x.size(); i += 97) CHECK(std::abs(r.phi[i] - std::cos(kPi * r.x[i] / 4)) < 1e-12);
    const double oracle = oracle::eigen_shooting(2, 0, 0, 1, 1, -2.0, 5.0);
    CHECK(std::abs(r.zeta1 - oracle) < 1e-8);
}

TEST_CASE("Robin cases agree with an independent RK4 shooting oracle") {
    struct Case {
        double ell, beta, a, b;
    };
    // the last three have a < b beta / 2; the final two land on the hyperbolic branch
    const Case cases[] = {{1.0, 0.0, 1.0, 1.0}, {3.0, 1.0, 0.5, 2.0}, {2.0, -1.0, 1.0, 0.3},
                          {2.0, 1.5, 0.5, 1.0}, {1.5, 1.8, 0.2, 1.0}, {4.0, 1.9, 0.1, 2.0}};
    for (const auto& c : cases) {
        const EigenProblem p{c.ell, c.beta, c.a, c.b, 1.0};
        const double z = principal_eigenvalue_value(p);
        const double o = oracle::eigen_shooting(c.ell, c.beta, c.a, c.b, 1.0, z - 5.0, z + 5.0, 20000);
        CAPTURE(c.ell);
        CAPTURE(c.beta);
        CHECK(std::abs(z - o) < 1e-8);
        CHECK(std::abs(z - principal_eigenvalue_shooting(p)) < 1e-8);
    }
}

TEST_CASE("hyperbolic branch is reached and positive on the interval") {
    // A = a - b beta / 2 < 0 with b / (|A| ell) < 1
    const EigenProblem p{4.0, 1.9, 0.1, 2.0, 1.0};
    const auto r = principal_eigenvalue(p);
    CHECK(r.branch == EigenBranch::Hyperbolic);
    for (std::size_t i = 0; i + 1 < r.phi.size(); ++i) CHECK(r.phi[i] > 0.0);
    CHECK(eigen_residual(p, r) < 1e-6);
}

TEST_CASE("eigenfunction residual and boundary conditions") {
    for (const EigenProblem p : {EigenProblem{1, 1, 1, 0, 1}, EigenProblem{3, -0.7, 0.4, 1.2, 1}, EigenProblem{2, 0, 0, 1, 1}}) {
        const auto r = principal_eigenvalue(p);
        CHECK(eigen_residual(p, r) < 1e-6);
        CHECK(r.phi.back() == 0.0);
        const double dx = r.x[1] - r.x[0];
        const double slope = (-3 * r.phi[0] + 4 * r.phi[1] - r.phi[2]) / (2 * dx);
        CHECK(std::abs(p.a * r.phi[0] - p.b * slope) < 1e-5);
    }
}

TEST_CASE("strict decrease in ell") {
    for (const auto& [beta, a, b] : {std::tuple{0.0, 1.0, 0.0}, std::tuple{1.0, 1.0, 1.0}, std::tuple{-1.0, 0.0, 1.0},
                                     std::tuple{1.8, 0.2, 1.0}}) {
        double prev = principal_eigenvalue_value({0.2, beta, a, b, 1});
        for (int i = 1; i < 20; ++i) {
            const double z = principal_eigenvalue_value({0.2 + 0.5 * i, beta, a, b, 1});
            CHECK(z < prev);
            prev = z;
        }
    }
}

TEST_CASE("gamma1 = zeta1 - beta^2/4 for b = 0") {
    for (double beta : {-1.0, 0.5, 1.7}) {
        for (double ell : {0.7, 2.0, 6.0}) {
            const double z = principal_eigenvalue_value({ell, beta, 1, 0, 1});
            const double g = principal_eigenvalue_value({ell, 0.0, 1, 0, 1});
            CHECK(std::abs(g - (z - beta * beta / 4)) < 1e-10);
        }
    }
}

TEST_CASE("critical lengths") {
    CHECK(critical_length_lstar(0, 1, 0, 1) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(critical_length_lstar(1, 1, 0, 1) == doctest::Approx(2 * kPi / std::sqrt(3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(critical_length_lstar(2, 1, 0, 1), NoCriticalLength);
    CHECK_THROWS_AS(critical_length_substar(-2.5, 1, 0, 1), NoCriticalLength);
    CHECK(critical_length_substar(0, 1, 0, 1) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(critical_length_substar(1, 1, 0, 1) == doctest::Approx(2 * kPi / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(critical_length_substar(1.9, 1, 0, 1) == doctest::Approx(2 * kPi / std::sqrt(4.0 - 1.9 * 1.9)).epsilon(1e-12));
    // Robin: both lengths are roots of their defining eigenvalues
    const double ls = critical_length_lstar(0.8, 1, 1, 1);
    CHECK(std::abs(principal_eigenvalue_value({ls, 0.8, 1, 1, 1})) < 1e-10);
    const double lsub = critical_length_substar(0.8, 1, 1, 1);
    CHECK(std::abs(principal_eigenvalue_value({lsub, 0.0, 1, 1, 1}) + 0.16) < 1e-10);
}

TEST_CASE("invalid problems") {
    CHECK_THROWS_AS(principal_eigenvalue_value({0.0, 0, 1, 0, 1}), DomainError);
    CHECK_THROWS_AS(principal_eigenvalue_value({1.0, 0, 0, 0, 1}), DomainError);
    CHECK_THROWS_AS(principal_eigenvalue_value({1.0, 0, -1, 1, 1}), DomainError);
}
