#pragma once

#include <vector>

#include "frontlab/shooting.hpp"

namespace frontlab {

/// -phi'' + beta phi' - m phi = zeta phi on (0, ell),
/// a phi(0) - b phi'(0) = 0,  phi(ell) = 0.
struct EigenProblem {
    double ell = 1.0;
    double beta = 0.0;
    double a = 1.0;
    double b = 0.0;
    double m = 1.0;

    /// Throws DomainError on ell <= 0, negative weights, or a + b = 0.
    void validate() const;
};

enum class EigenBranch { Trigonometric, Linear, Hyperbolic };

struct EigenResult {
    double zeta1 = 0.0;
    EigenBranch branch = EigenBranch::Trigonometric;
    /// k with k^2 = zeta1 + m - beta^2/4 (trigonometric), or kappa with
    /// -kappa^2 = that quantity (hyperbolic).
    double wavenumber = 0.0;
    std::vector<double> x;
    /// Principal eigenfunction on x, scaled to unit maximum.
    std::vector<double> phi;
};

/// Principal eigenvalue via phi = exp(beta x / 2) psi, which turns the Robin
/// condition into (a - b beta/2) psi(0) = b psi'(0) and leaves a
/// transcendental equation in the wavenumber. Both the trigonometric and the
/// hyperbolic branches are handled. `samples` <= 0 picks a grid fine enough
/// for the differencing residual to stay below 1e-6.
EigenResult principal_eigenvalue(const EigenProblem& p, int samples = 0);

/// Eigenvalue only, skipping the eigenfunction samples.
double principal_eigenvalue_value(const EigenProblem& p);

/// Same eigenvalue by direct shooting on the ODE: bisection on zeta for the
/// onset of a zero of phi in (0, ell]. Independent of the transcendental route.
double principal_eigenvalue_shooting(const EigenProblem& p, const IntegratorOptions& options = {});

/// Sup-norm residual of the eigen equation under second-order central
/// differencing at the interior sample nodes.
double eigen_residual(const EigenProblem& p, const EigenResult& r);

/// ell* with zeta1(ell*) = 0. Throws NoCriticalLength if |beta| >= 2 sqrt(m).
double critical_length_lstar(double beta, double a, double b, double m);

/// ell_* with gamma1(ell_*) = -beta^2/4, gamma1 being the beta = 0
/// eigenvalue. Throws NoCriticalLength if |beta| >= 2 sqrt(m).
double critical_length_substar(double beta, double a, double b, double m);

}  // namespace frontlab
