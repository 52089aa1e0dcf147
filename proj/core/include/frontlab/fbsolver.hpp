#pragma once

#include <functional>
#include <vector>

#include "frontlab/nonlinearity.hpp"

namespace frontlab {

/// Full parameterization of the free boundary problem
///
///   u_t - u_xx + beta u_x = f(u),   0 < x < h(t),
///   a u - b u_x = 0 at x = 0,   u = 0 and h' = -mu u_x at x = h(t),
///
/// with u(0, x) = u0 sampled at nx + 1 uniform nodes on [0, h0].
struct ProblemSpec {
    double beta = 0.0;
    double mu = 1.0;
    double a = 1.0;
    double b = 0.0;
    double h0 = 1.0;
    std::vector<double> u0;
    Nonlinearity nonlinearity = Nonlinearity::logistic();
    int nx = 800;
    /// Zero selects the default 2e-4 * h0^2.
    double dt = 0.0;
    double tmax = 10.0;

    double time_step() const noexcept { return dt > 0.0 ? dt : 2e-4 * h0 * h0; }

    /// Throws DomainError unless the parameters and u0 are admissible:
    /// u0(h0) = 0, u0 > 0 inside, and the left boundary condition holds to
    /// discretization accuracy.
    void validate() const;
};

/// lambda * psi on nx + 1 nodes, psi(x) = sin(k (h0 - x)) / max with k h0 in
/// [pi/2, pi] fixed by a psi(0) = b psi'(0). This is sin(pi x / h0) for
/// b = 0 and cos(pi x / (2 h0)) for a = 0.
std::vector<double> initial_profile(double a, double b, double h0, int nx, double lambda = 1.0);

/// Spec with u0 = lambda * initial_profile(...).
ProblemSpec make_problem(double beta, double mu, double a, double b, double h0, double lambda = 1.0,
                         Nonlinearity n = Nonlinearity::logistic(), int nx = 800, double tmax = 10.0,
                         double dt = 0.0);

/// Solution on the front-fixed grid xi_i = i / nx, x = xi h(t).
struct FrontState {
    double t = 0.0;
    double h = 0.0;
    double hprime = 0.0;
    std::vector<double> w;

    static FrontState initial(const ProblemSpec& spec);
    double sup() const noexcept;
};

/// Front speed -mu u_x(t, h) from the second-order one-sided difference.
double front_speed(const FrontState& s, const ProblemSpec& spec);

/// Largest step allowed by dt <= 0.4 dxi h / (|beta| + |h'|), capped by spec.time_step().
double stable_time_step(const FrontState& s, const ProblemSpec& spec);

/// Advances one step of size dt. Throws NumericalError on a negative density
/// below -1e-10 or a non-positive front speed.
FrontState step(const FrontState& s, const ProblemSpec& spec, double dt);

struct Snapshot {
    double t = 0.0;
    double h = 0.0;
    std::vector<double> x;
    std::vector<double> u;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> h;
    std::vector<double> hprime;
    std::vector<double> supu;
    std::vector<double> eta;
    std::vector<Snapshot> snapshots;
    /// Profile at the last recorded time.
    Snapshot final_profile;
    double tmax = 0.0;
    bool stopped_early = false;
    /// sup u fell below 1e-200 and the run was ended; h is frozen from there on.
    bool extinct = false;

    std::size_t size() const noexcept { return times.size(); }
};

struct SimulateOptions {
    std::vector<double> snapshot_times;
    /// Checked after every step; returning true ends the run early.
    std::function<bool(const FrontState&)> stop_when;
};

/// Runs to spec.tmax, recording h, h', sup u and the ceiling eta(t) after
/// every step. Throws NumericalError (with the failing time) when a step
/// fails or sup u rises above eta(t) + 1e-6.
Trajectory simulate(const ProblemSpec& spec, const SimulateOptions& options = {});

/// eta(t) for eta' = f(eta), eta(0) = eta0 > 1; decreases to 1.
double ode_upper_bound(const Nonlinearity& n, double eta0, double t);

}  // namespace frontlab
