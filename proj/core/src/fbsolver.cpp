#include "frontlab/fbsolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "frontlab/eigensolve.hpp"
#include "frontlab/errors.hpp"

namespace frontlab {

namespace {

constexpr double kNegativeTolerance = 1e-10;
constexpr double kCeilingSlack = 1e-6;
constexpr double kExtinct = 1e-200;

std::string at_time(const char* what, double t) {
    std::ostringstream os;
    os.precision(10);
    os << what << " at t = " << t;
    return os.str();
}

double one_sided_slope(const std::vector<double>& w, double dxi, double h) {
    const auto n = w.size() - 1;
    return (3.0 * w[n] - 4.0 * w[n - 1] + w[n - 2]) / (2.0 * dxi * h);
}

void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag, std::vector<double>& upper,
                       std::vector<double>& rhs) {
    const auto n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

double rk4_bound_step(const Nonlinearity& f, double eta, double dt) {
    const double k1 = f(eta);
    const double k2 = f(eta + 0.5 * dt * k1);
    const double k3 = f(eta + 0.5 * dt * k2);
    const double k4 = f(eta + dt * k3);
    return eta + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double advance_bound(const Nonlinearity& f, double eta, double dt) {
    // eta' = f(eta) stiffens with |f'(eta)|; keep each RK4 substep well inside its stability region
    const double rate = std::abs(f.derivative(eta)) + 1.0;
    const int substeps = static_cast<int>(std::ceil(dt * rate / 0.5));
    const double h = dt / std::max(1, substeps);
    for (int i = 0; i < std::max(1, substeps); ++i) eta = rk4_bound_step(f, eta, h);
    return eta;
}

}  // namespace

void ProblemSpec::validate() const {
    if (!std::isfinite(beta)) throw DomainError("beta must be finite");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
    if (a < 0.0 || b < 0.0 || !(a + b > 0.0)) throw DomainError("need a, b >= 0 and a + b > 0");
    if (!(h0 > 0.0) || !std::isfinite(h0)) throw DomainError("h0 must be positive");
    if (nx < 4) throw DomainError("nx must be at least 4");
    if (!(tmax > 0.0)) throw DomainError("tmax must be positive");
    if (dt < 0.0) throw DomainError("dt must be non-negative");
    nonlinearity.require_valid();
    if (u0.size() != static_cast<std::size_t>(nx) + 1) {
        throw DomainError("initial profile must have nx + 1 samples");
    }
    if (std::abs(u0.back()) > 1e-12) throw DomainError("initial profile must vanish at x = h0");
    for (std::size_t i = 1; i + 1 < u0.size(); ++i) {
        if (!(u0[i] > 0.0) || !std::isfinite(u0[i])) throw DomainError("initial profile must be positive inside");
    }
    const double dx = h0 / nx;
    const double slope = (-3.0 * u0[0] + 4.0 * u0[1] - u0[2]) / (2.0 * dx);
    const double scale = *std::max_element(u0.begin(), u0.end());
    // second-order one-sided slope error ~ dx^2 |u'''| / 3
    const double tol = 10.0 * scale * (a + b) * (dx * dx / (h0 * h0 * h0) * 32.0 + 1e-9);
    if (std::abs(a * u0[0] - b * slope) > tol) {
        throw DomainError("initial profile violates the boundary condition at x = 0");
    }
    if (-mu * (3.0 * u0[nx] - 4.0 * u0[nx - 1] + u0[nx - 2]) / (2.0 * dx) <= 0.0) {
        throw DomainError("initial profile must have u_x(h0) < 0");
    }
}

std::vector<double> initial_profile(double a, double b, double h0, int nx, double lambda) {
    if (nx < 2) throw DomainError("nx must be at least 2");
    const double k = principal_eigenvalue({h0, 0.0, a, b, 1.0}, 2).wavenumber;
    std::vector<double> u(static_cast<std::size_t>(nx) + 1);
    double peak = 0.0;
    for (int i = 0; i <= nx; ++i) {
        const double x = h0 * i / nx;
        u[i] = std::sin(k * (h0 - x));
        peak = std::max(peak, u[i]);
    }
    // the continuous maximum, so that lambda is the sup norm of u0
    if (k * h0 >= 0.5 * std::numbers::pi) peak = 1.0;
    for (auto& v : u) v *= lambda / peak;
    u.back() = 0.0;
    return u;
}

ProblemSpec make_problem(double beta, double mu, double a, double b, double h0, double lambda, Nonlinearity n,
                         int nx, double tmax, double dt) {
    ProblemSpec s;
    s.beta = beta;
    s.mu = mu;
    s.a = a;
    s.b = b;
    s.h0 = h0;
    s.nonlinearity = std::move(n);
    s.nx = nx;
    s.tmax = tmax;
    s.dt = dt;
    s.u0 = initial_profile(a, b, h0, nx, lambda);
    return s;
}

FrontState FrontState::initial(const ProblemSpec& spec) {
    FrontState s;
    s.t = 0.0;
    s.h = spec.h0;
    s.w = spec.u0;
    s.hprime = front_speed(s, spec);
    return s;
}

double FrontState::sup() const noexcept {
    return w.empty() ? 0.0 : *std::max_element(w.begin(), w.end());
}

double front_speed(const FrontState& s, const ProblemSpec& spec) {
    const double dxi = 1.0 / (static_cast<double>(s.w.size()) - 1.0);
    return -spec.mu * one_sided_slope(s.w, dxi, s.h);
}

double stable_time_step(const FrontState& s, const ProblemSpec& spec) {
    const double dxi = 1.0 / (static_cast<double>(s.w.size()) - 1.0);
    const double speed = std::abs(spec.beta) + std::abs(s.hprime);
    const double cfl = speed > 0.0 ? 0.4 * dxi * s.h / speed : spec.time_step();
    return std::min(spec.time_step(), cfl);
}

FrontState step(const FrontState& s, const ProblemSpec& spec, double dt) {
    const auto N = s.w.size() - 1;
    const double dxi = 1.0 / static_cast<double>(N);
    const double hp = front_speed(s, spec);
    if (!(hp > 0.0)) throw NumericalError(at_time("front speed not positive", s.t));

    FrontState out;
    out.t = s.t + dt;
    out.h = s.h + dt * hp;

    // explicit advection in the moving frame plus reaction
    std::vector<double> rhs(N);
    for (std::size_t i = 1; i < N; ++i) {
        const double xi = static_cast<double>(i) * dxi;
        const double v = (xi * hp - spec.beta) / s.h;
        rhs[i] = s.w[i] + dt * (v * (s.w[i + 1] - s.w[i - 1]) / (2.0 * dxi) + spec.nonlinearity(s.w[i]));
    }

    // implicit diffusion on the new domain
    const double r = dt / (out.h * out.h * dxi * dxi);
    std::vector<double> lower(N, -r), diag(N, 1.0 + 2.0 * r), upper(N, -r);
    lower[0] = 0.0;
    if (spec.b == 0.0) {
        diag[0] = 1.0;
        upper[0] = 0.0;
        rhs[0] = 0.0;
    } else {
        // (a + 3 sigma) w0 - 4 sigma w1 + sigma w2 = 0 with w2 eliminated through row 1
        const double sigma = spec.b / (2.0 * out.h * dxi);
        diag[0] = r * (spec.a + 2.0 * sigma);
        upper[0] = sigma * (1.0 - 2.0 * r);
        rhs[0] = sigma * rhs[1];
    }
    solve_tridiagonal(lower, diag, upper, rhs);

    out.w.resize(N + 1);
    for (std::size_t i = 0; i < N; ++i) {
        double v = rhs[i];
        if (!std::isfinite(v)) throw NumericalError(at_time("non-finite density", out.t));
        if (v < 0.0) {
            if (v < -kNegativeTolerance) throw NumericalError(at_time("negative density", out.t));
            v = 0.0;
        }
        out.w[i] = v;
    }
    out.w[N] = 0.0;
    out.hprime = front_speed(out, spec);
    if (!(out.hprime > 0.0)) throw NumericalError(at_time("front speed not positive", out.t));
    return out;
}

Trajectory simulate(const ProblemSpec& spec, const SimulateOptions& options) {
    spec.validate();
    const auto& f = spec.nonlinearity;
    auto state = FrontState::initial(spec);
    const double eta0 = state.sup() + 1.0;
    double eta = eta0;

    std::vector<double> targets = options.snapshot_times;
    std::sort(targets.begin(), targets.end());
    targets.erase(std::remove_if(targets.begin(), targets.end(), [&](double t) { return t < 0.0 || t > spec.tmax; }),
                  targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::size_t next = 0;

    Trajectory tr;
    tr.tmax = spec.tmax;
    auto snapshot = [&](const FrontState& s) {
        Snapshot snap;
        snap.t = s.t;
        snap.h = s.h;
        const auto n = s.w.size();
        snap.x.resize(n);
        for (std::size_t i = 0; i < n; ++i) snap.x[i] = s.h * static_cast<double>(i) / static_cast<double>(n - 1);
        snap.u = s.w;
        return snap;
    };
    auto record = [&](const FrontState& s) {
        tr.times.push_back(s.t);
        tr.h.push_back(s.h);
        tr.hprime.push_back(s.hprime);
        tr.supu.push_back(s.sup());
        tr.eta.push_back(eta);
    };

    record(state);
    while (next < targets.size() && targets[next] <= 0.0) {
        tr.snapshots.push_back(snapshot(state));
        ++next;
    }

    const double tiny = 1e-12 * std::max(1.0, spec.tmax);
    while (state.t < spec.tmax - tiny) {
        if (state.sup() < kExtinct) {
            tr.extinct = true;
            break;
        }
        double dt = stable_time_step(state, spec);
        const double stop = next < targets.size() ? std::min(targets[next], spec.tmax) : spec.tmax;
        bool hit = false;
        if (state.t + dt >= stop - tiny) {
            dt = stop - state.t;
            hit = true;
        }
        state = step(state, spec, dt);
        if (hit) state.t = stop;
        eta = advance_bound(f, eta, dt);
        if (state.sup() > eta + kCeilingSlack) throw NumericalError(at_time("sup u exceeded the ODE ceiling", state.t));
        record(state);
        while (next < targets.size() && targets[next] <= state.t + tiny) {
            tr.snapshots.push_back(snapshot(state));
            ++next;
        }
        if (options.stop_when && options.stop_when(state)) {
            tr.stopped_early = true;
            break;
        }
    }
    tr.final_profile = snapshot(state);
    return tr;
}

double ode_upper_bound(const Nonlinearity& n, double eta0, double t) {
    if (!(eta0 > 1.0)) throw DomainError("ceiling needs eta0 > 1");
    double eta = eta0;
    const double h = 1e-3;
    double s = 0.0;
    while (s < t) {
        const double dt = std::min(h, t - s);
        eta = advance_bound(n, eta, dt);
        s += dt;
    }
    return eta;
}

}  // namespace frontlab
