#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace frontlab {

/// (q, q') for a scalar second-order autonomous ODE.
using PhasePoint = std::array<double, 2>;

using PhaseRhs = std::function<void(const PhasePoint&, PhasePoint&)>;
using EventFunction = std::function<double(const PhasePoint&)>;

/// Controls for the adaptive one-step integrator behind every shooting solve.
struct IntegratorOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    double max_step = 0.25;
    /// Spacing of recorded samples; samples are placed by exact steps to each
    /// output point. Zero records nothing.
    double sample_spacing = 0.01;

    /// Half the step cap, tolerances tightened accordingly. Used by the
    /// step-halving convergence checks.
    IntegratorOptions halved() const;
    IntegratorOptions without_samples() const;
};

struct PhaseSample {
    double s;
    double q;
    double dq;
};

struct ShotResult {
    /// Index of the terminal event that fired, or -1 if the budget ran out.
    int event = -1;
    double s_end = 0.0;
    PhasePoint end{};
    std::vector<PhaseSample> samples;
    long steps = 0;
};

/// Integrates x' = rhs(x) forward in s from s = 0 until the first sign change
/// of any event function, or until s_max. Event crossings are located by
/// Brent-style root finding in which every trial state comes from an exact
/// single step from the last accepted point, so the located state carries
/// the integrator's full accuracy. The final sample is the event state.
ShotResult shoot(const PhaseRhs& rhs, PhasePoint start, double s_max,
                 std::span<const EventFunction> events, const IntegratorOptions& options);

}  // namespace frontlab
