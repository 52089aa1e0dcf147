#pragma once

#include <memory>
#include <vector>

#include "frontlab/fbsolver.hpp"
#include "frontlab/semiwave.hpp"

namespace frontlab {

struct SpeedFit {
    /// Mean of h' over the final third of the run.
    double c_measured = 0.0;
    double c_tilde = 0.0;
    /// Mean of h(t) - c_tilde t over the same window.
    double H = 0.0;
    /// Least-squares slope of h(t) - c_tilde t over the same window.
    double drift = 0.0;
    std::size_t samples = 0;
    double t_from = 0.0;
    double t_to = 0.0;
};

/// Throws DomainError when the final third holds fewer than 50 samples.
SpeedFit fit_speed(const Trajectory& traj, double c_tilde);

/// Monotone cubic (PCHIP) interpolant of a wave profile's q samples,
/// extended by `below` left of the first sample and `above` right of the last.
class MonotoneProfile {
public:
    MonotoneProfile(const WaveProfile& p, double below, double above);
    double operator()(double z) const;
    double z_min() const noexcept { return z_min_; }
    double z_max() const noexcept { return z_max_; }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    double z_min_ = 0.0;
    double z_max_ = 0.0;
    double below_ = 0.0;
    double above_ = 1.0;
};

/// sup over the snapshot nodes of |u(t, x) - v(x) q(c_tilde t + H - x)|, with
/// v = 1 when a = 0. q is zero for negative arguments and one past its last
/// sample; v is one past its last sample. Throws DomainError when a > 0 and
/// no stationary profile is given.
double profile_error(const Snapshot& snap, const ProblemSpec& spec, double c_tilde, double H,
                     const WaveProfile* vtilde, const WaveProfile& qtilde);

}  // namespace frontlab
