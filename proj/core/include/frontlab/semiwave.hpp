#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frontlab/nonlinearity.hpp"
#include "frontlab/shooting.hpp"

namespace frontlab {

enum class WaveKind { SemiWave, FiniteWave, TravelingLeft, TravelingRight, Tadpole, StationaryIncreasing };

std::string to_string(WaveKind kind);

struct WaveSample {
    double z;
    double q;
    double dq;
};

/// A sampled solution of q'' = drift * q' - f(q), ordered by increasing z.
///
/// - SemiWave: z in [0, Z], q(0) = 0, drift = c - beta.
/// - FiniteWave: z in [0, z_c], drift = c - beta, endpoint = z_c.
/// - TravelingLeft/Right: left end of the sampled window at z = 0, drift = c.
/// - Tadpole: z in [-Z, 0], V(0) = 0, drift = c0.
/// - StationaryIncreasing: x in [0, X], drift = beta.
struct WaveProfile {
    WaveKind kind = WaveKind::SemiWave;
    std::optional<double> speed;
    double drift = 0.0;
    std::vector<WaveSample> samples;
    std::optional<double> endpoint;
    /// q'(0) for semi-waves, finite waves, tadpoles and stationary profiles;
    /// q' at the left end of the window for traveling waves.
    double slope0 = 0.0;
};

struct SpeedResult {
    double c_tilde = 0.0;
    /// |c_tilde - mu q'(0; c_tilde - beta)|
    double residual = 0.0;
    WaveProfile profile;
};

struct WaveOptions {
    IntegratorOptions integrator{};
    /// Distance from the saddle (1, 0) at which unstable/stable manifolds are launched.
    double launch_offset = 1e-8;
    /// Trajectory budget in units of 1/sqrt(f'(0)).
    double budget = 100.0;
    /// Acceptance of the tadpole's decayed left end.
    double tadpole_tol = 1e-4;

    WaveOptions halved() const;
};

enum class Direction { Left, Right };

/// Semi-wave with speed c: q'' = (c - beta) q' - f(q), q(0) = 0, q(inf) = 1.
/// Traced backward from the saddle (1, 0) along its stable direction until
/// q crosses 0. Throws NoSemiWave when c - beta >= c0.
WaveProfile shoot_semiwave(double c, double beta, const Nonlinearity& n, const WaveOptions& options = {});

/// q'(0) of the semi-wave, without samples. As c - beta approaches c0 the
/// crossing of q = 0 recedes to infinity and the slope tends to 0; with
/// `zero_if_exhausted` a run that exhausts its budget reports 0.
double semiwave_slope(double c, double beta, const Nonlinearity& n, const WaveOptions& options = {},
                      bool zero_if_exhausted = false);

/// Spreading speed: the unique c in (0, c0 + beta) with c = mu q'(0; c - beta).
/// Throws NoSemiWave when beta <= -c0.
SpeedResult solve_ctilde(double beta, double mu, const Nonlinearity& n, const WaveOptions& options = {});

/// Critical advection beta* > c0 at which c_tilde(beta) = beta - c0.
double solve_beta_star(double mu, const Nonlinearity& n, const WaveOptions& options = {});

/// Finite wave q_c on [0, z_c]: q(0) = 0, mu q'(0) = c_tilde, q'(z_c) = 0.
/// Throws NoFiniteWave unless 0 < c < c_tilde.
WaveProfile finite_wave(double c, double beta, double mu, const Nonlinearity& n, const WaveOptions& options = {});
WaveProfile finite_wave(double c, double beta, double mu, double c_tilde, const Nonlinearity& n,
                        const WaveOptions& options = {});

/// Monotone heteroclinic of q'' = c q' - f(q). Left: q(-inf) = 1, q(inf) = 0,
/// needs c <= -c0. Right: q(-inf) = 0, q(inf) = 1, needs c >= c0. The
/// sampled window stops where the decaying end reaches launch_offset.
WaveProfile traveling_wave(double c, Direction direction, const Nonlinearity& n, const WaveOptions& options = {});

/// Tadpole wave: V'' = c0 V' - f(V) on z < 0, V(0) = 0, -mu V'(0) = beta - c0,
/// V(-inf) = 0. Exists only for beta in (c0, beta*); otherwise NoWave.
WaveProfile tadpole_wave(double beta, double mu, const Nonlinearity& n, const WaveOptions& options = {});

/// Increasing stationary solution on the half line: v'' = beta v' - f(v),
/// a v(0) = b v'(0), v(inf) = 1. Needs beta < c0 and a > 0.
WaveProfile stationary_increasing(double beta, double a, double b, const Nonlinearity& n,
                                  const WaveOptions& options = {});

/// Sup over samples of the residual of q' = dq/dz and q'' = drift q' - f(q),
/// derivatives taken by five-point finite-difference weights on the
/// (possibly non-uniform) sample grid.
double profile_residual(const WaveProfile& p, const Nonlinearity& n);

struct TailFit {
    double K = 0.0;
    double rho = 0.0;
};

/// Fits 1 - q(z) <= K exp(-rho z) on the samples where 1 - q lies in
/// [lo, hi]; K is raised until the bound holds on every such sample.
TailFit fit_upper_tail(const WaveProfile& p, double lo = 1e-7, double hi = 1e-2);

}  // namespace frontlab
