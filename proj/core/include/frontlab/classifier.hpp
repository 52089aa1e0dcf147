#pragma once

#include <optional>
#include <string>

#include "frontlab/fbsolver.hpp"

namespace frontlab {

enum class Verdict { Spreading, Vanishing, VirtualSpreading, VirtualVanishing, Undetermined };

std::string to_string(Verdict v);
/// Inverse of to_string; throws DomainError on an unknown name.
Verdict verdict_from_string(const std::string& name);

struct ClassifierOptions {
    double margin = 0.05;
    double eps_van = 1e-3;
    double eps_h = 1e-3;
    double eps_one = 0.05;
    /// Half width of the window around c * tmax inspected for virtual spreading.
    double window_half_width = 2.0;
};

struct Evidence {
    double h_final = 0.0;
    double hprime_final = 0.0;
    double supu_final = 0.0;
    double t_final = 0.0;
    std::optional<double> lstar;
    std::optional<double> ctilde;
    /// [x_lo, x_hi] inspected by the virtual spreading rule, and min u on it.
    std::optional<double> window_lo;
    std::optional<double> window_hi;
    std::optional<double> window_min;
    /// Which rule fired: "spreading-length", "vanishing", "virtual-window",
    /// "virtual-decay", or "none".
    std::string rule = "none";
    std::string diagnostic;
};

struct Classification {
    Verdict verdict = Verdict::Undetermined;
    Evidence evidence;
};

/// Rules, first match wins:
///  1. |beta| < c0 and h reached lstar + margin: Spreading.
///  2. sup u and h' below eps_van, eps_h at the end, and h <= lstar + margin
///     whenever lstar exists: Vanishing.
///  3. beta >= c0: u within eps_one of 1 on the window around c * t_end,
///     c = (beta - c0 + ctilde) / 2: VirtualSpreading; otherwise with
///     sup u < eps_van, Vanishing if h' < eps_h, else VirtualVanishing.
///  4. Undetermined.
/// A run that ended by extinction counts as having reached its horizon.
Classification classify(const Trajectory& traj, const ProblemSpec& spec, std::optional<double> lstar,
                        std::optional<double> ctilde, const ClassifierOptions& options = {});

/// classify() with lstar and ctilde computed from the problem where they exist.
Classification classify(const Trajectory& traj, const ProblemSpec& spec, const ClassifierOptions& options = {});

/// lstar for the problem, or empty when |beta| >= c0.
std::optional<double> lstar_for(const ProblemSpec& spec);
/// ctilde for the problem, or empty when beta <= -c0.
std::optional<double> ctilde_for(const ProblemSpec& spec);

}  // namespace frontlab
