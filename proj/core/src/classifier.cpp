#include "frontlab/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "frontlab/eigensolve.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/semiwave.hpp"

namespace frontlab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Spreading: return "Spreading";
        case Verdict::Vanishing: return "Vanishing";
        case Verdict::VirtualSpreading: return "VirtualSpreading";
        case Verdict::VirtualVanishing: return "VirtualVanishing";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

Verdict verdict_from_string(const std::string& name) {
    for (auto v : {Verdict::Spreading, Verdict::Vanishing, Verdict::VirtualSpreading, Verdict::VirtualVanishing,
                   Verdict::Undetermined}) {
        if (to_string(v) == name) return v;
    }
    throw DomainError("unknown verdict '" + name + "'");
}

std::optional<double> lstar_for(const ProblemSpec& spec) {
    try {
        return critical_length_lstar(spec.beta, spec.a, spec.b, spec.nonlinearity.fp0());
    } catch (const NoCriticalLength&) {
        return std::nullopt;
    }
}

std::optional<double> ctilde_for(const ProblemSpec& spec) {
    try {
        return solve_ctilde(spec.beta, spec.mu, spec.nonlinearity).c_tilde;
    } catch (const NoSemiWave&) {
        return std::nullopt;
    }
}

namespace {

// Linear interpolation of the final profile; nullopt outside [0, h].
std::optional<double> profile_at(const Snapshot& s, double x) {
    if (s.x.empty() || x < 0.0 || x > s.h) return std::nullopt;
    const auto it = std::upper_bound(s.x.begin(), s.x.end(), x);
    if (it == s.x.end()) return s.u.back();
    const auto i = static_cast<std::size_t>(it - s.x.begin());
    if (i == 0) return s.u.front();
    const double th = (x - s.x[i - 1]) / (s.x[i] - s.x[i - 1]);
    return (1.0 - th) * s.u[i - 1] + th * s.u[i];
}

}  // namespace

Classification classify(const Trajectory& traj, const ProblemSpec& spec, std::optional<double> lstar,
                        std::optional<double> ctilde, const ClassifierOptions& o) {
    Classification out;
    auto& ev = out.evidence;
    ev.lstar = lstar;
    ev.ctilde = ctilde;
    if (traj.size() == 0) {
        ev.diagnostic = "empty trajectory";
        return out;
    }
    ev.h_final = traj.h.back();
    ev.hprime_final = traj.hprime.back();
    ev.supu_final = traj.supu.back();
    ev.t_final = traj.times.back();

    const double c0 = spec.nonlinearity.c0();
    const double h_max = *std::max_element(traj.h.begin(), traj.h.end());

    if (std::abs(spec.beta) < c0 && lstar && h_max >= *lstar + o.margin) {
        out.verdict = Verdict::Spreading;
        ev.rule = "spreading-length";
        return out;
    }

    const bool finished = traj.extinct || ev.t_final >= traj.tmax * (1.0 - 1e-12);
    if (!finished) {
        ev.diagnostic = "run stopped before its horizon";
        return out;
    }

    const bool decayed = ev.supu_final < o.eps_van;
    const bool plateaued = ev.hprime_final < o.eps_h;
    if (decayed && plateaued && (!lstar || ev.h_final <= *lstar + o.margin)) {
        out.verdict = Verdict::Vanishing;
        ev.rule = "vanishing";
        return out;
    }

    if (spec.beta >= c0) {
        bool window_inside = false;
        if (ctilde) {
            const double c = 0.5 * (spec.beta - c0 + *ctilde);
            const double centre = c * ev.t_final;
            ev.window_lo = centre - o.window_half_width;
            ev.window_hi = centre + o.window_half_width;
            const auto& prof = traj.final_profile;
            window_inside = *ev.window_lo >= 0.0 && *ev.window_hi <= prof.h;
            if (window_inside) {
                double lo = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < prof.x.size(); ++i) {
                    if (prof.x[i] >= *ev.window_lo && prof.x[i] <= *ev.window_hi) lo = std::min(lo, prof.u[i]);
                }
                for (double x : {*ev.window_lo, *ev.window_hi}) lo = std::min(lo, *profile_at(prof, x));
                ev.window_min = lo;
                if (lo >= 1.0 - o.eps_one) {
                    out.verdict = Verdict::VirtualSpreading;
                    ev.rule = "virtual-window";
                    return out;
                }
            }
        }
        if (decayed) {
            out.verdict = plateaued ? Verdict::Vanishing : Verdict::VirtualVanishing;
            ev.rule = "virtual-decay";
            if (!plateaued) ev.diagnostic = "front still advancing at the horizon; low confidence";
            return out;
        }
        if (!ctilde) {
            ev.diagnostic = "no spreading speed for this advection";
        } else if (!window_inside) {
            std::ostringstream os;
            os << "window [" << *ev.window_lo << ", " << *ev.window_hi << "] outside [0, " << traj.final_profile.h
               << "]";
            ev.diagnostic = os.str();
        }
        return out;
    }

    ev.diagnostic = "no rule fired before the horizon";
    return out;
}

Classification classify(const Trajectory& traj, const ProblemSpec& spec, const ClassifierOptions& options) {
    return classify(traj, spec, lstar_for(spec), ctilde_for(spec), options);
}

}  // namespace frontlab
