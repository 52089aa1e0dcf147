#include "frontlab/semiwave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "frontlab/errors.hpp"

namespace frontlab {

namespace {

std::string str(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// Right-hand side of q'' = drift q' - f(q), traversed with orientation sign
// (+1 forward in z, -1 backward).
PhaseRhs phase_rhs(double drift, const Nonlinearity& n, double orientation) {
    return [drift, &n, orientation](const PhasePoint& x, PhasePoint& dx) {
        dx[0] = orientation * x[1];
        dx[1] = orientation * (drift * x[1] - n(x[0]));
    };
}

double budget(const Nonlinearity& n, const WaveOptions& o) { return o.budget / std::sqrt(n.fp0()); }

// Eigenvalues of the saddle (1, 0) of q'' = drift q' - f(q); f'(1) < 0 makes
// the discriminant positive.
std::array<double, 2> saddle_eigenvalues(double drift, const Nonlinearity& n) {
    const double disc = std::sqrt(drift * drift - 4.0 * n.derivative(1.0));
    return {0.5 * (drift - disc), 0.5 * (drift + disc)};
}

// Samples recorded along s, mapped to z = origin + orientation * s and sorted by z.
// The state already carries dq/dz whatever the direction of travel.
std::vector<WaveSample> to_profile(const ShotResult& shot, double origin, double orientation) {
    std::vector<WaveSample> out;
    out.reserve(shot.samples.size());
    for (const auto& s : shot.samples) out.push_back({origin + orientation * s.s, s.q, s.dq});
    std::sort(out.begin(), out.end(), [](const WaveSample& l, const WaveSample& r) { return l.z < r.z; });
    return out;
}

const EventFunction kCrossZero = [](const PhasePoint& x) { return x[0]; };
const EventFunction kSlopeZero = [](const PhasePoint& x) { return x[1]; };

ShotResult trace_semiwave(double c, double beta, const Nonlinearity& n, const WaveOptions& options,
                          const IntegratorOptions& integrator) {
    n.require_valid();
    const double drift = c - beta;
    if (!(drift < n.c0())) {
        throw NoSemiWave("no semi-wave: c - beta = " + str(drift) + " >= c0 = " + str(n.c0()));
    }
    const double lam = saddle_eigenvalues(drift, n)[0];
    const double eps = options.launch_offset;
    const EventFunction events[] = {kCrossZero, kSlopeZero};
    auto shot = shoot(phase_rhs(drift, n, -1.0), {1.0 - eps, -lam * eps}, budget(n, options), events, integrator);
    if (shot.event == 1) throw NumericalError("semi-wave lost monotonicity before reaching q = 0 (c = " + str(c) + ")");
    return shot;
}

double ctilde_value(double beta, double mu, const Nonlinearity& n, const WaveOptions& options) {
    n.require_valid();
    const double c0 = n.c0();
    if (!(beta > -c0)) {
        throw NoSemiWave("no semi-wave: beta <= -c0 (beta = " + str(beta) + ", c0 = " + str(c0) + ")");
    }
    if (!(mu > 0.0)) throw DomainError("spreading speed needs mu > 0");
    const double hi = c0 + beta;
    // mu P(c - beta) - c is strictly decreasing; its limit at c0 + beta is -(c0 + beta)
    auto g = [&](double c) {
        if (c >= hi) return -hi;
        return mu * semiwave_slope(c, beta, n, options, true) - c;
    };
    const double glo = g(0.0);
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(g, 0.0, hi, glo, -hi,
                                                     boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
}

// Five-point finite-difference weights for the first derivative at x0 on
// nodes xs (Fornberg's recursion).
std::array<double, 5> first_derivative_weights(const std::array<double, 5>& xs, double x0) {
    constexpr int n = 5;
    double c[n][2] = {};
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, 1);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    return {c[0][1], c[1][1], c[2][1], c[3][1], c[4][1]};
}

}  // namespace

std::string to_string(WaveKind kind) {
    switch (kind) {
        case WaveKind::SemiWave: return "semiwave";
        case WaveKind::FiniteWave: return "finite";
        case WaveKind::TravelingLeft: return "left";
        case WaveKind::TravelingRight: return "right";
        case WaveKind::Tadpole: return "tadpole";
        case WaveKind::StationaryIncreasing: return "stationary";
    }
    return "unknown";
}

WaveOptions WaveOptions::halved() const {
    WaveOptions o = *this;
    o.integrator = integrator.halved();
    return o;
}

double semiwave_slope(double c, double beta, const Nonlinearity& n, const WaveOptions& options,
                      bool zero_if_exhausted) {
    const auto shot = trace_semiwave(c, beta, n, options, options.integrator.without_samples());
    if (shot.event != 0) {
        if (zero_if_exhausted) return 0.0;
        throw NumericalError("semi-wave did not reach q = 0 within the z-budget (c = " + str(c) + ")");
    }
    return shot.end[1];
}

WaveProfile shoot_semiwave(double c, double beta, const Nonlinearity& n, const WaveOptions& options) {
    const auto shot = trace_semiwave(c, beta, n, options, options.integrator);
    if (shot.event != 0) {
        throw NumericalError("semi-wave did not reach q = 0 within the z-budget (c = " + str(c) + ")");
    }
    WaveProfile p;
    p.kind = WaveKind::SemiWave;
    p.speed = c;
    p.drift = c - beta;
    p.samples = to_profile(shot, shot.s_end, -1.0);
    p.samples.front().q = 0.0;
    p.slope0 = shot.end[1];
    return p;
}

SpeedResult solve_ctilde(double beta, double mu, const Nonlinearity& n, const WaveOptions& options) {
    SpeedResult r;
    r.c_tilde = ctilde_value(beta, mu, n, options);
    r.profile = shoot_semiwave(r.c_tilde, beta, n, options);
    r.residual = std::abs(r.c_tilde - mu * r.profile.slope0);
    return r;
}

double solve_beta_star(double mu, const Nonlinearity& n, const WaveOptions& options) {
    n.require_valid();
    if (!(mu > 0.0)) throw DomainError("beta* needs mu > 0");
    const double c0 = n.c0();
    auto g = [&](double beta) { return ctilde_value(beta, mu, n, options) - beta + c0; };
    const double lo = c0;
    const double hi = 10.0 * c0;
    const double glo = g(lo);
    const double ghi = g(hi);
    if (!(glo > 0.0)) throw NumericalError("beta*: c_tilde - beta + c0 not positive at beta = c0");
    if (!(ghi < 0.0)) throw NumericalError("beta*: no sign change below 10 c0");
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                                     boost::math::tools::eps_tolerance<double>(48), iters);
    return 0.5 * (r.first + r.second);
}

WaveProfile finite_wave(double c, double beta, double mu, const Nonlinearity& n, const WaveOptions& options) {
    const double c_tilde = ctilde_value(beta, mu, n, options);
    return finite_wave(c, beta, mu, c_tilde, n, options);
}

WaveProfile finite_wave(double c, double beta, double mu, double c_tilde, const Nonlinearity& n,
                        const WaveOptions& options) {
    n.require_valid();
    if (!(c > 0.0 && c < c_tilde)) {
        throw NoFiniteWave("no finite wave: need 0 < c < c_tilde = " + str(c_tilde) + ", got c = " + str(c));
    }
    const double drift = c - beta;
    const double slope0 = c_tilde / mu;
    const EventFunction events[] = {kSlopeZero, kCrossZero};
    const auto shot = shoot(phase_rhs(drift, n, 1.0), {0.0, slope0}, budget(n, options), events, options.integrator);
    if (shot.event != 0) throw NumericalError("finite wave: q' never returned to 0 within the z-budget");
    WaveProfile p;
    p.kind = WaveKind::FiniteWave;
    p.speed = c;
    p.drift = drift;
    p.samples = to_profile(shot, 0.0, 1.0);
    p.samples.back().dq = 0.0;
    p.endpoint = shot.s_end;
    p.slope0 = slope0;
    return p;
}

WaveProfile traveling_wave(double c, Direction direction, const Nonlinearity& n, const WaveOptions& options) {
    n.require_valid();
    const double c0 = n.c0();
    const double slack = 1e-12 * c0;
    const bool right = direction == Direction::Right;
    if (right ? !(c >= c0 - slack) : !(c <= -c0 + slack)) {
        throw NoWave(std::string("no ") + (right ? "rightward" : "leftward") + " traveling wave at speed " + str(c) +
                     (right ? " (needs c >= c0 = " : " (needs c <= -c0 = ") + str(right ? c0 : -c0) + ")");
    }
    const auto lams = saddle_eigenvalues(c, n);
    const double eps = options.launch_offset;
    const EventFunction events[] = {[eps](const PhasePoint& x) { return x[0] - eps; }, kSlopeZero};
    WaveProfile p;
    p.speed = c;
    p.drift = c;
    if (right) {
        // q -> 1 as z -> inf along the stable direction; trace backward
        const double lam = lams[0];
        const auto shot = shoot(phase_rhs(c, n, -1.0), {1.0 - eps, -lam * eps}, budget(n, options), events,
                                options.integrator);
        if (shot.event != 0) throw NumericalError("rightward wave did not decay within the z-budget");
        p.kind = WaveKind::TravelingRight;
        p.samples = to_profile(shot, shot.s_end, -1.0);
    } else {
        // q -> 1 as z -> -inf along the unstable direction; trace forward
        const double lam = lams[1];
        const auto shot = shoot(phase_rhs(c, n, 1.0), {1.0 - eps, -lam * eps}, budget(n, options), events,
                                options.integrator);
        if (shot.event != 0) throw NumericalError("leftward wave did not decay within the z-budget");
        p.kind = WaveKind::TravelingLeft;
        p.samples = to_profile(shot, 0.0, 1.0);
    }
    p.slope0 = p.samples.front().dq;
    return p;
}

WaveProfile tadpole_wave(double beta, double mu, const Nonlinearity& n, const WaveOptions& options) {
    n.require_valid();
    if (!(mu > 0.0)) throw DomainError("tadpole wave needs mu > 0");
    const double c0 = n.c0();
    if (!(beta > c0)) throw NoWave("no tadpole wave: beta = " + str(beta) + " <= c0 = " + str(c0));
    // traced in y = -z from V(0) = 0 with V_z(0) = -(beta - c0)/mu
    const double vy0 = (beta - c0) / mu;
    const EventFunction events[] = {kCrossZero, [](const PhasePoint& x) { return x[0] - 1.0; }};
    const auto run = shoot(phase_rhs(c0, n, -1.0), {0.0, -vy0}, budget(n, options), events, options.integrator);
    if (run.event == 1) {
        throw NoWave("no tadpole wave: trajectory passes the saddle (beta = " + str(beta) + " >= beta*)");
    }
    if (run.event == 0) {
        throw NoWave("no tadpole wave: profile changes sign (beta = " + str(beta) + ")");
    }
    if (!(run.end[0] < options.tadpole_tol)) {
        throw NoWave("no tadpole wave: left tail has not decayed (V = " + str(run.end[0]) + ")");
    }
    WaveProfile p;
    p.kind = WaveKind::Tadpole;
    p.speed = beta - c0;
    p.drift = c0;
    p.samples = to_profile(run, 0.0, -1.0);
    p.slope0 = -vy0;
    return p;
}

WaveProfile stationary_increasing(double beta, double a, double b, const Nonlinearity& n,
                                  const WaveOptions& options) {
    n.require_valid();
    const double c0 = n.c0();
    if (!(beta < c0)) throw NoStationary("no increasing stationary solution: beta = " + str(beta) + " >= c0");
    if (!(a > 0.0) || b < 0.0) throw NoStationary("no increasing stationary solution: needs a > 0, b >= 0");
    const double lam = saddle_eigenvalues(beta, n)[0];
    const double eps = options.launch_offset;
    const EventFunction events[] = {[a, b](const PhasePoint& x) { return a * x[0] - b * x[1]; }, kSlopeZero};
    const auto shot = shoot(phase_rhs(beta, n, -1.0), {1.0 - eps, -lam * eps}, budget(n, options), events,
                            options.integrator);
    if (shot.event != 0) {
        std::ostringstream os;
        os << "no increasing stationary solution: trajectory from the saddle never met a v = b v' (stopped at v = "
           << shot.end[0] << ", v' = " << shot.end[1] << ", event " << shot.event << ")";
        throw NoStationary(os.str());
    }
    WaveProfile p;
    p.kind = WaveKind::StationaryIncreasing;
    p.drift = beta;
    p.samples = to_profile(shot, shot.s_end, -1.0);
    p.slope0 = shot.end[1];
    return p;
}

double profile_residual(const WaveProfile& p, const Nonlinearity& n) {
    const auto& s = p.samples;
    if (s.size() < 5) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t lo = std::min(i >= 2 ? i - 2 : 0, s.size() - 5);
        std::array<double, 5> xs{};
        for (int k = 0; k < 5; ++k) xs[k] = s[lo + k].z;
        const auto w = first_derivative_weights(xs, s[i].z);
        double dq = 0.0;
        double ddq = 0.0;
        for (int k = 0; k < 5; ++k) {
            dq += w[k] * s[lo + k].q;
            ddq += w[k] * s[lo + k].dq;
        }
        worst = std::max(worst, std::abs(dq - s[i].dq));
        worst = std::max(worst, std::abs(ddq - (p.drift * s[i].dq - n(s[i].q))));
    }
    return worst;
}

TailFit fit_upper_tail(const WaveProfile& p, double lo, double hi) {
    double sz = 0.0, sy = 0.0, szz = 0.0, szy = 0.0;
    int count = 0;
    for (const auto& s : p.samples) {
        const double gap = 1.0 - s.q;
        if (gap < lo || gap > hi) continue;
        const double y = std::log(gap);
        sz += s.z;
        sy += y;
        szz += s.z * s.z;
        szy += s.z * y;
        ++count;
    }
    if (count < 3) throw NumericalError("tail fit: fewer than three samples in the fit band");
    const double slope = (count * szy - sz * sy) / (count * szz - sz * sz);
    TailFit fit;
    fit.rho = -slope;
    for (const auto& s : p.samples) {
        const double gap = 1.0 - s.q;
        if (gap < lo || gap > hi) continue;
        fit.K = std::max(fit.K, gap * std::exp(fit.rho * s.z));
    }
    return fit;
}

}  // namespace frontlab
