#include "frontlab/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "frontlab/errors.hpp"

namespace frontlab {

namespace odeint = boost::numeric::odeint;

IntegratorOptions IntegratorOptions::halved() const {
    IntegratorOptions o = *this;
    o.max_step *= 0.5;
    o.abs_tol = std::max(o.abs_tol / 16.0, 1e-16);
    o.rel_tol = std::max(o.rel_tol / 16.0, 4e-16);
    return o;
}

IntegratorOptions IntegratorOptions::without_samples() const {
    IntegratorOptions o = *this;
    o.sample_spacing = 0.0;
    return o;
}

ShotResult shoot(const PhaseRhs& rhs, PhasePoint start, double s_max,
                 std::span<const EventFunction> events, const IntegratorOptions& options) {
    using Stepper = odeint::runge_kutta_fehlberg78<PhasePoint>;
    auto system = [&rhs](const PhasePoint& x, PhasePoint& dxdt, double) { rhs(x, dxdt); };
    auto controlled = odeint::make_controlled(options.abs_tol, options.rel_tol, Stepper());
    Stepper exact;

    auto step_from = [&](const PhasePoint& x0, double s0, double s) {
        PhasePoint out = x0;
        if (s != s0) exact.do_step(system, x0, s0, out, s - s0);
        return out;
    };

    ShotResult result;
    const bool record = options.sample_spacing > 0.0;
    std::int64_t next_sample = 0;
    auto record_until = [&](const PhasePoint& x0, double s0, double s1) {
        if (!record) return;
        for (;;) {
            const double s = static_cast<double>(next_sample) * options.sample_spacing;
            if (s > s1) break;
            const PhasePoint y = step_from(x0, s0, s);
            result.samples.push_back({s, y[0], y[1]});
            ++next_sample;
        }
    };

    PhasePoint x = start;
    double s = 0.0;
    double ds = std::min(options.max_step, 1e-3);
    std::vector<double> g(events.size());
    for (std::size_t k = 0; k < events.size(); ++k) g[k] = events[k](x);

    constexpr long kMaxSteps = 5'000'000;
    while (s < s_max) {
        if (result.steps > kMaxSteps) throw NumericalError("shooting: step limit exceeded");
        const PhasePoint x_prev = x;
        const double s_prev = s;
        ds = std::min({ds, options.max_step, s_max - s});
        int attempts = 0;
        while (controlled.try_step(system, x, s, ds) == odeint::fail) {
            if (++attempts > 500 || ds < 1e-14) throw NumericalError("shooting: step size underflow");
        }
        ++result.steps;
        if (!std::isfinite(x[0]) || !std::isfinite(x[1])) throw NumericalError("shooting: non-finite state");

        // earliest sign change among the events over (s_prev, s]
        int fired = -1;
        double s_hit = s;
        for (std::size_t k = 0; k < events.size(); ++k) {
            const double gk = events[k](x);
            if ((g[k] > 0.0 && gk <= 0.0) || (g[k] < 0.0 && gk >= 0.0)) {
                auto along = [&](double t) { return events[k](step_from(x_prev, s_prev, t)); };
                double root = s;
                if (gk != 0.0) {
                    std::uintmax_t iters = 200;
                    const auto bracket = boost::math::tools::toms748_solve(
                        along, s_prev, s, g[k], gk, boost::math::tools::eps_tolerance<double>(52), iters);
                    root = 0.5 * (bracket.first + bracket.second);
                }
                if (fired < 0 || root < s_hit) {
                    fired = static_cast<int>(k);
                    s_hit = root;
                }
            }
            g[k] = gk;
        }

        if (fired >= 0) {
            const PhasePoint y = step_from(x_prev, s_prev, s_hit);
            record_until(x_prev, s_prev, s_hit);
            if (record && (result.samples.empty() || result.samples.back().s < s_hit))
                result.samples.push_back({s_hit, y[0], y[1]});
            result.event = fired;
            result.s_end = s_hit;
            result.end = y;
            return result;
        }
        record_until(x_prev, s_prev, s);
    }
    result.s_end = s;
    result.end = x;
    return result;
}

}  // namespace frontlab
