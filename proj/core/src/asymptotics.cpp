#include "frontlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "frontlab/errors.hpp"

namespace frontlab {

SpeedFit fit_speed(const Trajectory& traj, double c_tilde) {
    const std::size_t n = traj.size();
    const std::size_t first = n - n / 3;
    const std::size_t count = n - first;
    if (count < 50) {
        std::ostringstream os;
        os << "insufficient data: final third holds " << count << " samples, need 50";
        throw DomainError(os.str());
    }
    SpeedFit fit;
    fit.c_tilde = c_tilde;
    fit.samples = count;
    fit.t_from = traj.times[first];
    fit.t_to = traj.times.back();

    double sum_hp = 0.0, sum_t = 0.0, sum_y = 0.0;
    for (std::size_t i = first; i < n; ++i) {
        sum_hp += traj.hprime[i];
        sum_t += traj.times[i];
        sum_y += traj.h[i] - c_tilde * traj.times[i];
    }
    const double m = static_cast<double>(count);
    fit.c_measured = sum_hp / m;
    fit.H = sum_y / m;
    const double t_mean = sum_t / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = first; i < n; ++i) {
        const double dt = traj.times[i] - t_mean;
        sxx += dt * dt;
        sxy += dt * (traj.h[i] - c_tilde * traj.times[i] - fit.H);
    }
    fit.drift = sxx > 0.0 ? sxy / sxx : 0.0;
    return fit;
}

struct MonotoneProfile::Impl {
    boost::math::interpolators::pchip<std::vector<double>> interp;
};

MonotoneProfile::MonotoneProfile(const WaveProfile& p, double below, double above) : below_(below), above_(above) {
    std::vector<double> z, q;
    z.reserve(p.samples.size());
    q.reserve(p.samples.size());
    for (const auto& s : p.samples) {
        if (!z.empty() && s.z <= z.back() + 1e-12) continue;
        z.push_back(s.z);
        q.push_back(s.q);
    }
    if (z.size() < 4) throw DomainError("profile needs at least four distinct samples");
    z_min_ = z.front();
    z_max_ = z.back();
    impl_ = std::make_shared<const Impl>(Impl{{std::move(z), std::move(q)}});
}

double MonotoneProfile::operator()(double z) const {
    if (z < z_min_) return below_;
    if (z > z_max_) return above_;
    return impl_->interp(z);
}

double profile_error(const Snapshot& snap, const ProblemSpec& spec, double c_tilde, double H,
                     const WaveProfile* vtilde, const WaveProfile& qtilde) {
    if (spec.a > 0.0 && vtilde == nullptr) throw DomainError("profile error: a > 0 needs the stationary profile");
    const MonotoneProfile q(qtilde, 0.0, 1.0);
    std::optional<MonotoneProfile> v;
    if (spec.a > 0.0) v.emplace(*vtilde, 0.0, 1.0);
    const double shift = c_tilde * snap.t + H;
    double worst = 0.0;
    for (std::size_t i = 0; i < snap.x.size(); ++i) {
        const double x = snap.x[i];
        const double target = (v ? (*v)(x) : 1.0) * q(shift - x);
        worst = std::max(worst, std::abs(snap.u[i] - target));
    }
    return worst;
}

}  // namespace frontlab
