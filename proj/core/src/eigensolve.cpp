#include "frontlab/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "frontlab/errors.hpp"

namespace frontlab {

namespace {

constexpr double kPi = std::numbers::pi;

double solve_bracketed(const std::function<double(double)>& g, double lo, double hi, const char* what) {
    const double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0)) {
        throw NumericalError(std::string(what) + ": root not bracketed");
    }
    std::uintmax_t iters = 300;
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                                     boost::math::tools::eps_tolerance<double>(53), iters);
    if (iters >= 300) throw NumericalError(std::string(what) + ": root finder did not converge");
    return 0.5 * (r.first + r.second);
}

struct Wavenumber {
    EigenBranch branch;
    double k;  // k or kappa
    double k2;  // signed: +k^2 trigonometric, -kappa^2 hyperbolic
};

// Principal root of (a - b beta/2) psi(0) = b psi'(0) with psi(ell) = 0.
Wavenumber principal_wavenumber(const EigenProblem& p) {
    const double ell = p.ell;
    const double A = p.a - 0.5 * p.b * p.beta;
    if (p.b == 0.0) {
        const double k = kPi / ell;
        return {EigenBranch::Trigonometric, k, k * k};
    }
    if (A == 0.0) {
        const double k = 0.5 * kPi / ell;
        return {EigenBranch::Trigonometric, k, k * k};
    }
    const double b_over_ell = p.b / ell;
    if (A > 0.0) {
        // A sin s + (b/ell) s cos s = 0 for s = k ell in (pi/2, pi)
        auto g = [&](double s) { return A * std::sin(s) + b_over_ell * s * std::cos(s); };
        const double s = solve_bracketed(g, 0.5 * kPi, kPi, "principal eigenvalue");
        const double k = s / ell;
        return {EigenBranch::Trigonometric, k, k * k};
    }
    const double rho = p.b / (-A * ell);
    if (rho > 1.0) {
        // tan s / s = rho, s in (0, pi/2)
        auto g = [&](double s) { return rho * std::cos(s) - (s == 0.0 ? 1.0 : std::sin(s) / s); };
        const double s = solve_bracketed(g, 0.0, 0.5 * kPi, "principal eigenvalue");
        const double k = s / ell;
        return {EigenBranch::Trigonometric, k, k * k};
    }
    if (rho == 1.0) return {EigenBranch::Linear, 0.0, 0.0};
    // tanh t / t = rho, t in (0, 1/rho]
    auto g = [&](double t) { return (t == 0.0 ? 1.0 : std::tanh(t) / t) - rho; };
    const double t = solve_bracketed(g, 0.0, 1.0 / rho, "principal eigenvalue");
    const double kappa = t / ell;
    return {EigenBranch::Hyperbolic, kappa, -kappa * kappa};
}

double psi(const Wavenumber& w, double ell, double x) {
    switch (w.branch) {
        case EigenBranch::Trigonometric: return std::sin(w.k * (ell - x));
        case EigenBranch::Linear: return ell - x;
        case EigenBranch::Hyperbolic: return std::sinh(w.k * (ell - x));
    }
    return 0.0;
}

double find_critical_length(const std::function<double(double)>& g, const char* what) {
    double lo = 1e-3;
    if (!(g(lo) > 0.0)) throw NumericalError(std::string(what) + ": eigenvalue not positive at the left bracket");
    double hi = 1.0;
    while (g(hi) >= 0.0) {
        if (hi >= 1e4) throw NumericalError(std::string(what) + ": no sign change below 1e4");
        lo = std::max(lo, hi);
        hi = std::min(2.0 * hi, 1e4);
    }
    return solve_bracketed(g, lo, hi, what);
}

void require_subcritical(double beta, double m) {
    if (!(m > 0.0)) throw DomainError("critical length: need m = f'(0) > 0");
    if (beta * beta >= 4.0 * m) {
        std::ostringstream os;
        os << "no critical length: |beta| = " << std::abs(beta) << " >= c0 = " << 2.0 * std::sqrt(m);
        throw NoCriticalLength(os.str());
    }
}

}  // namespace

void EigenProblem::validate() const {
    if (!(ell > 0.0)) throw DomainError("eigen problem: ell must be positive");
    if (a < 0.0 || b < 0.0 || !(a + b > 0.0)) throw DomainError("eigen problem: need a, b >= 0 and a + b > 0");
    if (!std::isfinite(beta) || !std::isfinite(m)) throw DomainError("eigen problem: non-finite coefficient");
}

double principal_eigenvalue_value(const EigenProblem& p) {
    p.validate();
    const auto w = principal_wavenumber(p);
    return w.k2 - p.m + 0.25 * p.beta * p.beta;
}

EigenResult principal_eigenvalue(const EigenProblem& p, int samples) {
    p.validate();
    const auto w = principal_wavenumber(p);
    EigenResult r;
    r.branch = w.branch;
    r.wavenumber = w.k;
    r.zeta1 = w.k2 - p.m + 0.25 * p.beta * p.beta;

    if (samples <= 0) {
        // truncation of the central differences ~ dx^2 (k^2 + beta^2/4)^2 / 12
        const double scale = std::abs(w.k2) + 0.25 * p.beta * p.beta + 1.0;
        const double dx = std::sqrt(1.2e-6) / scale;
        samples = static_cast<int>(std::clamp(std::ceil(p.ell / dx) + 1.0, 201.0, 1e6));
    }
    r.x.resize(samples);
    r.phi.resize(samples);
    double peak = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = p.ell * i / (samples - 1);
        r.x[i] = x;
        r.phi[i] = std::exp(0.5 * p.beta * x) * psi(w, p.ell, x);
        peak = std::max(peak, r.phi[i]);
    }
    for (auto& v : r.phi) v /= peak;
    r.phi.back() = 0.0;
    return r;
}

double eigen_residual(const EigenProblem& p, const EigenResult& r) {
    double worst = 0.0;
    const auto n = r.x.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double dx = r.x[i + 1] - r.x[i];
        const double d2 = (r.phi[i + 1] - 2.0 * r.phi[i] + r.phi[i - 1]) / (dx * dx);
        const double d1 = (r.phi[i + 1] - r.phi[i - 1]) / (2.0 * dx);
        worst = std::max(worst, std::abs(-d2 + p.beta * d1 - (p.m + r.zeta1) * r.phi[i]));
    }
    return worst;
}

double principal_eigenvalue_shooting(const EigenProblem& p, const IntegratorOptions& options) {
    p.validate();
    const double base = 0.25 * p.beta * p.beta - p.m;
    const auto opts = options.without_samples();

    // phi has a zero in (0, ell] exactly when zeta >= zeta1 (Sturm comparison)
    auto has_zero = [&](double zeta) {
        const double coef = p.m + zeta;
        PhaseRhs rhs = [&](const PhasePoint& x, PhasePoint& dx) {
            dx[0] = x[1];
            dx[1] = p.beta * x[1] - coef * x[0];
        };
        const double norm = std::hypot(p.a, p.b);
        const EventFunction events[] = {[](const PhasePoint& x) { return x[0]; }};
        const auto shot = shoot(rhs, {p.b / norm, p.a / norm}, p.ell, events, opts);
        return shot.event == 0 || shot.end[0] <= 0.0;
    };

    double lo = base - 1.0;
    if (p.b > 0.0) {
        const double A = p.a - 0.5 * p.b * p.beta;
        lo -= (A / p.b) * (A / p.b);
    }
    double hi = base + (kPi / p.ell) * (kPi / p.ell) + 1.0;
    for (int i = 0; has_zero(lo); ++i) {
        if (i > 60) throw NumericalError("eigen shooting: no lower bracket");
        lo = base - 2.0 * (base - lo);
    }
    for (int i = 0; !has_zero(hi); ++i) {
        if (i > 60) throw NumericalError("eigen shooting: no upper bracket");
        hi = base + 2.0 * (hi - base);
    }
    for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (has_zero(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double critical_length_lstar(double beta, double a, double b, double m) {
    require_subcritical(beta, m);
    auto g = [&](double ell) { return principal_eigenvalue_value({ell, beta, a, b, m}); };
    return find_critical_length(g, "critical length ell*");
}

double critical_length_substar(double beta, double a, double b, double m) {
    require_subcritical(beta, m);
    const double shift = 0.25 * beta * beta;
    auto g = [&](double ell) { return principal_eigenvalue_value({ell, 0.0, a, b, m}) + shift; };
    return find_critical_length(g, "critical length ell_*");
}

}  // namespace frontlab
