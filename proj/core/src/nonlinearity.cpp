#include "frontlab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "frontlab/errors.hpp"

namespace frontlab {

namespace {

double horner(const std::vector<double>& c, double u) noexcept {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
}

std::vector<double> differentiate(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

std::vector<double> sample_grid(int samples, double u_max) {
    std::vector<double> us;
    // geometric approach to 0 and to 1 from both sides
    for (double e = 1e-8; e < 0.5; e *= 2.0) {
        us.push_back(e);
        us.push_back(1.0 - e);
        us.push_back(1.0 + e);
    }
    for (int i = 1; i <= samples; ++i) us.push_back(u_max * i / samples);
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    std::erase_if(us, [&](double u) { return u <= 0.0 || u > u_max; });
    return us;
}

}  // namespace

std::string to_string(NonlinearityKind kind) {
    switch (kind) {
        case NonlinearityKind::Logistic: return "logistic";
        case NonlinearityKind::CubicMonostable: return "cubic";
        case NonlinearityKind::Custom: return "polynomial";
    }
    return "unknown";
}

Nonlinearity::Nonlinearity(std::vector<double> coefficients, NonlinearityKind kind, double gamma)
    : coeffs_(std::move(coefficients)), dcoeffs_(differentiate(coeffs_)), kind_(kind), gamma_(gamma) {}

Nonlinearity Nonlinearity::unchecked(std::vector<double> coefficients, NonlinearityKind kind) {
    return Nonlinearity(std::move(coefficients), kind, 0.0);
}

Nonlinearity Nonlinearity::polynomial(std::vector<double> coefficients) {
    Nonlinearity n(std::move(coefficients), NonlinearityKind::Custom, 0.0);
    const auto report = validate(n);
    if (const auto* bad = report.first_failure()) {
        throw DomainError("nonlinearity rejected: clause '" + bad->name + "' failed (" + bad->detail + ")");
    }
    n.validated_ = true;
    return n;
}

Nonlinearity Nonlinearity::logistic() {
    Nonlinearity n({0.0, 1.0, -1.0}, NonlinearityKind::Logistic, 0.0);
    n.validated_ = validate(n).all_passed();
    return n;
}

Nonlinearity Nonlinearity::cubic_monostable(double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw DomainError("cubic monostable nonlinearity needs gamma in [0,1), got " + fmt(gamma));
    }
    // u(1-u)(1+gamma u) = u + (gamma-1) u^2 - gamma u^3
    Nonlinearity n({0.0, 1.0, gamma - 1.0, -gamma}, NonlinearityKind::CubicMonostable, gamma);
    const auto report = validate(n);
    if (const auto* bad = report.first_failure()) {
        throw DomainError("nonlinearity rejected: clause '" + bad->name + "' failed (" + bad->detail + ")");
    }
    n.validated_ = true;
    return n;
}

double Nonlinearity::operator()(double u) const noexcept { return horner(coeffs_, u); }

double Nonlinearity::derivative(double u) const noexcept { return horner(dcoeffs_, u); }

double Nonlinearity::c0() const noexcept { return 2.0 * std::sqrt(fp0()); }

void Nonlinearity::require_valid() const {
    if (!validated_) throw DomainError("nonlinearity has not passed validation");
}

bool ValidationReport::all_passed() const noexcept {
    return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.passed; });
}

const ClauseResult* ValidationReport::first_failure() const noexcept {
    for (const auto& c : clauses)
        if (!c.passed) return &c;
    return nullptr;
}

ValidationReport validate(const Nonlinearity& n, int samples, double u_max) {
    if (samples < 100) throw DomainError("validate: need at least 100 samples");
    if (!(u_max > 1.0)) throw DomainError("validate: u_max must exceed 1");

    const double f0 = n(0.0);
    const double f1 = n(1.0);
    if (std::abs(f0) > 1e-12 || std::abs(f1) > 1e-12) {
        throw DomainError("nonlinearity must vanish at 0 and 1 (f(0)=" + fmt(f0) + ", f(1)=" + fmt(f1) + ")");
    }

    ValidationReport report;
    report.fp0 = n.fp0();
    report.fp1 = n.derivative(1.0);
    report.c0 = n.c0();

    report.clauses.push_back({"f(0)=f(1)=0", true, ""});
    report.clauses.push_back({"f'(0)>0", report.fp0 > 0.0, "f'(0)=" + fmt(report.fp0)});
    report.clauses.push_back({"f'(1)<0", report.fp1 < 0.0, "f'(1)=" + fmt(report.fp1)});

    const auto us = sample_grid(samples, u_max);

    ClauseResult sign{"(1-u)f(u)>0", true, ""};
    ClauseResult kpp{"f(u)<=f'(0)u", true, ""};
    ClauseResult deriv{"f' matches finite differences", true, ""};
    for (double u : us) {
        const double fu = n(u);
        if (u != 1.0 && !((1.0 - u) * fu > 0.0) && sign.passed) {
            sign.passed = false;
            sign.detail = "fails at u=" + fmt(u) + " with f=" + fmt(fu);
        }
        const double bound = report.fp0 * u;
        if (fu > bound + 1e-12 * std::max(1.0, std::abs(bound)) && kpp.passed) {
            kpp.passed = false;
            kpp.detail = "fails at u=" + fmt(u) + ": f=" + fmt(fu) + " > " + fmt(bound);
        }
        const double step = 1e-5 * std::max(1.0, u);
        const double fd = (n(u + step) - n(u - step)) / (2.0 * step);
        const double an = n.derivative(u);
        if (std::abs(fd - an) > 1e-6 * std::max(1.0, std::abs(an)) && deriv.passed) {
            deriv.passed = false;
            deriv.detail = "mismatch at u=" + fmt(u) + ": analytic " + fmt(an) + " vs fd " + fmt(fd);
        }
    }
    report.clauses.push_back(sign);
    report.clauses.push_back(kpp);
    report.clauses.push_back(deriv);

    const bool c0_ok = std::abs(report.c0 * report.c0 - 4.0 * report.fp0) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(4.0 * report.fp0);
    report.clauses.push_back({"c0=2sqrt(f'(0))", c0_ok && report.fp0 > 0.0, "c0=" + fmt(report.c0)});
    return report;
}

}  // namespace frontlab
