#pragma once

#include <string>
#include <vector>

namespace frontlab {

enum class NonlinearityKind { Logistic, CubicMonostable, Custom };

std::string to_string(NonlinearityKind kind);

/// Monostable reaction term f(u), stored as a polynomial in u.
///
/// Instances built through the named factories have already passed
/// `validate()`; `unchecked()` exists so that a candidate can be inspected
/// before it is accepted. Every solver calls `require_valid()` on entry.
class Nonlinearity {
public:
    /// f(u) = u(1-u).
    static Nonlinearity logistic();
    /// f(u) = u(1-u)(1+gamma*u), gamma in [0,1).
    static Nonlinearity cubic_monostable(double gamma);
    /// f(u) = sum_k coefficients[k] u^k. Throws DomainError if the
    /// polynomial fails any monostability clause.
    static Nonlinearity polynomial(std::vector<double> coefficients);
    /// Same as polynomial() but skips validation.
    static Nonlinearity unchecked(std::vector<double> coefficients,
                                  NonlinearityKind kind = NonlinearityKind::Custom);

    double operator()(double u) const noexcept;
    double derivative(double u) const noexcept;

    double fp0() const noexcept { return derivative(0.0); }
    /// Minimal traveling-wave speed 2*sqrt(f'(0)).
    double c0() const noexcept;

    NonlinearityKind kind() const noexcept { return kind_; }
    double gamma() const noexcept { return gamma_; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    bool validated() const noexcept { return validated_; }

    /// Throws DomainError unless this instance was validated at construction.
    void require_valid() const;

private:
    Nonlinearity(std::vector<double> coefficients, NonlinearityKind kind, double gamma);

    std::vector<double> coeffs_;
    std::vector<double> dcoeffs_;
    NonlinearityKind kind_;
    double gamma_ = 0.0;
    bool validated_ = false;
};

struct ClauseResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ClauseResult> clauses;
    double fp0 = 0.0;
    double c0 = 0.0;
    double fp1 = 0.0;

    bool all_passed() const noexcept;
    /// First failing clause, or nullptr.
    const ClauseResult* first_failure() const noexcept;
};

/// Checks monostability clause by clause on a dense sample grid over
/// (0, u_max]: geometric near 0 and near 1 plus `samples` uniform points.
/// The analytic derivative is cross-checked against centered differences.
/// Throws DomainError when f(0) or f(1) differs from 0 by more than 1e-12,
/// or when samples < 100 or u_max <= 1.
ValidationReport validate(const Nonlinearity& n, int samples = 1000, double u_max = 10.0);

}  // namespace frontlab
