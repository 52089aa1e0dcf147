#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frontlab/classifier.hpp"
#include "frontlab/fbsolver.hpp"

namespace frontlab {

enum class ThresholdParameter { Mu, Lambda };

std::string to_string(ThresholdParameter p);

enum class ThresholdOutcome {
    /// [lo, hi] with Vanishing at lo and Spreading at hi.
    Bracketed,
    /// h0 >= lstar: every mu spreads.
    SpreadingForAll,
    /// h0 >= lstar: lambda* = 0.
    LambdaStarZero,
    /// No spreading up to the top of the lambda range.
    PossiblyInfinite,
};

std::string to_string(ThresholdOutcome o);

struct ThresholdRun {
    double value = 0.0;
    Verdict verdict = Verdict::Undetermined;
    double tmax = 0.0;
    double h_final = 0.0;
    double supu_final = 0.0;
    /// "endpoint", "bisection", "retry" or "verify".
    std::string stage;
};

struct ThresholdResult {
    ThresholdParameter parameter = ThresholdParameter::Mu;
    ThresholdOutcome outcome = ThresholdOutcome::Bracketed;
    double lo = 0.0;
    double hi = 0.0;
    double width = 0.0;
    /// Simulations performed, retries and verification included.
    int runs = 0;
    /// Midpoint evaluations of the bisection proper.
    int bisection_steps = 0;
    std::vector<ThresholdRun> history;
    std::vector<std::string> warnings;
    bool endpoints_verified = false;
    /// No Vanishing verdict above a Spreading verdict along the history.
    bool monotone = true;
};

struct ThresholdOptions {
    double tol = 1e-2;
    /// Forces the horizon of every run; otherwise max(50, 10 lstar / ctilde).
    std::optional<double> tmax;
    ClassifierOptions classifier{};
    bool verify_endpoints = true;
};

/// Hypotheses under which mu* is known to exist; one message per failure.
std::vector<std::string> mu_star_hypothesis_warnings(const ProblemSpec& spec);

/// Bisection on mu over [mu_lo, mu_hi] with u0 taken from the template.
/// Throws DomainError unless |beta| < c0, NoBracket when the ends do not
/// classify as Vanishing / Spreading, and NumericalError when a run stays
/// Undetermined after one doubled-horizon retry.
ThresholdResult mu_star(const ProblemSpec& tmpl, double mu_lo, double mu_hi, const ThresholdOptions& options = {});

/// Bisection on lambda for u0 = lambda * psi, psi sampled on the template grid.
ThresholdResult lambda_star(const ProblemSpec& tmpl, const std::vector<double>& psi, double lambda_lo,
                            double lambda_hi, const ThresholdOptions& options = {});

/// True when no Vanishing verdict sits at a value above a Spreading verdict.
bool monotone_history(const std::vector<ThresholdRun>& history);

}  // namespace frontlab
