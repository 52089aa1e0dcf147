#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frontlab/eigensolve.hpp"
#include "frontlab/fbsolver.hpp"
#include "frontlab/semiwave.hpp"

namespace frontlab {

/// Malformed configuration or data file; carries the offending line when known.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` configuration. Blank lines and `#` comments are
/// ignored; keys outside the allowed set and repeated keys are rejected.
class RunConfig {
public:
    static const std::vector<std::string>& allowed_keys();

    static RunConfig parse(std::istream& in, const std::string& origin = "<config>");
    static RunConfig load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> text(const std::string& key) const;
    /// Throws ConfigError naming the line when the value is not a finite number.
    std::optional<double> number(const std::string& key) const;
    std::optional<int> integer(const std::string& key) const;
    /// Comma or whitespace separated numbers.
    std::optional<std::vector<double>> numbers(const std::string& key) const;

    /// Overrides or adds a value, as from a command-line flag.
    void set(const std::string& key, const std::string& value);

    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::string where(const std::string& key) const;

    std::string origin_;
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;
};

/// Nonlinearity named by `nonlinearity` (logistic, cubic, polynomial) with
/// `gamma` or `coefficients` as needed. Defaults to logistic.
Nonlinearity nonlinearity_from(const RunConfig& cfg);

/// Problem with defaults beta 0, mu 1, a 1, b 0, h0 1, lambda 1, nx 800,
/// tmax 10, dt 2e-4 h0^2, and u0 = lambda * initial_profile. Validated.
ProblemSpec problem_from(const RunConfig& cfg);

/// Full-precision decimal text (17 significant digits).
std::string format_double(double v);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_snapshot_csv(std::ostream& out, const Snapshot& snap);
void write_wave_csv(std::ostream& out, const WaveProfile& wave);
void write_eigen_csv(std::ostream& out, const EigenResult& eig);

/// Reads `t,h,hprime,supu,eta`. A final sup u below 1e-200 marks the run extinct.
Trajectory read_trajectory_csv(std::istream& in, const std::string& origin = "<trajectory>");
/// Reads `x,u`; h is the last x.
Snapshot read_snapshot_csv(std::istream& in, double t, const std::string& origin = "<snapshot>");

/// File name used for a snapshot at time t, and its inverse.
std::string snapshot_file_name(double t);
std::optional<double> snapshot_time_from_name(const std::string& name);

/// Writes `contents` through `writer` to path, throwing IoError on failure.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);
std::string read_file(const std::filesystem::path& path);

}  // namespace frontlab
