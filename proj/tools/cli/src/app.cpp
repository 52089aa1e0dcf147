#include "frontlab_cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontlab/asymptotics.hpp"
#include "frontlab/classifier.hpp"
#include "frontlab/eigensolve.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/io.hpp"
#include "frontlab/semiwave.hpp"
#include "frontlab/thresholds.hpp"
#include "frontlab/version.hpp"
#include "frontlab_cli/sweep.hpp"

namespace frontlab::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// A JSON number, or null for values that JSON cannot hold.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

class Printer {
public:
    Printer(std::ostream& out, bool as_json) : out_(out), json_(as_json) {}

    void field(const std::string& key, const json& value) { doc_[key] = value; order_.push_back(key); }

    void flush() {
        if (json_) {
            out_ << doc_.dump(2) << '\n';
            return;
        }
        for (const auto& k : order_) {
            const auto& v = doc_[k];
            if (v.is_number_float()) {
                out_ << k << " = " << format_double(v.get<double>()) << '\n';
            } else if (v.is_string()) {
                out_ << k << " = " << v.get<std::string>() << '\n';
            } else {
                out_ << k << " = " << v.dump() << '\n';
            }
        }
    }

private:
    std::ostream& out_;
    bool json_;
    json doc_ = json::object();
    std::vector<std::string> order_;
};

struct NonlinearityFlags {
    std::string kind = "logistic";
    double gamma = 0.0;
    std::string coefficients;

    void attach(CLI::App* app) {
        app->add_option("--nonlinearity", kind, "logistic, cubic or polynomial")->capture_default_str();
        app->add_option("--gamma", gamma, "cubic monostable parameter in [0,1)");
        app->add_option("--coefficients", coefficients, "polynomial coefficients c0,c1,... of f(u) = sum c_k u^k");
    }

    Nonlinearity build() const {
        RunConfig cfg;
        cfg.set("nonlinearity", kind);
        cfg.set("gamma", format_double(gamma));
        if (!coefficients.empty()) cfg.set("coefficients", coefficients);
        return nonlinearity_from(cfg);
    }
};

json wave_json(const WaveProfile& w) {
    json j;
    j["kind"] = to_string(w.kind);
    j["speed"] = num(w.speed);
    j["drift"] = num(w.drift);
    j["slope0"] = num(w.slope0);
    j["endpoint"] = num(w.endpoint);
    j["samples"] = w.samples.size();
    if (!w.samples.empty()) {
        j["z_min"] = num(w.samples.front().z);
        j["z_max"] = num(w.samples.back().z);
    }
    return j;
}

json trajectory_summary(const Trajectory& tr) {
    json j;
    j["t_final"] = num(tr.times.back());
    j["h_final"] = num(tr.h.back());
    j["hprime_final"] = num(tr.hprime.back());
    j["supu_final"] = num(tr.supu.back());
    j["eta_final"] = num(tr.eta.back());
    j["steps"] = tr.size() - 1;
    j["extinct"] = tr.extinct;
    return j;
}

json classification_json(const Classification& c) {
    const auto& e = c.evidence;
    json j;
    j["verdict"] = to_string(c.verdict);
    j["rule"] = e.rule;
    j["h_final"] = num(e.h_final);
    j["hprime_final"] = num(e.hprime_final);
    j["supu_final"] = num(e.supu_final);
    j["t_final"] = num(e.t_final);
    j["lstar"] = num(e.lstar);
    j["ctilde"] = num(e.ctilde);
    j["window"] = e.window_lo ? json::array({num(*e.window_lo), num(*e.window_hi)}) : json(nullptr);
    j["window_min"] = num(e.window_min);
    j["diagnostic"] = e.diagnostic;
    return j;
}

Trajectory load_trajectory(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open trajectory '" + p.string() + "'");
    return read_trajectory_csv(in, p.string());
}

Snapshot load_snapshot(const fs::path& p, double t) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open snapshot '" + p.string() + "'");
    return read_snapshot_csv(in, t, p.string());
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory '" + dir.string() + "'");
}

int run_simulate(const std::string& config, const std::string& snapshots, const std::string& outdir, bool as_json,
                 std::ostream& out) {
    const auto cfg = RunConfig::load(config);
    const auto spec = problem_from(cfg);
    SimulateOptions so;
    so.snapshot_times = parse_list(snapshots);
    const auto traj = simulate(spec, so);
    const auto cls = classify(traj, spec);

    const fs::path dir(outdir);
    ensure_directory(dir);
    write_file(dir / "trajectory.csv", [&](std::ostream& o) { write_trajectory_csv(o, traj); });
    json snaps = json::array();
    for (const auto& s : traj.snapshots) {
        const auto name = snapshot_file_name(s.t);
        write_file(dir / name, [&](std::ostream& o) { write_snapshot_csv(o, s); });
        snaps.push_back(name);
    }
    write_file(dir / "final_profile.csv", [&](std::ostream& o) { write_snapshot_csv(o, traj.final_profile); });

    json summary = trajectory_summary(traj);
    summary["classification"] = classification_json(cls);
    summary["snapshots"] = snaps;
    write_file(dir / "summary.json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });

    Printer p(out, as_json);
    for (const auto& [k, v] : summary.items()) {
        if (k != "classification" && k != "snapshots") p.field(k, v);
    }
    p.field("verdict", to_string(cls.verdict));
    p.field("output", dir.string());
    p.flush();
    return 0;
}

int run_semiwave(double beta, double mu, const NonlinearityFlags& nl, const std::string& outfile, bool as_json,
                 std::ostream& out) {
    const auto n = nl.build();
    const auto r = solve_ctilde(beta, mu, n);
    if (!outfile.empty()) write_file(outfile, [&](std::ostream& o) { write_wave_csv(o, r.profile); });
    Printer p(out, as_json);
    p.field("c_tilde", num(r.c_tilde));
    p.field("residual", num(r.residual));
    p.field("slope0", num(r.profile.slope0));
    p.field("c0", num(n.c0()));
    p.field("beta", num(beta));
    p.field("mu", num(mu));
    p.flush();
    return 0;
}

struct WaveArgs {
    std::string kind = "semi";
    double c = 0.0;
    double beta = 0.0;
    double mu = 1.0;
    double a = 1.0;
    double b = 0.0;
    std::string out;
};

int run_wave(const WaveArgs& w, const NonlinearityFlags& nl, bool as_json, std::ostream& out) {
    const auto n = nl.build();
    WaveProfile prof;
    if (w.kind == "semi") {
        prof = shoot_semiwave(w.c, w.beta, n);
    } else if (w.kind == "finite") {
        prof = finite_wave(w.c, w.beta, w.mu, n);
    } else if (w.kind == "left") {
        prof = traveling_wave(w.c, Direction::Left, n);
    } else if (w.kind == "right") {
        prof = traveling_wave(w.c, Direction::Right, n);
    } else if (w.kind == "tadpole") {
        prof = tadpole_wave(w.beta, w.mu, n);
    } else if (w.kind == "stationary") {
        prof = stationary_increasing(w.beta, w.a, w.b, n);
    } else {
        throw ConfigError("unknown wave kind '" + w.kind + "'");
    }
    if (!w.out.empty()) write_file(w.out, [&](std::ostream& o) { write_wave_csv(o, prof); });
    Printer p(out, as_json);
    const auto j = wave_json(prof);
    for (const auto& [k, v] : j.items()) p.field(k, v);
    p.field("residual", num(profile_residual(prof, n)));
    p.flush();
    return 0;
}

struct EigenArgs {
    double ell = 1.0;
    double beta = 0.0;
    double a = 1.0;
    double b = 0.0;
    double m = 1.0;
    bool lstar = false;
    bool substar = false;
    std::string out;
};

int run_eigen(const EigenArgs& e, bool as_json, std::ostream& out) {
    Printer p(out, as_json);
    if (e.lstar || e.substar) {
        if (e.lstar) p.field("lstar", num(critical_length_lstar(e.beta, e.a, e.b, e.m)));
        if (e.substar) p.field("lsubstar", num(critical_length_substar(e.beta, e.a, e.b, e.m)));
        p.flush();
        return 0;
    }
    const EigenProblem prob{e.ell, e.beta, e.a, e.b, e.m};
    const auto r = principal_eigenvalue(prob);
    if (!e.out.empty()) write_file(e.out, [&](std::ostream& o) { write_eigen_csv(o, r); });
    static const std::map<EigenBranch, std::string> names = {{EigenBranch::Trigonometric, "trigonometric"},
                                                             {EigenBranch::Linear, "linear"},
                                                             {EigenBranch::Hyperbolic, "hyperbolic"}};
    p.field("zeta1", num(r.zeta1));
    p.field("branch", names.at(r.branch));
    p.field("wavenumber", num(r.wavenumber));
    p.field("residual", num(eigen_residual(prob, r)));
    p.flush();
    return 0;
}

struct ThresholdArgs {
    std::string param = "mu";
    std::string config;
    double tol = 1e-2;
    std::optional<double> lo;
    std::optional<double> hi;
    std::optional<double> tmax;
    std::string out;
};

int run_threshold(const ThresholdArgs& t, bool as_json, std::ostream& out) {
    const auto cfg = RunConfig::load(t.config);
    const auto spec = problem_from(cfg);
    ThresholdOptions opts;
    opts.tol = t.tol;
    opts.tmax = t.tmax;
    ThresholdResult r;
    if (t.param == "mu") {
        r = mu_star(spec, t.lo.value_or(0.05), t.hi.value_or(10.0), opts);
    } else if (t.param == "lambda") {
        const double lambda = cfg.number("lambda").value_or(1.0);
        std::vector<double> psi = spec.u0;
        for (auto& v : psi) v /= lambda;
        r = lambda_star(spec, psi, t.lo.value_or(0.01), t.hi.value_or(10.0), opts);
    } else {
        throw ConfigError("--param must be mu or lambda");
    }
    json j;
    j["parameter"] = to_string(r.parameter);
    j["outcome"] = to_string(r.outcome);
    j["lo"] = num(r.lo);
    j["hi"] = num(r.hi);
    j["width"] = num(r.width);
    j["runs"] = r.runs;
    j["bisection_steps"] = r.bisection_steps;
    j["endpoints_verified"] = r.endpoints_verified;
    j["monotone"] = r.monotone;
    j["warnings"] = r.warnings;
    json hist = json::array();
    for (const auto& h : r.history) {
        hist.push_back({{"value", num(h.value)},
                        {"verdict", to_string(h.verdict)},
                        {"tmax", num(h.tmax)},
                        {"h_final", num(h.h_final)},
                        {"supu_final", num(h.supu_final)},
                        {"stage", h.stage}});
    }
    j["history"] = hist;
    if (!t.out.empty()) write_file(t.out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
    if (as_json) {
        out << j.dump(2) << '\n';
        return 0;
    }
    Printer p(out, false);
    for (const char* k : {"parameter", "outcome", "lo", "hi", "width", "runs", "endpoints_verified", "monotone"}) {
        p.field(k, j[k]);
    }
    p.flush();
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
    for (const auto& h : r.history) {
        out << h.stage << ' ' << format_double(h.value) << ' ' << to_string(h.verdict) << '\n';
    }
    return 0;
}

int run_classify(const std::string& trajectory, const std::string& config, const std::string& profile, bool as_json,
                 std::ostream& out) {
    const auto cfg = RunConfig::load(config);
    const auto spec = problem_from(cfg);
    auto traj = load_trajectory(trajectory);
    if (traj.size() == 0) throw ConfigError("trajectory '" + trajectory + "' has no rows");
    traj.tmax = spec.tmax;
    if (!profile.empty()) traj.final_profile = load_snapshot(profile, traj.times.back());
    const auto cls = classify(traj, spec);
    Printer p(out, as_json);
    const auto j = classification_json(cls);
    for (const auto& [k, v] : j.items()) p.field(k, v);
    p.flush();
    return 0;
}

int run_asymptotics(const std::string& trajectory, const std::string& snapdir, const std::string& config, bool as_json,
                    std::ostream& out) {
    const auto cfg = RunConfig::load(config);
    const auto spec = problem_from(cfg);
    const auto traj = load_trajectory(trajectory);
    const auto speed = solve_ctilde(spec.beta, spec.mu, spec.nonlinearity);
    const auto fit = fit_speed(traj, speed.c_tilde);

    std::optional<WaveProfile> vtilde;
    if (spec.a > 0.0) vtilde = stationary_increasing(spec.beta, spec.a, spec.b, spec.nonlinearity);

    std::vector<std::pair<double, fs::path>> files;
    if (!snapdir.empty()) {
        std::error_code ec;
        fs::directory_iterator it(snapdir, ec);
        if (ec) throw IoError("cannot read snapshot directory '" + snapdir + "'");
        for (const auto& entry : it) {
            if (const auto t = snapshot_time_from_name(entry.path().filename().string())) {
                files.emplace_back(*t, entry.path());
            }
        }
        std::sort(files.begin(), files.end());
    }
    json errors = json::array();
    for (const auto& [t, path] : files) {
        const auto snap = load_snapshot(path, t);
        const double e = profile_error(snap, spec, speed.c_tilde, fit.H, vtilde ? &*vtilde : nullptr, speed.profile);
        errors.push_back({{"t", num(t)}, {"error", num(e)}});
    }
    Printer p(out, as_json);
    p.field("c_measured", num(fit.c_measured));
    p.field("c_tilde", num(fit.c_tilde));
    p.field("H", num(fit.H));
    p.field("drift", num(fit.drift));
    p.field("fit_samples", fit.samples);
    p.field("profile_errors", errors);
    p.flush();
    return 0;
}

struct SweepArgs {
    std::string config;
    std::optional<std::string> beta;
    std::optional<std::string> mu;
    std::optional<std::string> lambda;
    std::string out;
    unsigned threads = 0;
};

int run_sweep_command(const SweepArgs& s, std::ostream& out) {
    const auto cfg = RunConfig::load(s.config);
    auto axis = [&](const std::optional<std::string>& flag, const char* key, double fallback) {
        if (flag) return parse_list(*flag);
        return std::vector<double>{cfg.number(key).value_or(fallback)};
    };
    SweepGrid grid{axis(s.beta, "beta", 0.0), axis(s.mu, "mu", 1.0), axis(s.lambda, "lambda", 1.0)};
    if (grid.size() > 10000) throw DomainError("sweep grid exceeds 10^4 cells");
    const auto cells = run_sweep(cfg, grid, s.threads);
    if (s.out.empty()) {
        write_sweep_csv(out, cells);
    } else {
        write_file(s.out, [&](std::ostream& o) { write_sweep_csv(o, cells); });
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Free boundary reaction-diffusion-advection toolkit", "frontlab"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    bool as_json = false;
    bool show_version = false;
    app.add_flag("--json", as_json, "Print results as JSON");
    app.add_flag("--version", show_version, "Print the version and exit");

    std::string config, snapshots, outdir = ".";
    auto* sim = app.add_subcommand("simulate", "Run the free boundary problem and write trajectory CSVs");
    sim->add_option("--config", config, "key = value configuration file")->required();
    sim->add_option("--snapshots", snapshots, "Snapshot times t1,t2,... or start:stop:count");
    sim->add_option("--out", outdir, "Output directory")->capture_default_str();

    double sw_beta = 0.0, sw_mu = 1.0;
    std::string sw_out;
    NonlinearityFlags sw_nl;
    auto* semi = app.add_subcommand("semiwave", "Solve for the spreading speed and its semi-wave");
    semi->add_option("--beta", sw_beta, "Advection")->required();
    semi->add_option("--mu", sw_mu, "Stefan coefficient")->required();
    semi->add_option("--out", sw_out, "Write the semi-wave profile CSV here");
    sw_nl.attach(semi);

    WaveArgs wave_args;
    NonlinearityFlags wave_nl;
    auto* wave = app.add_subcommand("wave", "Shoot one of the wave profiles");
    wave->add_option("--kind", wave_args.kind, "semi, finite, left, right, tadpole or stationary")
        ->check(CLI::IsMember({"semi", "finite", "left", "right", "tadpole", "stationary"}))
        ->capture_default_str();
    wave->add_option("--c", wave_args.c, "Wave speed");
    wave->add_option("--beta", wave_args.beta, "Advection");
    wave->add_option("--mu", wave_args.mu, "Stefan coefficient");
    wave->add_option("--a", wave_args.a, "Left boundary weight a");
    wave->add_option("--b", wave_args.b, "Left boundary weight b");
    wave->add_option("--out", wave_args.out, "Write the profile CSV here");
    wave_nl.attach(wave);

    EigenArgs eig_args;
    auto* eig = app.add_subcommand("eigen", "Principal eigenvalue and critical lengths");
    eig->add_option("--ell", eig_args.ell, "Interval length");
    eig->add_option("--beta", eig_args.beta, "Advection");
    eig->add_option("--a", eig_args.a, "Left boundary weight a");
    eig->add_option("--b", eig_args.b, "Left boundary weight b");
    eig->add_option("--m", eig_args.m, "f'(0)");
    eig->add_flag("--find-lstar", eig_args.lstar, "Print the critical length lstar");
    eig->add_flag("--find-substar", eig_args.substar, "Print the critical length l_*");
    eig->add_option("--out", eig_args.out, "Write the eigenfunction CSV here");

    ThresholdArgs th_args;
    auto* th = app.add_subcommand("threshold", "Bisect for the mu or lambda threshold");
    th->add_option("--param", th_args.param, "mu or lambda")->check(CLI::IsMember({"mu", "lambda"}))->required();
    th->add_option("--config", th_args.config, "key = value configuration file")->required();
    th->add_option("--tol", th_args.tol, "Bracket width")->capture_default_str();
    th->add_option("--lo", th_args.lo, "Lower end of the search range");
    th->add_option("--hi", th_args.hi, "Upper end of the search range");
    th->add_option("--tmax", th_args.tmax, "Horizon of every run");
    th->add_option("--out", th_args.out, "Write the JSON result here");

    std::string cl_traj, cl_config, cl_profile;
    auto* cl = app.add_subcommand("classify", "Classify a trajectory CSV");
    cl->add_option("--trajectory", cl_traj, "Trajectory CSV")->required();
    cl->add_option("--config", cl_config, "Configuration the trajectory was produced with")->required();
    cl->add_option("--profile", cl_profile, "Final profile CSV (x,u)");

    std::string as_traj, as_snaps, as_config;
    auto* asy = app.add_subcommand("asymptotics", "Spreading speed fit and profile errors");
    asy->add_option("--trajectory", as_traj, "Trajectory CSV")->required();
    asy->add_option("--snapshots", as_snaps, "Directory of snapshot CSVs");
    asy->add_option("--config", as_config, "Configuration the trajectory was produced with")->required();

    SweepArgs sw_args;
    auto* sw = app.add_subcommand("sweep", "Classified runs over a beta x mu x lambda grid");
    sw->add_option("--config", sw_args.config, "Base configuration")->required();
    sw->add_option("--beta", sw_args.beta, "List a,b,c or start:stop:count");
    sw->add_option("--mu", sw_args.mu, "List a,b,c or start:stop:count");
    sw->add_option("--lambda", sw_args.lambda, "List a,b,c or start:stop:count");
    sw->add_option("--out", sw_args.out, "Phase table CSV (default stdout)");
    sw->add_option("--threads", sw_args.threads, "Worker threads (0: all cores)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    if (show_version) {
        out << "frontlab " << version() << '\n';
        return 0;
    }

    try {
        if (*sim) return run_simulate(config, snapshots, outdir, as_json, out);
        if (*semi) return run_semiwave(sw_beta, sw_mu, sw_nl, sw_out, as_json, out);
        if (*wave) return run_wave(wave_args, wave_nl, as_json, out);
        if (*eig) return run_eigen(eig_args, as_json, out);
        if (*th) return run_threshold(th_args, as_json, out);
        if (*cl) return run_classify(cl_traj, cl_config, cl_profile, as_json, out);
        if (*asy) return run_asymptotics(as_traj, as_snaps, as_config, as_json, out);
        if (*sw) return run_sweep_command(sw_args, out);
        err << app.help();
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace frontlab::cli
