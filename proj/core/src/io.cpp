#include "frontlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "frontlab/errors.hpp"

namespace frontlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

// Reads a numeric CSV whose header must equal `header`.
std::vector<std::vector<double>> read_table(std::istream& in, const std::vector<std::string>& header,
                                            const std::string& origin) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!trim(line).empty()) break;
    }
    if (split_csv_line(trim(line)) != header) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected header '" + expected + "'");
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(trim(line));
        if (fields.size() != header.size()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                              " fields");
        }
        std::vector<double> row;
        for (const auto& f : fields) {
            const auto v = parse_double(f);
            if (!v) throw ConfigError(origin + ":" + std::to_string(lineno) + ": not a number: '" + f + "'");
            row.push_back(*v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

const std::vector<std::string>& RunConfig::allowed_keys() {
    static const std::vector<std::string> keys = {"beta", "mu", "a", "b", "h0", "lambda", "nx", "dt", "tmax",
                                                  "nonlinearity", "gamma", "coefficients"};
    return keys;
}

RunConfig RunConfig::parse(std::istream& in, const std::string& origin) {
    RunConfig cfg;
    cfg.origin_ = origin;
    std::string line;
    int lineno = 0;
    const auto& keys = allowed_keys();
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string at = origin + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) throw ConfigError(at + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(at + "missing key");
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError(at + "unknown key '" + key + "'");
        if (value.empty()) throw ConfigError(at + "missing value for '" + key + "'");
        if (cfg.values_.count(key)) throw ConfigError(at + "repeated key '" + key + "'");
        cfg.values_[key] = value;
        cfg.lines_[key] = lineno;
    }
    return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path.string() + "'");
    return parse(in, path.string());
}

std::string RunConfig::where(const std::string& key) const {
    const auto it = lines_.find(key);
    if (it == lines_.end()) return "option '" + key + "'";
    return origin_ + ":" + std::to_string(it->second) + ": '" + key + "'";
}

std::optional<std::string> RunConfig::text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> RunConfig::number(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    const auto v = parse_double(*t);
    if (!v) throw ConfigError(where(key) + ": not a finite number: '" + *t + "'");
    return v;
}

std::optional<int> RunConfig::integer(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    int v = 0;
    const auto s = trim(*t);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError(where(key) + ": not an integer: '" + *t + "'");
    return v;
}

std::optional<std::vector<double>> RunConfig::numbers(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    std::string s = *t;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream is(s);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        const auto v = parse_double(tok);
        if (!v) throw ConfigError(where(key) + ": not a number: '" + tok + "'");
        out.push_back(*v);
    }
    if (out.empty()) throw ConfigError(where(key) + ": empty list");
    return out;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const auto& keys = allowed_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown key '" + key + "'");
    values_[key] = value;
    lines_.erase(key);
}

Nonlinearity nonlinearity_from(const RunConfig& cfg) {
    const std::string kind = cfg.text("nonlinearity").value_or("logistic");
    if (kind == "logistic") return Nonlinearity::logistic();
    if (kind == "cubic") return Nonlinearity::cubic_monostable(cfg.number("gamma").value_or(0.0));
    if (kind == "polynomial") {
        const auto c = cfg.numbers("coefficients");
        if (!c) throw ConfigError("nonlinearity 'polynomial' needs 'coefficients'");
        return Nonlinearity::polynomial(*c);
    }
    throw ConfigError("unknown nonlinearity '" + kind + "' (expected logistic, cubic or polynomial)");
}

ProblemSpec problem_from(const RunConfig& cfg) {
    const double h0 = cfg.number("h0").value_or(1.0);
    auto spec = make_problem(cfg.number("beta").value_or(0.0), cfg.number("mu").value_or(1.0),
                             cfg.number("a").value_or(1.0), cfg.number("b").value_or(0.0), h0,
                             cfg.number("lambda").value_or(1.0), nonlinearity_from(cfg), cfg.integer("nx").value_or(800),
                             cfg.number("tmax").value_or(10.0), cfg.number("dt").value_or(0.0));
    spec.validate();
    return spec;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,h,hprime,supu,eta\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << format_double(traj.times[i]) << ',' << format_double(traj.h[i]) << ',' << format_double(traj.hprime[i])
            << ',' << format_double(traj.supu[i]) << ',' << format_double(traj.eta[i]) << '\n';
    }
}

void write_snapshot_csv(std::ostream& out, const Snapshot& snap) {
    out << "x,u\n";
    for (std::size_t i = 0; i < snap.x.size(); ++i) out << format_double(snap.x[i]) << ',' << format_double(snap.u[i]) << '\n';
}

void write_wave_csv(std::ostream& out, const WaveProfile& wave) {
    out << "z,q,dq\n";
    for (const auto& s : wave.samples) {
        out << format_double(s.z) << ',' << format_double(s.q) << ',' << format_double(s.dq) << '\n';
    }
}

void write_eigen_csv(std::ostream& out, const EigenResult& eig) {
    out << "x,phi\n";
    for (std::size_t i = 0; i < eig.x.size(); ++i) out << format_double(eig.x[i]) << ',' << format_double(eig.phi[i]) << '\n';
}

Trajectory read_trajectory_csv(std::istream& in, const std::string& origin) {
    const auto rows = read_table(in, {"t", "h", "hprime", "supu", "eta"}, origin);
    Trajectory tr;
    for (const auto& r : rows) {
        tr.times.push_back(r[0]);
        tr.h.push_back(r[1]);
        tr.hprime.push_back(r[2]);
        tr.supu.push_back(r[3]);
        tr.eta.push_back(r[4]);
    }
    if (!tr.times.empty()) {
        tr.tmax = tr.times.back();
        tr.extinct = tr.supu.back() < 1e-200;
    }
    return tr;
}

Snapshot read_snapshot_csv(std::istream& in, double t, const std::string& origin) {
    const auto rows = read_table(in, {"x", "u"}, origin);
    if (rows.size() < 2) throw ConfigError(origin + ": snapshot needs at least two rows");
    Snapshot s;
    s.t = t;
    for (const auto& r : rows) {
        s.x.push_back(r[0]);
        s.u.push_back(r[1]);
    }
    s.h = s.x.back();
    return s;
}

std::string snapshot_file_name(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_t%.6f.csv", t);
    return buf;
}

std::optional<double> snapshot_time_from_name(const std::string& name) {
    const std::string prefix = "snapshot_t";
    const std::string suffix = ".csv";
    if (name.size() <= prefix.size() + suffix.size() || name.rfind(prefix, 0) != 0 ||
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
        return std::nullopt;
    }
    return parse_double(name.substr(prefix.size(), name.size() - prefix.size() - suffix.size()));
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    writer(out);
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace frontlab
