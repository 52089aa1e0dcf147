#include "frontlab_cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>

#include "frontlab/errors.hpp"

namespace frontlab::cli {

namespace {

double to_number(const std::string& token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number in list: '" + token + "'");
    }
    if (used != token.size() || !std::isfinite(v)) throw ConfigError("not a number in list: '" + token + "'");
    return v;
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
    const std::string t = strip(text);
    if (t.empty()) return {};
    if (t.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::istringstream is(t);
        for (std::string p; std::getline(is, p, ':');) parts.push_back(strip(p));
        if (parts.size() != 3) throw ConfigError("range must be start:stop:count, got '" + t + "'");
        const double start = to_number(parts[0]);
        const double stop = to_number(parts[1]);
        const double count = to_number(parts[2]);
        if (count < 0.0 || count != std::floor(count)) throw ConfigError("range count must be a whole number");
        const auto n = static_cast<std::size_t>(count);
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = n == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1);
        }
        return out;
    }
    std::vector<double> out;
    std::istringstream is(t);
    for (std::string p; std::getline(is, p, ',');) out.push_back(to_number(strip(p)));
    return out;
}

std::vector<SweepCell> run_sweep(const RunConfig& base, const SweepGrid& grid, unsigned threads,
                                 const ClassifierOptions& options) {
    if (grid.size() > 10000) throw DomainError("sweep grid exceeds 10^4 cells");
    std::vector<SweepCell> cells;
    cells.reserve(grid.size());
    for (double b : grid.beta) {
        for (double m : grid.mu) {
            for (double l : grid.lambda) cells.push_back({b, m, l, "", 0.0, 0.0, ""});
        }
    }

    auto work = [&](SweepCell& cell) {
        try {
            RunConfig cfg = base;
            cfg.set("beta", format_double(cell.beta));
            cfg.set("mu", format_double(cell.mu));
            cfg.set("lambda", format_double(cell.lambda));
            const auto spec = problem_from(cfg);
            const auto lstar = lstar_for(spec);
            const auto ctilde = ctilde_for(spec);
            SimulateOptions so;
            if (lstar && std::abs(spec.beta) < spec.nonlinearity.c0()) {
                const double stop_at = *lstar + options.margin;
                so.stop_when = [stop_at](const FrontState& s) { return s.h >= stop_at; };
            }
            const auto traj = simulate(spec, so);
            const auto cls = classify(traj, spec, lstar, ctilde, options);
            cell.verdict = to_string(cls.verdict);
            cell.h_final = cls.evidence.h_final;
            cell.supu_final = cls.evidence.supu_final;
        } catch (const std::exception& e) {
            cell.verdict = "Error";
            cell.message = e.what();
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cells.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) work(cells[i]);
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
    out << "beta,mu,lambda,verdict,h_final,supu_final\n";
    for (const auto& c : cells) {
        out << format_double(c.beta) << ',' << format_double(c.mu) << ',' << format_double(c.lambda) << ','
            << c.verdict << ',' << format_double(c.h_final) << ',' << format_double(c.supu_final) << '\n';
    }
}

}  // namespace frontlab::cli
