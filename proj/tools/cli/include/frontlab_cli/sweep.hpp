#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "frontlab/classifier.hpp"
#include "frontlab/io.hpp"

namespace frontlab::cli {

/// `a,b,c` or `start:stop:count` (count points including both ends). An
/// empty string is an empty list.
std::vector<double> parse_list(const std::string& text);

struct SweepCell {
    double beta = 0.0;
    double mu = 0.0;
    double lambda = 0.0;
    /// Verdict name, or "Error".
    std::string verdict;
    double h_final = 0.0;
    double supu_final = 0.0;
    std::string message;
};

struct SweepGrid {
    std::vector<double> beta;
    std::vector<double> mu;
    std::vector<double> lambda;

    std::size_t size() const noexcept { return beta.size() * mu.size() * lambda.size(); }
};

/// One classified run per cell, beta outermost and lambda innermost. Cells
/// run on `threads` workers (0 picks the hardware concurrency); failures are
/// recorded as "Error" and do not stop the sweep.
std::vector<SweepCell> run_sweep(const RunConfig& base, const SweepGrid& grid, unsigned threads = 0,
                                 const ClassifierOptions& options = {});

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

}  // namespace frontlab::cli
