#pragma once

#include "maxline/simulation.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace maxline {

/// Seeded random start for an algorithm: a connected swarm of n robots (square range, random chirality),
/// a random chain with n inner robots, or, when spread is set, a swarm spanning roughly that distance.
RunConfig random_run(Algorithm algorithm, const SchedulerSpec& scheduler, std::size_t n, std::uint64_t seed,
                     double epsilon, std::optional<double> spread = std::nullopt);

struct SweepSpec {
    Algorithm algorithm = Algorithm::oblot;
    SchedulerSpec scheduler;
    std::vector<std::size_t> sizes;  // robot counts; with spreads, one fixed count
    std::vector<double> spreads;     // when non-empty, the swept parameter instead of sizes
    std::vector<std::uint64_t> seeds;
    double epsilon = 0.01;
    std::size_t threads = 0;  // 0 selects the hardware concurrency
};

struct SweepCell {
    std::size_t n = 0;
    std::optional<double> spread;
    std::uint64_t seed = 0;
    RunSummary summary;
};

struct SweepPoint {
    double parameter = 0.0;
    std::size_t cells = 0;
    std::size_t converged = 0;
    double mean_epochs = 0.0;
    double mean_rounds = 0.0;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::vector<SweepPoint> points;
    /// Least-squares slope of log mean epochs (rounds) against log parameter.
    std::optional<double> epochs_exponent;
    std::optional<double> rounds_exponent;

    bool all_converged() const;
};

/// Runs every (parameter, seed) cell on a thread pool. Cells are independent and results are ordered
/// by parameter, then seed.
SweepResult run_sweep(const SweepSpec& spec);

/// Slope of the least-squares line through (log x, log y); nullopt with fewer than two usable points.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

void write_sweep_cells_csv(const SweepResult& result, std::ostream& out);
void write_sweep_summary_csv(const SweepResult& result, std::ostream& out);

} // namespace maxline
