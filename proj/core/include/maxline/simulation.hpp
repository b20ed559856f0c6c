#pragma once

#include "maxline/analysis.hpp"
#include "maxline/chain.hpp"
#include "maxline/maxline.hpp"
#include "maxline/schedulers.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace maxline {

inline constexpr int kTraceVersion = 1;

struct RunConfig {
    Algorithm algorithm = Algorithm::oblot;
    SchedulerSpec scheduler;
    double epsilon = 0.01;
    std::size_t max_epochs = 0;  // 0 selects default_max_epochs
    std::string source = "inline";
    GlobalConfiguration initial;  // every algorithm except chain_gtm
    ChainConfiguration chain;     // chain_gtm only
};

/// Epoch budget used when RunConfig::max_epochs is 0.
std::size_t default_max_epochs(const RunConfig& config);

/// Robots the scheduler activates: all robots, or the inner robots of a chain.
std::size_t active_robot_count(const RunConfig& config);

/// Throws std::invalid_argument for an unusable configuration.
void validate(const RunConfig& config);

enum class RunStatus { converged, budget_exhausted, invariant_violation };

std::string_view to_string(RunStatus status);
/// Process exit code: 0 converged, 2 budget exhausted, 3 invariant violation.
int exit_code(RunStatus status);

struct RoundRecord {
    long round = 0;
    std::size_t epoch = 0;
    std::vector<RobotId> active;
    std::vector<Point2> positions;
    std::vector<LightState> lights;  // empty unless the algorithm uses lights
    std::vector<std::pair<RobotId, RobotId>> collisions;
    std::optional<double> phi;                   // vertical line states of line algorithms
    std::optional<std::pair<double, double>> phi2;  // chain_gtm, per axis
    bool is_line = false;
    double line_length = 0.0;
};

struct RunSummary {
    RunStatus status = RunStatus::budget_exhausted;
    long rounds = 0;
    std::size_t epochs = 0;  // completed epochs when the run stopped
    std::size_t distinct_colors = 0;
    std::string diagnostic;
};

struct Trace {
    RunConfig config;  // max_epochs resolved
    std::vector<RoundRecord> rounds;
    RunSummary summary;
};

/// Runs until the algorithm's goal is met, the epoch budget runs out, or a guard fails.
Trace simulate(const RunConfig& config);

/// State after the last round, or the initial state.
std::vector<Point2> final_positions(const Trace& trace);

/// JSON-Lines: header, one record per round, result.
void write_trace(const Trace& trace, std::ostream& out);
std::string trace_to_string(const Trace& trace);
/// Throws std::invalid_argument on malformed input.
Trace read_trace(std::istream& in);

enum class Check { replay, safety, drop_terms, epoch_bounds, chain_potential };

std::string_view to_string(Check check);
std::optional<Check> parse_check(std::string_view text);
std::vector<Check> all_checks();

struct EpochSeries {
    std::vector<std::size_t> epoch;
    std::vector<double> potential;    // line potential, or the x-axis chain potential
    std::vector<double> potential_y;  // chain only
    std::vector<double> bound;        // sorted-gap bound, line algorithms only
    std::vector<std::optional<double>> ratio;
};

struct VerifyReport {
    std::vector<std::string> violations;
    std::vector<Check> checks_run;
    std::size_t drop_term_rounds = 0;
    double min_residual = 0.0;
    double max_interior_residual = 0.0;
    std::optional<double> min_epoch_ratio;
    double ratio_floor = 0.0;
    std::size_t sorted_bound_violations = 0;
    std::size_t ratio_violations = 0;
    std::optional<std::size_t> first_approx_epoch;
    EpochSeries series;

    bool ok() const { return violations.empty(); }
};

/// Runs the selected checks on a trace. Replay re-simulates from the header and compares bytes.
VerifyReport verify(const Trace& trace, const std::vector<Check>& checks);

std::string report_to_json(const VerifyReport& report);
void write_epoch_csv(const VerifyReport& report, std::ostream& out);

} // namespace maxline
