#pragma once

#include "maxline/world.hpp"

#include <optional>
#include <string_view>

namespace maxline {

/// Outcome of one Compute step. The target is in the robot's frame; (0,0) means stay.
struct ComputeResult {
    Point2 target;
    LightState lights;
};

/// Oblivious rule: rightmost robots slide onto the leftmost column, then the line is stretched.
ComputeResult oblot_compute(const LocalSnapshot& snap);

/// Luminous rule for fully synchronous rounds. The line drifts left by one unit per round.
ComputeResult lumi_fsync_compute(const LocalSnapshot& snap, LightState own);

/// Same as lumi_fsync_compute, but robots freeze horizontally once runs have met.
ComputeResult lumi_fsync_stationary_compute(const LocalSnapshot& snap, LightState own);

/// Luminous rule for semi-synchronous rounds, with counter-synchronized runs.
ComputeResult lumi_ssync_compute(const LocalSnapshot& snap, LightState own);

enum class Algorithm { oblot, lumi_fsync, lumi_fsync_stationary, lumi_ssync, gathering, chain_gtm };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view text);

bool is_max_line(Algorithm algorithm);
bool uses_lights(Algorithm algorithm);
/// True for algorithms whose guarantees are stated only for fully synchronous rounds.
bool requires_fsync(Algorithm algorithm);

/// Dispatches to the compute rule of a configuration-based algorithm (not chain_gtm).
ComputeResult compute(Algorithm algorithm, const LocalSnapshot& snap);

} // namespace maxline
