#pragma once

#include "maxline/world.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace maxline {

enum class FixtureKind { c1, c2, alpha };

std::string_view to_string(FixtureKind kind);
std::optional<FixtureKind> parse_fixture_kind(std::string_view text);

struct FixtureSpec {
    FixtureKind kind = FixtureKind::c2;
    double scale = 1.0;  // spacing c
    double alpha = 2.0;  // viewing range factor, alpha kind only
    std::vector<Point2> c1_positions{{0.0, 0.0}, {0.5, 0.3}, {1.0, 0.0}};
};

/// A fixture with the robots that play special roles in the stuck argument.
struct Fixture {
    GlobalConfiguration config;
    /// Far ends of the four vertical arms; they look like the end of a solved line.
    std::vector<RobotId> tips;
    /// Robots pinned between neighbors at full distance: the two hubs and the horizontal bridge.
    std::vector<RobotId> pinned;
    RobotId left_hub = 0;
    /// Viewing range used by the tips' indistinguishability argument.
    double view_range = 1.0;
};

/// Builds a fixture. Arms of ceil(alpha) robots replace the single arm robots in the alpha kind,
/// which coincides with c2 for alpha <= 1. Robots are numbered arm by arm, top to bottom, left to right.
/// The range radius equals the fixture scale.
Fixture make_fixture(const FixtureSpec& spec, RangeKind range = RangeKind::circular);

struct ProbeResult {
    RobotId robot = 0;
    std::size_t probes = 0;
    /// Nonzero displacements after which the robot still reaches every former neighbor and the
    /// configuration stays connected.
    std::vector<Point2> preserving;
    /// Nonzero displacements after which the configuration stays connected, links to former neighbors aside.
    std::vector<Point2> connected;
};

struct StuckReport {
    std::vector<ProbeResult> robots;
    const ProbeResult& at(RobotId id) const { return robots.at(id); }
};

/// Moves each robot alone by every displacement of a probe_grid x probe_grid grid over
/// [-radius, radius]^2 and records which nonzero ones keep the graph connected.
/// Throws if the input is disconnected or probe_grid < 2.
StuckReport stuck_check(const GlobalConfiguration& config, const RangeModel& model, std::size_t probe_grid = 21);

/// Largest dx in (0, radius] such that every probed (d, 0), 0 < d <= dx, preserves connectivity.
double rightward_freedom(const ProbeResult& probe);

/// True if the robot's view within view_range, under the configuration's range kind, equals the view from the
/// end of a solved vertical line with spacing radius, up to reflection of the y-axis.
bool looks_like_line_end(const GlobalConfiguration& config, RobotId robot, double view_range);

/// Incrementally places n robots, each next to a randomly chosen earlier one.
GlobalConfiguration random_connected(std::size_t n, const RangeModel& model, std::uint64_t seed,
                                     ChiralityMode chirality = ChiralityMode::random);

/// A connected configuration of n robots: a straight spine of length delta in a seeded diagonal direction,
/// with the remaining robots attached at random inside the spine's bounding box.
/// Throws if n is too small to bridge delta.
GlobalConfiguration spread_connected(std::size_t n, double delta, const RangeModel& model, std::uint64_t seed,
                                     ChiralityMode chirality = ChiralityMode::random);

} // namespace maxline
