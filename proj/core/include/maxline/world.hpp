#pragma once

#include "maxline/geometry.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maxline {

/// Externally visible lights of a luminous robot.
struct LightState {
    int counter = 0;  // round / run counter, values 0..2
    bool mov = false;
    bool prev = false;
    bool final = false;

    /// Index of (counter, mov, prev) in a single 9-color light. -1 when mov and prev are both set.
    int color() const;
    friend bool operator==(const LightState&, const LightState&) = default;
};

inline int increment_counter(int counter) { return (counter + 1) % 3; }

enum class Chirality : int { positive = 1, negative = -1 };

inline double sign_of(Chirality c) { return c == Chirality::positive ? 1.0 : -1.0; }

struct RobotState {
    RobotId id = 0;
    Point2 position;
    Chirality chirality = Chirality::positive;
    LightState visible;
    LightState pending;
};

struct GlobalConfiguration {
    long round = 0;
    std::vector<RobotState> robots;
    RangeModel range;

    std::size_t size() const { return robots.size(); }
    std::vector<Point2> positions() const;
};

/// Builds a round-0 configuration with ids 0..n-1, all lights off.
GlobalConfiguration make_configuration(std::span<const Point2> positions, const RangeModel& range,
                                       std::span<const Chirality> chirality = {});

enum class ChiralityMode { random, positive };

std::vector<Chirality> assign_chirality(std::size_t n, ChiralityMode mode, std::uint64_t seed);

/// Set of robots acting in one round.
struct ActivationRecord {
    long round = 0;
    std::vector<RobotId> active;  // sorted, unique

    bool contains(RobotId id) const;
};

struct Neighbor {
    RobotId id = 0;
    Point2 offset;  // observer frame
    LightState lights;
};

/// One robot's view of its neighborhood in its own frame. The observer sits at the origin.
class LocalSnapshot {
public:
    LocalSnapshot(RobotId observer, LightState own, std::vector<Neighbor> neighbors);

    RobotId observer() const { return observer_; }
    const LightState& own_lights() const { return own_; }
    std::span<const Neighbor> neighbors() const { return neighbors_; }
    bool empty() const { return neighbors_.empty(); }

    double x_right() const;
    double x_left() const;
    /// Closest neighbor strictly above / below; nullptr when none.
    const Neighbor* above() const;
    const Neighbor* below() const;
    const Neighbor* farthest_above() const;
    const Neighbor* farthest_below() const;
    double y_plus() const;
    double y_minus() const;

    bool all_on_axis() const;
    /// Neighbors sharing the observer's local x-axis (observer excluded).
    std::vector<Neighbor> y_set() const;
    /// Rank (1-based) of the observer among itself and y_set() by x, and the set size including itself.
    std::pair<std::size_t, std::size_t> y_rank() const;
    /// Neighbors at local x = 0 or x = x_left().
    std::vector<Neighbor> c_set() const;
    /// Smallest positive local y over c_set(), default 1/10.
    double y_min_collision() const;
    /// Smallest positive local y over all neighbors, default 1/10.
    double y_min_any() const;
    bool occupied(Point2 p) const;

private:
    RobotId observer_;
    LightState own_;
    std::vector<Neighbor> neighbors_;
};

inline constexpr double kDefaultYMin = 0.1;

LocalSnapshot take_snapshot(const GlobalConfiguration& config, RobotId robot);

/// Converts a target in the robot's frame into the global frame.
Point2 to_global(const RobotState& robot, Point2 local_target);

/// Moves active robots to their global targets and commits their pending lights.
GlobalConfiguration apply_moves(const GlobalConfiguration& config, const std::map<RobotId, Point2>& targets,
                                const ActivationRecord& active);

AdjacencyGraph neighbors(const GlobalConfiguration& config);
bool is_connected(const GlobalConfiguration& config);
std::vector<std::pair<RobotId, RobotId>> find_collisions(const GlobalConfiguration& config);

std::string to_json(const GlobalConfiguration& config);
GlobalConfiguration configuration_from_json(std::string_view text);

} // namespace maxline
