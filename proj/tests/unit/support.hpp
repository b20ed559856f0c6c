#pragma once

#include "maxline/maxline.hpp"
#include "maxline/random.hpp"
#include "maxline/world.hpp"

#include <map>
#include <vector>

namespace maxline::testing {

/// One round of a configuration-based rule with the given robots active.
inline GlobalConfiguration step(Algorithm algorithm, const GlobalConfiguration& state, std::vector<RobotId> active)
{
    ActivationRecord act{state.round, std::move(active)};
    GlobalConfiguration staged = state;
    std::map<RobotId, Point2> targets;
    for (RobotId id : act.active) {
        const ComputeResult result = compute(algorithm, take_snapshot(state, id));
        staged.robots[id].pending = result.lights;
        targets[id] = to_global(state.robots[id], result.target);
    }
    return apply_moves(staged, targets, act);
}

inline std::vector<RobotId> all_ids(std::size_t n)
{
    std::vector<RobotId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    return ids;
}

inline std::vector<Point2> random_points(Rng& rng, std::size_t n, double extent)
{
    std::vector<Point2> pts(n);
    for (auto& p : pts) p = {rng.uniform(-extent, extent), rng.uniform(-extent, extent)};
    return pts;
}

/// Vertical line at x with random gaps in [lo, hi], bottom robot at y0. Ids follow ascending y.
inline std::vector<Point2> random_line(Rng& rng, std::size_t n, double x, double y0, double lo, double hi)
{
    std::vector<Point2> pts;
    double y = y0;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({x, y});
        y += rng.uniform(lo, hi);
    }
    return pts;
}

} // namespace maxline::testing
