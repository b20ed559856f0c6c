#include "maxline/gathering.hpp"

#include <algorithm>

namespace maxline {

ComputeResult gathering_compute(const LocalSnapshot& snap)
{
    const auto ns = snap.neighbors();
    if (std::all_of(ns.begin(), ns.end(), [](const Neighbor& n) { return nearly_equal(n.offset, Point2{}); }))
        return {{}, snap.own_lights()};
    ComputeResult out{{snap.x_right() - 1.0, 0.0}, snap.own_lights()};
    if (snap.all_on_axis()) {
        const Neighbor* top = snap.farthest_above();
        const Neighbor* bottom = snap.farthest_below();
        const double y_top = top != nullptr ? top->offset.y : 0.0;
        const double y_bottom = bottom != nullptr ? bottom->offset.y : 0.0;
        out.target.y = 0.5 * y_top + 0.5 * y_bottom;
    }
    return out;
}

bool is_gathered(std::span<const Point2> positions)
{
    return diameter_stats(positions).diameter <= kGeoTolerance;
}

} // namespace maxline
