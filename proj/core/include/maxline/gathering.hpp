#pragma once

#include "maxline/maxline.hpp"

#include <span>

namespace maxline {

/// Gathering rule: step one unit left of the rightmost neighbor; on a vertical line also move to the
/// middle of the two farthest neighbors.
ComputeResult gathering_compute(const LocalSnapshot& snap);

/// True once all robots sit within the geometric tolerance of one point.
bool is_gathered(std::span<const Point2> positions);

} // namespace maxline
