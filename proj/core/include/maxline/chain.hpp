#pragma once

#include "maxline/geometry.hpp"
#include "maxline/world.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maxline {

/// Private frame of a disoriented chain robot: a rotation followed by an optional reflection.
struct ChainFrame {
    double rotation = 0.0;  // radians
    bool reflected = false;

    Point2 to_local(Point2 global_offset) const;
    Point2 to_global(Point2 local_offset) const;
};

/// Robots 0..n+1 in a fixed chain. The two outer robots never move.
struct ChainConfiguration {
    long round = 0;
    std::vector<Point2> positions;
    std::vector<ChainFrame> frames;

    /// Number of inner robots.
    std::size_t inner() const { return positions.size() - 2; }
};

/// Validates the chain (at least two robots, links of length at most 1) and assigns seeded random frames.
ChainConfiguration make_chain(std::vector<Point2> positions, std::uint64_t frame_seed = 0);

/// Random walk with n inner robots and links of length at most 1.
ChainConfiguration random_chain(std::size_t n, std::uint64_t seed);

/// Offsets of the previous and next robot in robot i's own frame.
std::pair<Point2, Point2> chain_snapshot(const ChainConfiguration& chain, std::size_t robot);

/// Go-to-the-middle target of inner robot i, in global coordinates.
Point2 gtm_target(const ChainConfiguration& chain, std::size_t robot);

/// One round: every active inner robot (chain index 1..n) moves to the midpoint of its neighbors.
ChainConfiguration gtm_step(const ChainConfiguration& chain, std::span<const std::size_t> active);

struct ChainMetrics {
    std::vector<Point2> links;  // p_i - p_{i-1}, i = 1..n+1
    double length = 0.0;        // sum of link lengths
    double span = 0.0;          // distance between the outer robots
    Point2 ideal_link;          // (p_{n+1} - p_0) / (n+1)
};

ChainMetrics chain_metrics(const ChainConfiguration& chain);
/// Every link within eps of the ideal link.
bool eps_reached(const ChainConfiguration& chain, double eps);

enum class Axis { x, y };

/// Sum of squared deviations of the link components from their mean along one axis.
double phi2(const ChainConfiguration& chain, Axis axis);

/// Largest link length; 1 or less on a connected chain.
double max_link(const ChainConfiguration& chain);

std::string chain_to_json(const ChainConfiguration& chain);
ChainConfiguration chain_from_json(std::string_view text);

} // namespace maxline
