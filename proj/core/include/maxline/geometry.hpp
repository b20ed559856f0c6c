#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace maxline {

using RobotId = std::size_t;

// Tolerance for equality tests on coordinates produced by arithmetic.
inline constexpr double kGeoTolerance = 1e-9;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double chebyshev_norm(Point2 p) { return std::max(std::abs(p.x), std::abs(p.y)); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline bool nearly_zero(double v, double tol = kGeoTolerance) { return std::abs(v) <= tol; }
inline bool nearly_equal(Point2 a, Point2 b, double tol = kGeoTolerance)
{
    return nearly_zero(a.x - b.x, tol) && nearly_zero(a.y - b.y, tol);
}
inline constexpr Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

enum class RangeKind { square, circular };

std::string_view to_string(RangeKind kind);
std::optional<RangeKind> parse_range_kind(std::string_view text);

/// Connectivity and viewing range. Boundary is inclusive.
struct RangeModel {
    RangeKind kind = RangeKind::square;
    double radius = 1.0;

    static RangeModel square(double radius = 1.0) { return {RangeKind::square, radius}; }
    static RangeModel circular(double radius = 1.0) { return {RangeKind::circular, radius}; }

    double distance(Point2 a, Point2 b) const;
    bool within(Point2 a, Point2 b) const { return distance(a, b) <= radius + kGeoTolerance; }
    friend bool operator==(const RangeModel&, const RangeModel&) = default;
};

class AdjacencyGraph {
public:
    explicit AdjacencyGraph(std::size_t n = 0) : adjacency_(n) {}

    std::size_t size() const { return adjacency_.size(); }
    void add_edge(RobotId a, RobotId b);
    bool has_edge(RobotId a, RobotId b) const;
    std::span<const RobotId> adjacent(RobotId id) const { return adjacency_.at(id); }
    std::vector<std::pair<RobotId, RobotId>> edges() const;
    std::size_t edge_count() const;

private:
    std::vector<std::vector<RobotId>> adjacency_;
};

AdjacencyGraph neighbors(std::span<const Point2> positions, const RangeModel& model);
bool is_connected(const AdjacencyGraph& graph);
/// Component label per vertex, labels numbered from 0 in order of first vertex.
std::vector<std::size_t> component_labels(const AdjacencyGraph& graph);

struct DiameterStats {
    double diameter = 0.0;
    double extent_x = 0.0;
    double extent_y = 0.0;
};

DiameterStats diameter_stats(std::span<const Point2> positions);

} // namespace maxline
