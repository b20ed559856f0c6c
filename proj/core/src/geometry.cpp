#include "maxline/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace maxline {

std::string_view to_string(RangeKind kind)
{
    return kind == RangeKind::square ? "square" : "circular";
}

std::optional<RangeKind> parse_range_kind(std::string_view text)
{
    if (text == "square") return RangeKind::square;
    if (text == "circular") return RangeKind::circular;
    return std::nullopt;
}

double RangeModel::distance(Point2 a, Point2 b) const
{
    const Point2 d = a - b;
    return kind == RangeKind::square ? chebyshev_norm(d) : norm(d);
}

void AdjacencyGraph::add_edge(RobotId a, RobotId b)
{
    if (a >= size() || b >= size()) throw std::out_of_range("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loop");
    if (has_edge(a, b)) return;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
}

bool AdjacencyGraph::has_edge(RobotId a, RobotId b) const
{
    if (a >= size() || b >= size()) return false;
    const auto& row = adjacency_[a];
    return std::find(row.begin(), row.end(), b) != row.end();
}

std::vector<std::pair<RobotId, RobotId>> AdjacencyGraph::edges() const
{
    std::vector<std::pair<RobotId, RobotId>> out;
    for (RobotId a = 0; a < size(); ++a)
        for (RobotId b : adjacency_[a])
            if (a < b) out.emplace_back(a, b);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t AdjacencyGraph::edge_count() const
{
    std::size_t twice = 0;
    for (const auto& row : adjacency_) twice += row.size();
    return twice / 2;
}

AdjacencyGraph neighbors(std::span<const Point2> positions, const RangeModel& model)
{
    AdjacencyGraph graph(positions.size());
    for (RobotId a = 0; a < positions.size(); ++a)
        for (RobotId b = a + 1; b < positions.size(); ++b)
            if (model.within(positions[a], positions[b])) graph.add_edge(a, b);
    return graph;
}

std::vector<std::size_t> component_labels(const AdjacencyGraph& graph)
{
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(graph.size(), unset);
    std::vector<RobotId> stack;
    std::size_t next = 0;
    for (RobotId start = 0; start < graph.size(); ++start) {
        if (label[start] != unset) continue;
        label[start] = next;
        stack.push_back(start);
        while (!stack.empty()) {
            const RobotId v = stack.back();
            stack.pop_back();
            for (RobotId w : graph.adjacent(v)) {
                if (label[w] == unset) {
                    label[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return label;
}

bool is_connected(const AdjacencyGraph& graph)
{
    if (graph.size() <= 1) return true;
    const auto labels = component_labels(graph);
    return std::all_of(labels.begin(), labels.end(), [](std::size_t l) { return l == 0; });
}

DiameterStats diameter_stats(std::span<const Point2> positions)
{
    DiameterStats stats;
    if (positions.empty()) return stats;
    auto [min_x, max_x] = std::minmax_element(positions.begin(), positions.end(),
                                              [](Point2 a, Point2 b) { return a.x < b.x; });
    auto [min_y, max_y] = std::minmax_element(positions.begin(), positions.end(),
                                              [](Point2 a, Point2 b) { return a.y < b.y; });
    stats.extent_x = max_x->x - min_x->x;
    stats.extent_y = max_y->y - min_y->y;
    for (std::size_t a = 0; a < positions.size(); ++a)
        for (std::size_t b = a + 1; b < positions.size(); ++b)
            stats.diameter = std::max(stats.diameter, norm(positions[a] - positions[b]));
    return stats;
}

} // namespace maxline
