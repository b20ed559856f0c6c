#include "maxline/world.hpp"

#include "maxline/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace maxline {

using nlohmann::json;

int LightState::color() const
{
    if (mov && prev) return -1;
    return counter * 3 + (mov ? 1 : prev ? 2 : 0);
}

std::vector<Point2> GlobalConfiguration::positions() const
{
    std::vector<Point2> out;
    out.reserve(robots.size());
    for (const auto& r : robots) out.push_back(r.position);
    return out;
}

GlobalConfiguration make_configuration(std::span<const Point2> positions, const RangeModel& range,
                                       std::span<const Chirality> chirality)
{
    if (!chirality.empty() && chirality.size() != positions.size())
        throw std::invalid_argument("chirality list size differs from robot count");
    GlobalConfiguration config;
    config.range = range;
    for (RobotId id = 0; id < positions.size(); ++id) {
        if (!is_finite(positions[id])) throw std::invalid_argument("non-finite robot position");
        RobotState robot;
        robot.id = id;
        robot.position = positions[id];
        robot.chirality = chirality.empty() ? Chirality::positive : chirality[id];
        config.robots.push_back(robot);
    }
    return config;
}

std::vector<Chirality> assign_chirality(std::size_t n, ChiralityMode mode, std::uint64_t seed)
{
    std::vector<Chirality> out(n, Chirality::positive);
    if (mode == ChiralityMode::positive) return out;
    Rng rng(derive_seed(seed, 11));
    for (auto& c : out) c = (rng.next() >> 63) != 0 ? Chirality::negative : Chirality::positive;
    return out;
}

bool ActivationRecord::contains(RobotId id) const
{
    return std::binary_search(active.begin(), active.end(), id);
}

LocalSnapshot::LocalSnapshot(RobotId observer, LightState own, std::vector<Neighbor> neighbors)
    : observer_(observer), own_(own), neighbors_(std::move(neighbors))
{
}

double LocalSnapshot::x_right() const
{
    double best = 0.0;
    for (const auto& n : neighbors_) best = std::max(best, n.offset.x);
    return best;
}

double LocalSnapshot::x_left() const
{
    double best = 0.0;
    for (const auto& n : neighbors_) best = std::min(best, n.offset.x);
    return best;
}

namespace {

// Picks the neighbor minimizing key among those passing filter; ties go to the lowest id.
template <typename Filter, typename Key>
const Neighbor* pick(std::span<const Neighbor> neighbors, Filter filter, Key key)
{
    const Neighbor* best = nullptr;
    for (const auto& n : neighbors) {
        if (!filter(n)) continue;
        if (best == nullptr || key(n) < key(*best) || (key(n) == key(*best) && n.id < best->id)) best = &n;
    }
    return best;
}

bool is_above(const Neighbor& n) { return n.offset.y > kGeoTolerance; }
bool is_below(const Neighbor& n) { return n.offset.y < -kGeoTolerance; }

} // namespace

const Neighbor* LocalSnapshot::above() const
{
    return pick(neighbors(), is_above, [](const Neighbor& n) { return n.offset.y; });
}

const Neighbor* LocalSnapshot::below() const
{
    return pick(neighbors(), is_below, [](const Neighbor& n) { return -n.offset.y; });
}

const Neighbor* LocalSnapshot::farthest_above() const
{
    return pick(neighbors(), is_above, [](const Neighbor& n) { return -n.offset.y; });
}

const Neighbor* LocalSnapshot::farthest_below() const
{
    return pick(neighbors(), is_below, [](const Neighbor& n) { return n.offset.y; });
}

double LocalSnapshot::y_plus() const
{
    const Neighbor* n = above();
    return n == nullptr ? 0.0 : n->offset.y;
}

double LocalSnapshot::y_minus() const
{
    const Neighbor* n = below();
    return n == nullptr ? 0.0 : n->offset.y;
}

bool LocalSnapshot::all_on_axis() const
{
    return std::all_of(neighbors_.begin(), neighbors_.end(),
                       [](const Neighbor& n) { return nearly_zero(n.offset.x); });
}

std::vector<Neighbor> LocalSnapshot::y_set() const
{
    std::vector<Neighbor> out;
    for (const auto& n : neighbors_)
        if (nearly_zero(n.offset.y)) out.push_back(n);
    return out;
}

std::pair<std::size_t, std::size_t> LocalSnapshot::y_rank() const
{
    std::size_t rank = 1;
    std::size_t count = 1;
    for (const auto& n : neighbors_) {
        if (!nearly_zero(n.offset.y)) continue;
        ++count;
        if (n.offset.x < 0.0) ++rank;
    }
    return {rank, count};
}

std::vector<Neighbor> LocalSnapshot::c_set() const
{
    const double left = x_left();
    std::vector<Neighbor> out;
    for (const auto& n : neighbors_)
        if (nearly_zero(n.offset.x) || nearly_zero(n.offset.x - left)) out.push_back(n);
    return out;
}

namespace {

double min_positive_y(std::span<const Neighbor> set)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& n : set)
        if (n.offset.y > kGeoTolerance) best = std::min(best, n.offset.y);
    return std::isinf(best) ? kDefaultYMin : best;
}

} // namespace

double LocalSnapshot::y_min_collision() const
{
    const auto set = c_set();
    return min_positive_y(set);
}

double LocalSnapshot::y_min_any() const { return min_positive_y(neighbors_); }

bool LocalSnapshot::occupied(Point2 p) const
{
    if (nearly_equal(p, Point2{})) return true;
    return std::any_of(neighbors_.begin(), neighbors_.end(),
                       [p](const Neighbor& n) { return nearly_equal(n.offset, p); });
}

LocalSnapshot take_snapshot(const GlobalConfiguration& config, RobotId robot)
{
    if (robot >= config.robots.size()) throw std::out_of_range("unknown robot id " + std::to_string(robot));
    const RobotState& self = config.robots[robot];
    const double flip = sign_of(self.chirality);
    std::vector<Neighbor> list;
    for (const auto& other : config.robots) {
        if (other.id == self.id) continue;
        if (!config.range.within(self.position, other.position)) continue;
        const Point2 d = other.position - self.position;
        list.push_back({other.id, {d.x, flip * d.y}, other.visible});
    }
    return LocalSnapshot(self.id, self.visible, std::move(list));
}

Point2 to_global(const RobotState& robot, Point2 local_target)
{
    return {robot.position.x + local_target.x, robot.position.y + sign_of(robot.chirality) * local_target.y};
}

GlobalConfiguration apply_moves(const GlobalConfiguration& config, const std::map<RobotId, Point2>& targets,
                                const ActivationRecord& active)
{
    for (const auto& [id, target] : targets) {
        if (!active.contains(id)) throw std::invalid_argument("target given for inactive robot " + std::to_string(id));
        if (!is_finite(target)) throw std::invalid_argument("non-finite target for robot " + std::to_string(id));
    }
    GlobalConfiguration next = config;
    for (RobotId id : active.active) {
        if (id >= next.robots.size()) throw std::out_of_range("unknown robot id " + std::to_string(id));
        auto it = targets.find(id);
        if (it == targets.end()) throw std::invalid_argument("missing target for active robot " + std::to_string(id));
        RobotState& robot = next.robots[id];
        robot.position = it->second;
        robot.visible = robot.pending;
    }
    ++next.round;
    return next;
}

AdjacencyGraph neighbors(const GlobalConfiguration& config)
{
    const auto pos = config.positions();
    return neighbors(pos, config.range);
}

bool is_connected(const GlobalConfiguration& config) { return is_connected(neighbors(config)); }

std::vector<std::pair<RobotId, RobotId>> find_collisions(const GlobalConfiguration& config)
{
    std::vector<std::pair<RobotId, RobotId>> out;
    const auto& robots = config.robots;
    for (std::size_t a = 0; a < robots.size(); ++a)
        for (std::size_t b = a + 1; b < robots.size(); ++b)
            if (nearly_equal(robots[a].position, robots[b].position)) out.emplace_back(robots[a].id, robots[b].id);
    return out;
}

namespace {

json lights_json(const LightState& l)
{
    return json{{"c", l.counter}, {"mov", l.mov}, {"prev", l.prev}, {"final", l.final}};
}

LightState lights_from(const json& j)
{
    LightState l;
    l.counter = j.value("c", 0);
    l.mov = j.value("mov", false);
    l.prev = j.value("prev", false);
    l.final = j.value("final", false);
    if (l.counter < 0 || l.counter > 2) throw std::invalid_argument("light counter outside 0..2");
    return l;
}

} // namespace

std::string to_json(const GlobalConfiguration& config)
{
    json robots = json::array();
    for (const auto& r : config.robots) {
        robots.push_back({{"id", r.id},
                          {"x", r.position.x},
                          {"y", r.position.y},
                          {"chirality", static_cast<int>(r.chirality)},
                          {"lights", lights_json(r.visible)}});
    }
    json j{{"round", config.round},
           {"range", {{"kind", std::string(to_string(config.range.kind))}, {"radius", config.range.radius}}},
           {"robots", robots}};
    return j.dump();
}

GlobalConfiguration configuration_from_json(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed configuration: ") + e.what());
    }
    try {
        GlobalConfiguration config;
        config.round = j.value("round", 0L);
        if (j.contains("range")) {
            const auto kind = parse_range_kind(j["range"].value("kind", std::string("square")));
            if (!kind) throw std::invalid_argument("unknown range kind");
            config.range = {*kind, j["range"].value("radius", 1.0)};
        }
        if (!(config.range.radius > 0.0)) throw std::invalid_argument("range radius must be positive");
        RobotId expected = 0;
        for (const auto& r : j.at("robots")) {
            RobotState robot;
            robot.id = r.value("id", expected);
            if (robot.id != expected) throw std::invalid_argument("robot ids must be 0..n-1 in order");
            robot.position = {r.at("x").get<double>(), r.at("y").get<double>()};
            if (!is_finite(robot.position)) throw std::invalid_argument("non-finite robot position");
            const int c = r.value("chirality", 1);
            if (c != 1 && c != -1) throw std::invalid_argument("chirality must be +1 or -1");
            robot.chirality = c == 1 ? Chirality::positive : Chirality::negative;
            if (r.contains("lights")) robot.visible = lights_from(r["lights"]);
            robot.pending = robot.visible;
            config.robots.push_back(robot);
            ++expected;
        }
        return config;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed configuration: ") + e.what());
    }
}

} // namespace maxline
