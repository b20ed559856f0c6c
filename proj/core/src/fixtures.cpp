#include "maxline/fixtures.hpp"

#include "maxline/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxline {

std::string_view to_string(FixtureKind kind)
{
    switch (kind) {
    case FixtureKind::c1: return "c1";
    case FixtureKind::c2: return "c2";
    case FixtureKind::alpha: return "alpha";
    }
    return "unknown";
}

std::optional<FixtureKind> parse_fixture_kind(std::string_view text)
{
    for (FixtureKind k : {FixtureKind::c1, FixtureKind::c2, FixtureKind::alpha})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

Fixture make_fixture(const FixtureSpec& spec, RangeKind range)
{
    if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) throw std::invalid_argument("fixture scale must be positive");
    Fixture fixture;
    const RangeModel model{range, spec.scale};
    if (spec.kind == FixtureKind::c1) {
        if (spec.c1_positions.size() != 3) throw std::invalid_argument("c1 needs exactly three robots");
        std::vector<Point2> scaled;
        for (Point2 p : spec.c1_positions) scaled.push_back(spec.scale * p);
        fixture.config = make_configuration(scaled, model);
        if (!is_connected(fixture.config)) throw std::invalid_argument("c1 positions are not connected");
        return fixture;
    }

    double arms = 1.0;
    if (spec.kind == FixtureKind::alpha) {
        if (!(spec.alpha > 1.0) || !std::isfinite(spec.alpha)) throw std::invalid_argument("alpha must exceed 1");
        arms = std::ceil(spec.alpha);
        fixture.view_range = spec.alpha * spec.scale;
    } else {
        fixture.view_range = spec.scale;
    }
    const auto a = static_cast<std::size_t>(arms);
    const double c = spec.scale;
    std::vector<Point2> positions;
    auto add = [&](Point2 p) {
        positions.push_back(p);
        return positions.size() - 1;
    };
    const double left = -arms * c;
    for (std::size_t j = 1; j <= a; ++j) {
        const RobotId id = add({left, static_cast<double>(a - j + 1) * c});
        if (j == 1) fixture.tips.push_back(id); else fixture.pinned.push_back(id);
    }
    fixture.left_hub = add({left, 0.0});
    fixture.pinned.push_back(fixture.left_hub);
    for (std::size_t j = 1; j <= a; ++j) {
        const RobotId id = add({left, -static_cast<double>(j) * c});
        if (j == a) fixture.tips.push_back(id); else fixture.pinned.push_back(id);
    }
    for (std::size_t j = 1; j <= a; ++j) fixture.pinned.push_back(add({left + static_cast<double>(j) * c, 0.0}));
    for (std::size_t j = 1; j <= a; ++j) {
        const RobotId id = add({c, static_cast<double>(a - j + 1) * c});
        if (j == 1) fixture.tips.push_back(id); else fixture.pinned.push_back(id);
    }
    fixture.pinned.push_back(add({c, 0.0}));
    for (std::size_t j = 1; j <= a; ++j) {
        const RobotId id = add({c, -static_cast<double>(j) * c});
        if (j == a) fixture.tips.push_back(id); else fixture.pinned.push_back(id);
    }
    std::sort(fixture.pinned.begin(), fixture.pinned.end());
    fixture.config = make_configuration(positions, model);
    return fixture;
}

StuckReport stuck_check(const GlobalConfiguration& config, const RangeModel& model, std::size_t probe_grid)
{
    if (probe_grid < 2) throw std::invalid_argument("probe grid needs at least two points per axis");
    auto positions = config.positions();
    if (positions.empty() || !is_connected(neighbors(positions, model)))
        throw std::invalid_argument("stuck check needs a connected configuration");
    const double step = 2.0 * model.radius / static_cast<double>(probe_grid - 1);
    StuckReport report;
    for (RobotId id = 0; id < positions.size(); ++id) {
        ProbeResult result;
        result.robot = id;
        const Point2 home = positions[id];
        std::vector<RobotId> linked;
        for (RobotId other = 0; other < positions.size(); ++other)
            if (other != id && model.within(home, positions[other])) linked.push_back(other);
        for (std::size_t ix = 0; ix < probe_grid; ++ix) {
            for (std::size_t iy = 0; iy < probe_grid; ++iy) {
                const Point2 d{-model.radius + static_cast<double>(ix) * step,
                               -model.radius + static_cast<double>(iy) * step};
                ++result.probes;
                if (nearly_equal(d, Point2{})) continue;
                positions[id] = home + d;
                if (!is_connected(neighbors(positions, model))) continue;
                result.connected.push_back(d);
                const bool keeps_links = std::all_of(linked.begin(), linked.end(), [&](RobotId other) {
                    return model.within(positions[id], positions[other]);
                });
                if (keeps_links) result.preserving.push_back(d);
            }
        }
        positions[id] = home;
        report.robots.push_back(std::move(result));
    }
    return report;
}

double rightward_freedom(const ProbeResult& probe)
{
    std::vector<double> right;
    for (Point2 d : probe.preserving)
        if (nearly_zero(d.y) && d.x > 0.0) right.push_back(d.x);
    std::sort(right.begin(), right.end());
    if (right.empty()) return 0.0;
    const double step = right.front();
    double reach = 0.0;
    for (double d : right) {
        if (!nearly_zero(d - (reach + step), 1e-9)) break;
        reach = d;
    }
    return reach;
}

namespace {

std::vector<Point2> visible_offsets(const GlobalConfiguration& config, RobotId robot, double view_range)
{
    const RangeModel view{config.range.kind, view_range};
    const Point2 self = config.robots.at(robot).position;
    std::vector<Point2> out;
    for (const auto& other : config.robots)
        if (other.id != robot && view.within(self, other.position)) out.push_back(other.position - self);
    return out;
}

bool same_offsets(std::vector<Point2> a, std::vector<Point2> b)
{
    if (a.size() != b.size()) return false;
    auto less = [](Point2 p, Point2 q) { return p.y != q.y ? p.y < q.y : p.x < q.x; };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!nearly_equal(a[i], b[i])) return false;
    return true;
}

} // namespace

bool looks_like_line_end(const GlobalConfiguration& config, RobotId robot, double view_range)
{
    const double c = config.range.radius;
    const auto seen = visible_offsets(config, robot, view_range);
    const auto visible = static_cast<std::size_t>(std::floor(view_range / c + kGeoTolerance));
    std::vector<Point2> down;
    std::vector<Point2> up;
    for (std::size_t j = 1; j <= visible; ++j) {
        down.push_back({0.0, -static_cast<double>(j) * c});
        up.push_back({0.0, static_cast<double>(j) * c});
    }
    return same_offsets(seen, down) || same_offsets(seen, up);
}

namespace {

Point2 random_offset(Rng& rng, const RangeModel& model)
{
    for (;;) {
        const Point2 d{rng.uniform(-model.radius, model.radius), rng.uniform(-model.radius, model.radius)};
        if (model.kind == RangeKind::square || norm(d) <= model.radius) return d;
    }
}

bool far_enough(std::span<const Point2> placed, Point2 p, double min_separation)
{
    return std::all_of(placed.begin(), placed.end(), [&](Point2 q) { return norm(p - q) >= min_separation; });
}

constexpr std::size_t kPlacementAttempts = 10000;

struct Box {
    Point2 low;
    Point2 high;
    bool contains(Point2 p) const { return p.x >= low.x && p.x <= high.x && p.y >= low.y && p.y <= high.y; }
};

void attach_random(std::vector<Point2>& positions, std::size_t count, const RangeModel& model, Rng& rng,
                   std::optional<Box> bounds = std::nullopt)
{
    const double min_separation = 0.01 * model.radius;
    for (std::size_t k = 0; k < count; ++k) {
        bool placed = false;
        for (std::size_t attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
            const Point2 anchor = positions[rng.below(positions.size())];
            const Point2 candidate = anchor + random_offset(rng, model);
            if ((!bounds || bounds->contains(candidate)) && far_enough(positions, candidate, min_separation)) {
                positions.push_back(candidate);
                placed = true;
            }
        }
        if (!placed) throw std::runtime_error("could not place robot " + std::to_string(positions.size()));
    }
}

} // namespace

GlobalConfiguration random_connected(std::size_t n, const RangeModel& model, std::uint64_t seed, ChiralityMode chirality)
{
    if (n == 0) throw std::invalid_argument("need at least one robot");
    if (!(model.radius > 0.0)) throw std::invalid_argument("range radius must be positive");
    Rng rng(derive_seed(seed, 1));
    std::vector<Point2> positions{{0.0, 0.0}};
    attach_random(positions, n - 1, model, rng);
    const auto signs = assign_chirality(n, chirality, seed);
    return make_configuration(positions, model, signs);
}

GlobalConfiguration spread_connected(std::size_t n, double delta, const RangeModel& model, std::uint64_t seed,
                                     ChiralityMode chirality)
{
    if (!(delta > 0.0)) throw std::invalid_argument("spread must be positive");
    const double max_step = 0.8 * model.radius;
    const auto spine = static_cast<std::size_t>(std::ceil(delta / max_step)) + 1;
    if (n < spine) throw std::invalid_argument("too few robots to span the requested spread");
    Rng rng(derive_seed(seed, 2));
    const double angle = rng.uniform(std::numbers::pi / 6.0, std::numbers::pi / 3.0);
    const Point2 direction{std::cos(angle), std::sin(angle)};
    const double step = delta / static_cast<double>(spine - 1);
    std::vector<Point2> positions;
    for (std::size_t k = 0; k < spine; ++k) positions.push_back(static_cast<double>(k) * step * direction);
    attach_random(positions, n - spine, model, rng, Box{{}, static_cast<double>(spine - 1) * step * direction});
    const auto signs = assign_chirality(n, chirality, seed);
    return make_configuration(positions, model, signs);
}

} // namespace maxline
