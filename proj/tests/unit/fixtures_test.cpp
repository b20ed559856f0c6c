#include "maxline/fixtures.hpp"
#include "support.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace maxline;

namespace {

bool has_point(const std::vector<Point2>& pts, Point2 p)
{
    for (auto q : pts)
        if (nearly_equal(p, q)) return true;
    return false;
}

double min_distance(const std::vector<Point2>& pts)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, norm(pts[i] - pts[j]));
    return best;
}

} // namespace

TEST_SUITE("fixtures")
{
    TEST_CASE("seven-robot fixture coordinates scale with c")
    {
        for (double c : {1.0, 2.0}) {
            const Fixture f = make_fixture({FixtureKind::c2, c});
            const auto pos = f.config.positions();
            const std::vector<Point2> expected{{-1, 1}, {-1, 0}, {-1, -1}, {0, 0}, {1, 1}, {1, 0}, {1, -1}};
            REQUIRE(pos.size() == expected.size());
            for (std::size_t i = 0; i < pos.size(); ++i) CHECK(nearly_equal(pos[i], c * expected[i]));
            CHECK(f.config.range.radius == c);
        }
    }

    TEST_CASE("three-robot fixture uses the default positions")
    {
        const Fixture f = make_fixture({FixtureKind::c1, 1.0});
        CHECK(f.config.positions() == std::vector<Point2>{{0, 0}, {0.5, 0.3}, {1.0, 0}});
        FixtureSpec apart{FixtureKind::c1, 1.0};
        apart.c1_positions = {{0, 0}, {3, 0}, {6, 0}};
        CHECK_THROWS(make_fixture(apart));
    }

    TEST_CASE("alpha fixture sizes")
    {
        CHECK(make_fixture({FixtureKind::alpha, 1.0, 2.0}).config.size() == 12);
        CHECK(make_fixture({FixtureKind::alpha, 1.0, 2.5}).config.size() == 17);
        CHECK_THROWS(make_fixture({FixtureKind::alpha, 1.0, 1.0}));
        CHECK_THROWS(make_fixture({FixtureKind::c2, -1.0}));
    }

    TEST_CASE("circular range pins the middle robots and hides the arm tips")
    {
        const Fixture f = make_fixture({FixtureKind::c2, 1.0}, RangeKind::circular);
        const auto report = stuck_check(f.config, f.config.range);
        for (RobotId id : {1u, 3u, 5u}) {
            CHECK(report.at(id).probes == 21 * 21);
            CHECK(report.at(id).preserving.empty());
        }
        CHECK(f.pinned == std::vector<RobotId>{1, 3, 5});
        // The bridge can reach the tips' rows, keeping the swarm connected but dropping both hubs.
        CHECK(report.at(3).connected.size() == 2);
        CHECK(has_point(report.at(3).connected, {0.0, 1.0}));
        CHECK(report.at(1).connected.empty());
        CHECK(f.tips == std::vector<RobotId>{0, 2, 4, 6});
        for (RobotId id : f.tips) CHECK(looks_like_line_end(f.config, id, f.view_range));
        CHECK_FALSE(looks_like_line_end(f.config, 1, f.view_range));
    }

    TEST_CASE("tip view matches the end of a solved three-robot line")
    {
        const Fixture f = make_fixture({FixtureKind::c2, 1.0}, RangeKind::circular);
        const auto line = make_configuration(std::vector<Point2>{{0, 0}, {0, 1}, {0, 2}}, RangeModel::circular(1.0), {});
        const auto tip = take_snapshot(f.config, f.tips[0]);
        const auto end = take_snapshot(line, 2);
        REQUIRE(tip.neighbors().size() == end.neighbors().size());
        CHECK(std::abs(tip.neighbors()[0].offset.y) == doctest::Approx(std::abs(end.neighbors()[0].offset.y)));
        CHECK(tip.neighbors()[0].offset.x == doctest::Approx(end.neighbors()[0].offset.x));
    }

    TEST_CASE("square range lets the left hub move right by up to one")
    {
        const Fixture f = make_fixture({FixtureKind::c2, 1.0}, RangeKind::square);
        const auto report = stuck_check(f.config, f.config.range);
        const auto& hub = report.at(f.left_hub);
        CHECK(rightward_freedom(hub) == doctest::Approx(1.0));
        CHECK(has_point(hub.preserving, {0.5, 0.0}));
    }

    TEST_CASE("alpha fixture is stuck under the circular range")
    {
        const Fixture f = make_fixture({FixtureKind::alpha, 1.0, 2.0}, RangeKind::circular);
        const auto report = stuck_check(f.config, f.config.range);
        for (RobotId id : f.pinned) CHECK(report.at(id).preserving.empty());
        for (RobotId id : f.tips) CHECK(looks_like_line_end(f.config, id, f.view_range));
        CHECK(f.view_range == doctest::Approx(2.0));
    }

    TEST_CASE("stuck check input validation")
    {
        const auto apart = make_configuration(std::vector<Point2>{{0, 0}, {5, 0}}, RangeModel::square(), {});
        CHECK_THROWS_AS(stuck_check(apart, apart.range), std::invalid_argument);
        const Fixture f = make_fixture({FixtureKind::c2, 1.0});
        CHECK_THROWS_AS(stuck_check(f.config, f.config.range, 1), std::invalid_argument);
    }

    TEST_CASE("random connected generator")
    {
        const auto one = random_connected(1, RangeModel::square(), 3);
        CHECK(one.positions() == std::vector<Point2>{{0, 0}});
        const auto a = random_connected(20, RangeModel::square(), 17);
        const auto b = random_connected(20, RangeModel::square(), 17);
        CHECK(a.positions() == b.positions());
        CHECK(is_connected(a));
        CHECK(min_distance(a.positions()) > 0.0);
        CHECK(random_connected(20, RangeModel::square(), 18).positions() != a.positions());
        CHECK_THROWS(random_connected(0, RangeModel::square(), 1));
    }

    TEST_CASE("property: random swarms are connected and collision free")
    {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const std::size_t n = 1 + seed % 40;
            const RangeModel model = seed % 2 == 0 ? RangeModel::square() : RangeModel::circular(0.7);
            const auto config = random_connected(n, model, seed);
            CHECK(config.size() == n);
            CHECK(is_connected(config));
            CHECK(find_collisions(config).empty());
        }
    }

    TEST_CASE("spread generator spans the requested distance")
    {
        for (double delta : {4.0, 8.0, 16.0}) {
            const auto config = spread_connected(48, delta, RangeModel::square(), 5);
            CHECK(config.size() == 48);
            CHECK(is_connected(config));
            CHECK(diameter_stats(config.positions()).diameter == doctest::Approx(delta).epsilon(1e-9));
        }
        CHECK_THROWS(spread_connected(3, 16.0, RangeModel::square(), 5));
    }

    TEST_CASE("fixture kind names")
    {
        for (FixtureKind k : {FixtureKind::c1, FixtureKind::c2, FixtureKind::alpha})
            CHECK(parse_fixture_kind(to_string(k)) == k);
        CHECK_FALSE(parse_fixture_kind("c3"));
    }
}
