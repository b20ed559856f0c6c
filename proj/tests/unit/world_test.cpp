#include "maxline/fixtures.hpp"
#include "maxline/world.hpp"
#include "support.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace maxline;

namespace {

GlobalConfiguration two_robots(Point2 a, Chirality ca, Point2 b)
{
    const std::vector<Point2> pos{a, b};
    const std::vector<Chirality> chir{ca, Chirality::positive};
    return make_configuration(pos, RangeModel::square(), chir);
}

void check_same_view(const LocalSnapshot& a, const LocalSnapshot& b)
{
    REQUIRE(a.neighbors().size() == b.neighbors().size());
    for (std::size_t i = 0; i < a.neighbors().size(); ++i) {
        CHECK(a.neighbors()[i].id == b.neighbors()[i].id);
        CHECK(nearly_equal(a.neighbors()[i].offset, b.neighbors()[i].offset, 1e-12));
    }
}

} // namespace

TEST_SUITE("world")
{
    TEST_CASE("snapshot offsets use the observer's y orientation")
    {
        const auto config = two_robots({2, 5}, Chirality::negative, {2.5, 4.5});
        const LocalSnapshot snap = take_snapshot(config, 0);
        REQUIRE(snap.neighbors().size() == 1);
        CHECK(nearly_equal(snap.neighbors()[0].offset, {0.5, 0.5}));
        CHECK(nearly_equal(to_global(config.robots[0], {0.5, 0.5}), {2.5, 4.5}));
    }

    TEST_CASE("robot with nothing above has y_plus 0")
    {
        const auto config = two_robots({0, 0}, Chirality::positive, {0, -0.5});
        const LocalSnapshot snap = take_snapshot(config, 0);
        CHECK(snap.above() == nullptr);
        CHECK(snap.y_plus() == 0.0);
        CHECK(snap.y_minus() == doctest::Approx(-0.5));
    }

    TEST_CASE("unknown observer is rejected")
    {
        const auto config = two_robots({0, 0}, Chirality::positive, {0, 1});
        CHECK_THROWS(take_snapshot(config, 7));
    }

    TEST_CASE("hub of the seven-robot fixture under the square range sees three robots at unit offsets")
    {
        const Fixture f = make_fixture({FixtureKind::c2, 1.0}, RangeKind::square);
        const LocalSnapshot snap = take_snapshot(f.config, f.left_hub);
        std::vector<Point2> offsets;
        for (const auto& n : snap.neighbors()) offsets.push_back(n.offset);
        REQUIRE(offsets.size() == 3);
        auto has = [&](Point2 p) {
            for (auto o : offsets)
                if (nearly_equal(o, p)) return true;
            return false;
        };
        CHECK(has({0, 1}));
        CHECK(has({0, -1}));
        CHECK(has({1, 0}));
    }

    TEST_CASE("snapshot accessors")
    {
        const std::vector<Point2> pos{{0, 0}, {-0.5, 0.2}, {0.3, 0.0}, {0, 0.4}, {0, -0.6}, {-0.5, -0.1}};
        const auto config = make_configuration(pos, RangeModel::square(), {});
        const LocalSnapshot snap = take_snapshot(config, 0);
        CHECK(snap.x_right() == doctest::Approx(0.3));
        CHECK(snap.x_left() == doctest::Approx(-0.5));
        CHECK(snap.above()->id == 1);
        CHECK(snap.below()->id == 5);
        CHECK(snap.farthest_below()->id == 4);
        CHECK_FALSE(snap.all_on_axis());
        CHECK(snap.y_set().size() == 1);
        CHECK(snap.y_rank() == std::pair<std::size_t, std::size_t>{1, 2});
        CHECK(snap.c_set().size() == 4);
        CHECK(snap.y_min_collision() == doctest::Approx(0.2));
        CHECK(snap.occupied({0.3, 0.0}));
        CHECK_FALSE(snap.occupied({0.3, 0.1}));
    }

    TEST_CASE("accessor ties go to the lowest id")
    {
        const std::vector<Point2> pos{{0, 0}, {-0.5, 0.3}, {-0.5, 0.3}, {0, 0.3}};
        const auto config = make_configuration(pos, RangeModel::square(), {});
        const LocalSnapshot snap = take_snapshot(config, 0);
        CHECK(snap.above()->id == 1);
    }

    TEST_CASE("y_min defaults to one tenth")
    {
        const std::vector<Point2> pos{{0, 0}, {-0.5, 0.0}};
        const LocalSnapshot snap = take_snapshot(make_configuration(pos, RangeModel::square(), {}), 0);
        CHECK(snap.y_min_collision() == doctest::Approx(kDefaultYMin));
        CHECK(snap.y_min_any() == doctest::Approx(kDefaultYMin));
    }

    TEST_CASE("apply_moves with nobody active only advances the round")
    {
        const auto config = two_robots({0, 0}, Chirality::positive, {0, 1});
        const auto next = apply_moves(config, {}, {0, {}});
        CHECK(next.round == 1);
        CHECK(next.positions() == config.positions());
    }

    TEST_CASE("apply_moves commits pending lights of active robots")
    {
        auto config = two_robots({0, 0}, Chirality::positive, {0, 1});
        config.robots[0].pending.mov = true;
        config.robots[1].pending.prev = true;
        const auto next = apply_moves(config, {{0, Point2{0, 0}}}, {0, {0}});
        CHECK(next.positions() == config.positions());
        CHECK(next.robots[0].visible.mov);
        CHECK_FALSE(next.robots[1].visible.prev);
    }

    TEST_CASE("apply_moves rejects inconsistent targets")
    {
        const auto config = two_robots({0, 0}, Chirality::positive, {0, 1});
        CHECK_THROWS_AS(apply_moves(config, {{1, Point2{0, 0}}}, {0, {0}}), std::invalid_argument);
        CHECK_THROWS_AS(apply_moves(config, {}, {0, {0}}), std::invalid_argument);
    }

    TEST_CASE("three collinear robots stretch by a quarter at each end in one synchronous round")
    {
        const std::vector<Point2> pos{{0, 0}, {0, 0.5}, {0, 1}};
        const auto config = make_configuration(pos, RangeModel::square(), assign_chirality(3, ChiralityMode::random, 5));
        const auto next = testing::step(Algorithm::oblot, config, testing::all_ids(3));
        CHECK(next.robots[0].position.y == doctest::Approx(-0.25).epsilon(1e-12));
        CHECK(next.robots[1].position.y == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(next.robots[2].position.y == doctest::Approx(1.25).epsilon(1e-12));
    }

    TEST_CASE("collisions are reported as id pairs")
    {
        const std::vector<Point2> pos{{0, 0}, {1, 0}, {0, 0}};
        const auto config = make_configuration(pos, RangeModel::square(), {});
        CHECK(find_collisions(config) == std::vector<std::pair<RobotId, RobotId>>{{0, 2}});
    }

    TEST_CASE("json round trip")
    {
        auto config = make_configuration(std::vector<Point2>{{0.125, -3}, {1, 2}}, RangeModel::circular(1.5),
                                         std::vector<Chirality>{Chirality::negative, Chirality::positive});
        config.round = 4;
        config.robots[1].visible = {2, false, true, true};
        const auto back = configuration_from_json(to_json(config));
        CHECK(back.round == 4);
        CHECK(back.range == config.range);
        CHECK(back.positions() == config.positions());
        CHECK(back.robots[0].chirality == Chirality::negative);
        CHECK(back.robots[1].visible == config.robots[1].visible);
        CHECK_THROWS(configuration_from_json("{\"robots\": 3}"));
    }

    TEST_CASE("light colors")
    {
        CHECK(LightState{}.color() == 0);
        CHECK(LightState{0, true, true}.color() == -1);
        std::vector<int> seen;
        for (int c = 0; c < 3; ++c)
            for (int m = 0; m < 3; ++m) {
                const LightState s{c, m == 1, m == 2};
                seen.push_back(s.color());
            }
        std::sort(seen.begin(), seen.end());
        CHECK(std::unique(seen.begin(), seen.end()) == seen.end());
        CHECK(seen.front() == 0);
        CHECK(seen.back() == 8);
    }

    TEST_CASE("property: snapshots are invariant under translation and under reflection with flipped chirality")
    {
        Rng rng(21);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 2 + rng.below(12);
            const auto pts = testing::random_points(rng, n, 1.2);
            const auto chir = assign_chirality(n, ChiralityMode::random, rng.next());
            const auto base = make_configuration(pts, RangeModel::square(), chir);

            const Point2 shift{rng.uniform(-50, 50), rng.uniform(-50, 50)};
            std::vector<Point2> moved;
            std::vector<Point2> mirrored;
            std::vector<Chirality> flipped;
            for (std::size_t i = 0; i < n; ++i) {
                moved.push_back(pts[i] + shift);
                mirrored.push_back({pts[i].x, -pts[i].y});
                flipped.push_back(chir[i] == Chirality::positive ? Chirality::negative : Chirality::positive);
            }
            const auto translated = make_configuration(moved, RangeModel::square(), chir);
            const auto reflected = make_configuration(mirrored, RangeModel::square(), flipped);
            for (RobotId id = 0; id < n; ++id) {
                check_same_view(take_snapshot(base, id), take_snapshot(translated, id));
                check_same_view(take_snapshot(base, id), take_snapshot(reflected, id));
            }
        }
    }

    TEST_CASE("property: light changes become visible one round later")
    {
        Rng rng(22);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 3 + rng.below(5);
            const auto pts = testing::random_line(rng, n, 0.0, 0.0, 0.3, 0.9);
            GlobalConfiguration state = make_configuration(pts, RangeModel::square(), {});
            for (int round = 0; round < 6; ++round) {
                std::vector<RobotId> active;
                for (RobotId id = 0; id < n; ++id)
                    if (rng.bernoulli(0.5)) active.push_back(id);
                GlobalConfiguration staged = state;
                std::map<RobotId, Point2> targets;
                for (RobotId id : active) {
                    staged.robots[id].pending = {static_cast<int>(rng.below(3)), rng.bernoulli(0.5), false, rng.bernoulli(0.5)};
                    targets[id] = staged.robots[id].position;
                }
                // Snapshots during the round still show the old lights.
                for (RobotId id = 0; id < n; ++id) {
                    const LocalSnapshot snap = take_snapshot(staged, id);
                    for (const auto& nb : snap.neighbors()) CHECK(nb.lights == state.robots[nb.id].visible);
                }
                const auto next = apply_moves(staged, targets, {state.round, active});
                for (RobotId id = 0; id < n; ++id) {
                    const bool acted = std::find(active.begin(), active.end(), id) != active.end();
                    CHECK(next.robots[id].visible == (acted ? staged.robots[id].pending : state.robots[id].visible));
                    CHECK(next.robots[id].id == id);
                }
                CHECK(next.size() == n);
                state = next;
            }
        }
    }
}
