#include "maxline/fixtures.hpp"
#include "maxline/geometry.hpp"
#include "maxline/random.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace maxline;

namespace {

bool closure_connected(std::size_t n, const std::vector<std::pair<RobotId, RobotId>>& edges)
{
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (auto [a, b] : edges) reach[a][b] = reach[b][a] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (std::size_t j = 0; j < n; ++j)
        if (!reach[0][j]) return false;
    return true;
}

} // namespace

TEST_SUITE("geometry")
{
    TEST_CASE("range distances")
    {
        CHECK(RangeModel::square().distance({0, 0}, {0.7, -0.9}) == doctest::Approx(0.9));
        CHECK(RangeModel::circular().distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
        CHECK(RangeModel::square().within({0, 0}, {1.0, 1.0}));
        CHECK_FALSE(RangeModel::circular().within({0, 0}, {1.0, 1.0}));
    }

    TEST_CASE("boundary distance counts as adjacent")
    {
        CHECK(RangeModel::circular(1.0).within({0, 0}, {1.0, 0.0}));
        CHECK(RangeModel::circular(1.0).within({0, 0}, {1.0 + 1e-10, 0.0}));
        CHECK_FALSE(RangeModel::circular(1.0).within({0, 0}, {1.0 + 1e-6, 0.0}));
    }

    TEST_CASE("is_connected small cases")
    {
        CHECK(is_connected(AdjacencyGraph(1)));
        AdjacencyGraph g(3);
        g.add_edge(0, 1);
        CHECK_FALSE(is_connected(g));
        g.add_edge(2, 1);
        CHECK(is_connected(g));
        CHECK(g.edge_count() == 2);
        CHECK(g.has_edge(1, 0));
    }

    TEST_CASE("diameter stats")
    {
        const std::vector<Point2> one{{4, 2}};
        const auto s1 = diameter_stats(one);
        CHECK(s1.diameter == 0.0);
        CHECK(s1.extent_x == 0.0);
        CHECK(s1.extent_y == 0.0);

        const std::vector<Point2> two{{0, 0}, {3, 4}};
        const auto s2 = diameter_stats(two);
        CHECK(s2.diameter == doctest::Approx(5.0));
        CHECK(s2.extent_x == doctest::Approx(3.0));
        CHECK(s2.extent_y == doctest::Approx(4.0));
    }

    TEST_CASE("seven-robot fixture extents and connectivity")
    {
        const Fixture f = make_fixture({FixtureKind::c2, 1.0});
        const auto pos = f.config.positions();
        const auto s = diameter_stats(pos);
        CHECK(s.extent_x == doctest::Approx(2.0));
        CHECK(s.extent_y == doctest::Approx(2.0));
        CHECK(is_connected(neighbors(pos, RangeModel::circular(1.0))));
    }

    TEST_CASE("property: adjacency is symmetric")
    {
        Rng rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 2 + rng.below(20);
            const auto pts = testing::random_points(rng, n, 2.0);
            for (const RangeModel model : {RangeModel::square(rng.uniform(0.3, 1.5)), RangeModel::circular(rng.uniform(0.3, 1.5))}) {
                const AdjacencyGraph g = neighbors(pts, model);
                for (RobotId a = 0; a < n; ++a)
                    for (RobotId b = 0; b < n; ++b) {
                        CHECK(g.has_edge(a, b) == g.has_edge(b, a));
                        if (a != b) CHECK(g.has_edge(a, b) == model.within(pts[a], pts[b]));
                    }
            }
        }
    }

    TEST_CASE("property: square and circular agree on axis-aligned offsets")
    {
        Rng rng(12);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 2 + rng.below(10);
            std::vector<Point2> pts;
            const double x = rng.uniform(-1, 1);
            const double y = rng.uniform(-1, 1);
            for (std::size_t i = 0; i < n; ++i)
                pts.push_back(i % 2 == 0 ? Point2{x, y + rng.uniform(-2, 2)} : Point2{x + rng.uniform(-2, 2), y});
            // Only pairs that share a coordinate are compared.
            const auto sq = neighbors(pts, RangeModel::square());
            const auto ci = neighbors(pts, RangeModel::circular());
            for (RobotId a = 0; a < n; ++a)
                for (RobotId b = a + 1; b < n; ++b)
                    if (pts[a].x == pts[b].x || pts[a].y == pts[b].y) CHECK(sq.has_edge(a, b) == ci.has_edge(a, b));
        }
    }

    TEST_CASE("property: is_connected matches transitive closure on every graph up to 7 vertices")
    {
        for (std::size_t n = 1; n <= 7; ++n) {
            std::vector<std::pair<RobotId, RobotId>> pairs;
            for (RobotId a = 0; a < n; ++a)
                for (RobotId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
            const std::uint32_t total = 1u << pairs.size();
            std::size_t mismatches = 0;
            for (std::uint32_t mask = 0; mask < total; ++mask) {
                AdjacencyGraph g(n);
                std::vector<std::pair<RobotId, RobotId>> edges;
                for (std::size_t e = 0; e < pairs.size(); ++e)
                    if ((mask >> e) & 1u) {
                        g.add_edge(pairs[e].first, pairs[e].second);
                        edges.push_back(pairs[e]);
                    }
                if (is_connected(g) != closure_connected(n, edges)) ++mismatches;
            }
            CHECK(mismatches == 0);
        }
    }

    TEST_CASE("component labels follow first vertex order")
    {
        AdjacencyGraph g(5);
        g.add_edge(0, 3);
        g.add_edge(1, 4);
        CHECK(component_labels(g) == std::vector<std::size_t>{0, 1, 2, 0, 1});
    }
}
