#include "maxline/chain.hpp"

#include "maxline/random.hpp"

#include <json.hpp>

#include <numbers>
#include <stdexcept>

namespace maxline {

Point2 ChainFrame::to_local(Point2 g) const
{
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    Point2 p{c * g.x + s * g.y, -s * g.x + c * g.y};
    if (reflected) p.y = -p.y;
    return p;
}

Point2 ChainFrame::to_global(Point2 l) const
{
    if (reflected) l.y = -l.y;
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    return {c * l.x - s * l.y, s * l.x + c * l.y};
}

ChainConfiguration make_chain(std::vector<Point2> positions, std::uint64_t frame_seed)
{
    if (positions.size() < 2) throw std::invalid_argument("a chain needs its two outer robots");
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!is_finite(positions[i])) throw std::invalid_argument("non-finite chain position");
        if (i > 0 && norm(positions[i] - positions[i - 1]) > 1.0 + kGeoTolerance)
            throw std::invalid_argument("chain link " + std::to_string(i) + " longer than 1");
    }
    ChainConfiguration chain;
    chain.positions = std::move(positions);
    Rng rng(derive_seed(frame_seed, 7));
    for (std::size_t i = 0; i < chain.positions.size(); ++i)
        chain.frames.push_back({rng.uniform(0.0, 2.0 * std::numbers::pi), rng.bernoulli(0.5)});
    return chain;
}

ChainConfiguration random_chain(std::size_t n, std::uint64_t seed)
{
    Rng rng(derive_seed(seed, 5));
    std::vector<Point2> positions{{0.0, 0.0}};
    for (std::size_t i = 0; i <= n; ++i) {
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double length = rng.uniform(0.05, 1.0);
        positions.push_back(positions.back() + Point2{length * std::cos(angle), length * std::sin(angle)});
    }
    return make_chain(std::move(positions), seed);
}

namespace {

void require_inner(const ChainConfiguration& chain, std::size_t robot)
{
    if (robot == 0 || robot + 1 >= chain.positions.size())
        throw std::invalid_argument("robot " + std::to_string(robot) + " is not an inner chain robot");
}

} // namespace

std::pair<Point2, Point2> chain_snapshot(const ChainConfiguration& chain, std::size_t robot)
{
    require_inner(chain, robot);
    const Point2 self = chain.positions[robot];
    const ChainFrame& frame = chain.frames[robot];
    return {frame.to_local(chain.positions[robot - 1] - self), frame.to_local(chain.positions[robot + 1] - self)};
}

Point2 gtm_target(const ChainConfiguration& chain, std::size_t robot)
{
    const auto [before, after] = chain_snapshot(chain, robot);
    return chain.positions[robot] + chain.frames[robot].to_global(midpoint(before, after));
}

ChainConfiguration gtm_step(const ChainConfiguration& chain, std::span<const std::size_t> active)
{
    ChainConfiguration next = chain;
    for (std::size_t robot : active) next.positions[robot] = gtm_target(chain, robot);
    ++next.round;
    return next;
}

ChainMetrics chain_metrics(const ChainConfiguration& chain)
{
    ChainMetrics m;
    const auto& p = chain.positions;
    for (std::size_t i = 1; i < p.size(); ++i) {
        m.links.push_back(p[i] - p[i - 1]);
        m.length += norm(m.links.back());
    }
    m.span = norm(p.back() - p.front());
    m.ideal_link = (1.0 / static_cast<double>(p.size() - 1)) * (p.back() - p.front());
    return m;
}

bool eps_reached(const ChainConfiguration& chain, double eps)
{
    const ChainMetrics m = chain_metrics(chain);
    return std::all_of(m.links.begin(), m.links.end(),
                       [&](Point2 link) { return norm(link - m.ideal_link) <= eps; });
}

double phi2(const ChainConfiguration& chain, Axis axis)
{
    const ChainMetrics m = chain_metrics(chain);
    const double mean = axis == Axis::x ? m.ideal_link.x : m.ideal_link.y;
    double sum = 0.0;
    for (Point2 link : m.links) {
        const double d = (axis == Axis::x ? link.x : link.y) - mean;
        sum += d * d;
    }
    return sum;
}

double max_link(const ChainConfiguration& chain)
{
    double best = 0.0;
    for (Point2 link : chain_metrics(chain).links) best = std::max(best, norm(link));
    return best;
}

std::string chain_to_json(const ChainConfiguration& chain)
{
    nlohmann::json positions = nlohmann::json::array();
    for (Point2 p : chain.positions) positions.push_back({p.x, p.y});
    nlohmann::json frames = nlohmann::json::array();
    for (const auto& f : chain.frames) frames.push_back({{"rotation", f.rotation}, {"reflected", f.reflected}});
    return nlohmann::json{{"round", chain.round}, {"positions", positions}, {"frames", frames}}.dump();
}

ChainConfiguration chain_from_json(std::string_view text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        std::vector<Point2> positions;
        for (const auto& p : j.at("positions")) positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        ChainConfiguration chain = make_chain(std::move(positions));
        chain.round = j.value("round", 0L);
        if (j.contains("frames")) {
            const auto& frames = j["frames"];
            if (frames.size() != chain.positions.size())
                throw std::invalid_argument("chain frame count differs from robot count");
            for (std::size_t i = 0; i < frames.size(); ++i)
                chain.frames[i] = {frames[i].at("rotation").get<double>(), frames[i].at("reflected").get<bool>()};
        }
        return chain;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed chain: ") + e.what());
    }
}

} // namespace maxline
