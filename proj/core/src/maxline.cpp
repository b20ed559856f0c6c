#include "maxline/maxline.hpp"

#include "maxline/gathering.hpp"

#include <stdexcept>

namespace maxline {

namespace {

double sign(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Local y of the point at vertical distance `gap` from n, on the observer's side.
double keep_distance_from(const Neighbor& n, double gap) { return n.offset.y - sign(n.offset.y) * gap; }

// Local y after the two robots spread symmetrically to unit distance about their midpoint.
double spread_from(const Neighbor& n) { return 0.5 * n.offset.y - 0.5 * sign(n.offset.y); }

// Closest of the candidates by vertical distance; ties go to the lowest id.
const Neighbor* closest(const Neighbor* a, const Neighbor* b)
{
    if (a == nullptr) return b;
    if (b == nullptr) return a;
    const double da = std::abs(a->offset.y);
    const double db = std::abs(b->offset.y);
    if (da != db) return da < db ? a : b;
    return a->id < b->id ? a : b;
}

struct FsyncStep {
    ComputeResult result;
    bool runs_met = false;
};

FsyncStep fsync_step(const LocalSnapshot& snap, LightState own)
{
    FsyncStep step;
    LightState& lights = step.result.lights;
    lights = own;
    Point2& target = step.result.target;
    target = {snap.x_right() - 1.0, 0.0};

    if (!snap.all_on_axis()) {
        lights.mov = false;
        lights.prev = false;
        const auto [rank, count] = snap.y_rank();
        target.y = static_cast<double>(rank - 1) / static_cast<double>(count) * snap.y_min_any() / 3.0;
    } else {
        const Neighbor* up = snap.above();
        const Neighbor* down = snap.below();
        if (up != nullptr && down != nullptr) {
            if (own.mov) {
                lights.mov = false;
                lights.prev = true;
                if (!up->lights.mov && !down->lights.mov) {
                    const Neighbor* anchor = closest(up->lights.prev ? nullptr : up, down->lights.prev ? nullptr : down);
                    if (anchor != nullptr)
                        target.y = keep_distance_from(*anchor, 1.0);
                    else
                        step.runs_met = true;
                } else {
                    const Neighbor* other = closest(up->lights.mov ? up : nullptr, down->lights.mov ? down : nullptr);
                    target.y = spread_from(*other);
                    step.runs_met = true;
                }
            } else if (up->lights.mov || down->lights.mov) {
                if (!own.prev)
                    lights.mov = true;
                else
                    lights.prev = false;
            }
        } else if (up != nullptr || down != nullptr) {
            const Neighbor& next = up != nullptr ? *up : *down;
            if (own.mov) {
                lights.mov = false;
                lights.prev = true;
                if (next.lights.mov) {
                    target.y = spread_from(next);
                    step.runs_met = true;
                } else {
                    target.y = keep_distance_from(next, 1.0);
                }
            } else if (own.counter == 2) {
                lights.mov = true;
                lights.prev = false;
            }
        }
    }
    lights.counter = increment_counter(own.counter);
    return step;
}

enum class CounterRelation { level, ahead, behind };

CounterRelation relation(int theirs, int mine)
{
    switch ((theirs - mine + 3) % 3) {
    case 0: return CounterRelation::level;
    case 1: return CounterRelation::ahead;
    default: return CounterRelation::behind;
    }
}

bool quiescent(const Neighbor& n) { return !n.lights.mov && !n.lights.prev; }

} // namespace

ComputeResult oblot_compute(const LocalSnapshot& snap)
{
    ComputeResult out{{}, snap.own_lights()};
    const double right = snap.x_right();
    const double left = snap.x_left();
    if (!nearly_zero(right)) return out;

    if (left < -kGeoTolerance) {
        const Point2 slot{left, 0.0};
        out.target = snap.occupied(slot) ? Point2{left, snap.y_min_collision() / 3.0} : slot;
        return out;
    }

    const Neighbor* up = snap.above();
    const Neighbor* down = snap.below();
    if (up == nullptr && down != nullptr) {
        const Point2 virtual_robot = (-1.0 / norm(down->offset)) * down->offset;
        out.target = midpoint(down->offset, virtual_robot);
    } else if (up != nullptr && down == nullptr) {
        const Point2 virtual_robot = (-1.0 / norm(up->offset)) * up->offset;
        out.target = midpoint(up->offset, virtual_robot);
    } else if (up != nullptr && down != nullptr) {
        out.target = midpoint(up->offset, down->offset);
    }
    return out;
}

ComputeResult lumi_fsync_compute(const LocalSnapshot& snap, LightState own) { return fsync_step(snap, own).result; }

ComputeResult lumi_fsync_stationary_compute(const LocalSnapshot& snap, LightState own)
{
    FsyncStep step = fsync_step(snap, own);
    bool sees_final = false;
    for (const auto& n : snap.neighbors()) sees_final = sees_final || n.lights.final;
    if (step.runs_met || sees_final) step.result.lights.final = true;
    if (own.final) {
        bool unit_to_right = false;
        for (const auto& n : snap.neighbors()) unit_to_right = unit_to_right || nearly_zero(n.offset.x - 1.0);
        const bool leftmost = snap.x_left() >= -kGeoTolerance;
        step.result.target.x = leftmost && unit_to_right ? 1.0 : 0.0;
    } else if (sees_final) {
        step.result.target.x = 0.0;
    }
    return step.result;
}

ComputeResult lumi_ssync_compute(const LocalSnapshot& snap, LightState own)
{
    if (!snap.all_on_axis()) {
        ComputeResult out = oblot_compute(snap);
        out.lights = own;
        out.lights.mov = false;
        out.lights.prev = false;
        return out;
    }

    ComputeResult out{{}, own};
    LightState& lights = out.lights;
    const Neighbor* up = snap.above();
    const Neighbor* down = snap.below();
    if (up == nullptr && down == nullptr) return out;

    if (up == nullptr || down == nullptr) {
        const Neighbor& next = up != nullptr ? *up : *down;
        const CounterRelation rel = relation(next.lights.counter, own.counter);
        if (own.mov) {
            lights.mov = false;
            lights.prev = true;
            lights.counter = increment_counter(own.counter);
            out.target.y = next.lights.mov ? spread_from(next) : keep_distance_from(next, 1.0);
        } else if (own.prev) {
            if (rel != CounterRelation::behind) lights.prev = false;
        } else if (rel == CounterRelation::level) {
            if (quiescent(next)) lights.mov = true;
        } else if (rel == CounterRelation::ahead) {
            lights.counter = increment_counter(own.counter);
        }
        return out;
    }

    const CounterRelation rel_up = relation(up->lights.counter, own.counter);
    const CounterRelation rel_down = relation(down->lights.counter, own.counter);
    if (own.mov) {
        lights.mov = false;
        lights.prev = true;
        lights.counter = increment_counter(own.counter);
        const Neighbor* partner = closest(up->lights.mov ? up : nullptr, down->lights.mov ? down : nullptr);
        const Neighbor* from = partner != nullptr ? partner : closest(up, down);
        const Neighbor* toward = from == up ? down : up;
        const double desired = partner != nullptr ? spread_from(*partner) : keep_distance_from(*from, 1.0);
        // Move only if the robot stays strictly between its two neighbors.
        const bool room = desired * toward->offset.y >= 0.0 &&
                          std::abs(toward->offset.y) - std::abs(desired) > kGeoTolerance;
        if (room) out.target.y = desired;
    } else if (own.prev) {
        if (rel_up != CounterRelation::behind && rel_down != CounterRelation::behind) lights.prev = false;
    } else if (rel_up == CounterRelation::ahead && rel_down == CounterRelation::ahead) {
        lights.counter = increment_counter(own.counter);
    } else if (rel_up == CounterRelation::ahead || rel_down == CounterRelation::ahead) {
        const Neighbor& from = rel_up == CounterRelation::ahead ? *up : *down;
        const Neighbor& toward = rel_up == CounterRelation::ahead ? *down : *up;
        const CounterRelation rel_toward = rel_up == CounterRelation::ahead ? rel_down : rel_up;
        if (rel_toward == CounterRelation::level) {
            if (!from.lights.prev)
                lights.counter = increment_counter(own.counter);
            else if (quiescent(toward))
                lights.mov = true;
        }
    }
    return out;
}

std::string_view to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::oblot: return "maxline-oblot";
    case Algorithm::lumi_fsync: return "maxline-lumi-fsync";
    case Algorithm::lumi_fsync_stationary: return "maxline-lumi-fsync-stationary";
    case Algorithm::lumi_ssync: return "maxline-lumi-ssync";
    case Algorithm::gathering: return "gathering";
    case Algorithm::chain_gtm: return "chain-gtm";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view text)
{
    for (Algorithm a : {Algorithm::oblot, Algorithm::lumi_fsync, Algorithm::lumi_fsync_stationary,
                        Algorithm::lumi_ssync, Algorithm::gathering, Algorithm::chain_gtm})
        if (to_string(a) == text) return a;
    return std::nullopt;
}

bool is_max_line(Algorithm algorithm)
{
    return algorithm != Algorithm::gathering && algorithm != Algorithm::chain_gtm;
}

bool uses_lights(Algorithm algorithm)
{
    return algorithm == Algorithm::lumi_fsync || algorithm == Algorithm::lumi_fsync_stationary ||
           algorithm == Algorithm::lumi_ssync;
}

bool requires_fsync(Algorithm algorithm)
{
    return algorithm == Algorithm::lumi_fsync || algorithm == Algorithm::lumi_fsync_stationary ||
           algorithm == Algorithm::gathering;
}

ComputeResult compute(Algorithm algorithm, const LocalSnapshot& snap)
{
    switch (algorithm) {
    case Algorithm::oblot: return oblot_compute(snap);
    case Algorithm::lumi_fsync: return lumi_fsync_compute(snap, snap.own_lights());
    case Algorithm::lumi_fsync_stationary: return lumi_fsync_stationary_compute(snap, snap.own_lights());
    case Algorithm::lumi_ssync: return lumi_ssync_compute(snap, snap.own_lights());
    case Algorithm::gathering: return gathering_compute(snap);
    case Algorithm::chain_gtm: break;
    }
    throw std::invalid_argument("chain-gtm has no configuration compute rule");
}

} // namespace maxline
