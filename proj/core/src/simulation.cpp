#include "maxline/simulation.hpp"

#include "maxline/gathering.hpp"

#include <json.hpp>

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace maxline {

using nlohmann::json;

namespace {

std::size_t ceil_size(double v) { return static_cast<std::size_t>(std::ceil(std::max(v, 1.0))); }

bool is_chain(const RunConfig& config) { return config.algorithm == Algorithm::chain_gtm; }

} // namespace

std::size_t default_max_epochs(const RunConfig& config)
{
    const double eps = config.epsilon;
    if (is_chain(config)) {
        const double m = static_cast<double>(config.chain.inner() + 1);
        return ceil_size(20.0 * m * m * std::log(m / eps));
    }
    const double n = static_cast<double>(config.initial.size());
    switch (config.algorithm) {
    case Algorithm::oblot: return ceil_size(20.0 * n * n * std::log(n / eps));
    case Algorithm::lumi_fsync:
    case Algorithm::lumi_fsync_stationary: return ceil_size(20.0 * n);
    case Algorithm::lumi_ssync: return ceil_size(40.0 * n * n);
    case Algorithm::gathering: {
        const auto stats = diameter_stats(config.initial.positions());
        return ceil_size(20.0 * (stats.extent_x + stats.extent_y + n));
    }
    case Algorithm::chain_gtm: break;
    }
    return 1;
}

std::size_t active_robot_count(const RunConfig& config)
{
    return is_chain(config) ? config.chain.inner() : config.initial.size();
}

void validate(const RunConfig& config)
{
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    if (is_chain(config)) {
        if (config.chain.positions.size() < 3) throw std::invalid_argument("chain needs at least one inner robot");
        if (config.chain.frames.size() != config.chain.positions.size())
            throw std::invalid_argument("chain frame count differs from robot count");
        return;
    }
    const auto& init = config.initial;
    if (init.size() == 0) throw std::invalid_argument("configuration has no robots");
    if (!is_connected(init)) throw std::invalid_argument("initial configuration is not connected");
    if (config.algorithm != Algorithm::gathering && !find_collisions(init).empty())
        throw std::invalid_argument("initial positions are not pairwise distinct");
    if (init.range.kind != RangeKind::square) throw std::invalid_argument("swarm algorithms need the square range");
}

std::string_view to_string(RunStatus status)
{
    switch (status) {
    case RunStatus::converged: return "converged";
    case RunStatus::budget_exhausted: return "budget_exhausted";
    case RunStatus::invariant_violation: return "invariant_violation";
    }
    return "unknown";
}

int exit_code(RunStatus status)
{
    switch (status) {
    case RunStatus::converged: return 0;
    case RunStatus::budget_exhausted: return 2;
    case RunStatus::invariant_violation: return 3;
    }
    return 1;
}

namespace {

bool goal_reached(const RunConfig& config, const GlobalConfiguration& state)
{
    switch (config.algorithm) {
    case Algorithm::oblot: return line_metrics(state, config.epsilon).approx;
    case Algorithm::lumi_fsync:
    case Algorithm::lumi_ssync: return is_exact_line(state);
    case Algorithm::lumi_fsync_stationary:
        return is_exact_line(state) &&
               (state.size() == 1 ||
                std::all_of(state.robots.begin(), state.robots.end(), [](const RobotState& r) { return r.visible.final; }));
    case Algorithm::gathering: return is_gathered(state.positions());
    case Algorithm::chain_gtm: break;
    }
    return false;
}

std::string name_pair(std::pair<RobotId, RobotId> p)
{
    return std::to_string(p.first) + " and " + std::to_string(p.second);
}

// First guard failure of a swarm state, or an empty string.
std::string swarm_guard(Algorithm algorithm, const GlobalConfiguration& state,
                        const std::vector<std::pair<RobotId, RobotId>>& collisions)
{
    const auto graph = neighbors(state);
    if (!is_connected(graph)) {
        const auto labels = component_labels(graph);
        std::string cut;
        for (RobotId id = 0; id < labels.size(); ++id)
            if (labels[id] != 0) cut += (cut.empty() ? "" : ",") + std::to_string(id);
        return "configuration disconnected; robots " + cut + " split off";
    }
    if (is_max_line(algorithm) && !collisions.empty()) return "collision of robots " + name_pair(collisions.front());
    for (const auto& r : state.robots)
        if (r.visible.mov && r.visible.prev) return "robot " + std::to_string(r.id) + " shows mov and prev";
    return {};
}

RoundRecord swarm_record(const RunConfig& config, const GlobalConfiguration& state, const ActivationRecord& act,
                         std::size_t epoch)
{
    RoundRecord rec;
    rec.round = act.round;
    rec.epoch = epoch;
    rec.active = act.active;
    rec.positions = state.positions();
    if (uses_lights(config.algorithm))
        for (const auto& r : state.robots) rec.lights.push_back(r.visible);
    rec.collisions = find_collisions(state);
    const auto line = line_metrics(state, config.epsilon);
    rec.is_line = line.is_line;
    rec.line_length = line.length;
    if (line.is_line && is_max_line(config.algorithm)) rec.phi = phi(gap_vector(state, line_order(state)));
    return rec;
}

void run_swarm(Trace& trace)
{
    const RunConfig& config = trace.config;
    GlobalConfiguration state = config.initial;
    state.round = 0;
    for (auto& r : state.robots) r.pending = r.visible;
    Scheduler scheduler(config.scheduler, state.size());
    EpochLedger ledger(state.size());
    std::set<std::tuple<int, bool, bool, bool>> colors;
    auto note_colors = [&](const GlobalConfiguration& s) {
        for (const auto& r : s.robots) colors.insert({r.visible.counter, r.visible.mov, r.visible.prev, r.visible.final});
    };
    note_colors(state);
    RunSummary& summary = trace.summary;

    for (;;) {
        if (goal_reached(config, state)) {
            summary.status = RunStatus::converged;
            break;
        }
        if (ledger.completed_epochs() >= config.max_epochs) {
            summary.status = RunStatus::budget_exhausted;
            break;
        }
        const ActivationRecord act = scheduler.next();
        const std::size_t epoch = ledger.current_epoch();
        GlobalConfiguration staged = state;
        std::map<RobotId, Point2> targets;
        for (RobotId id : act.active) {
            const ComputeResult result = compute(config.algorithm, take_snapshot(state, id));
            staged.robots[id].pending = result.lights;
            targets[id] = to_global(state.robots[id], result.target);
        }
        state = apply_moves(staged, targets, act);
        ledger.update(act);
        note_colors(state);
        RoundRecord rec = swarm_record(config, state, act, epoch);
        const std::string failure = swarm_guard(config.algorithm, state, rec.collisions);
        trace.rounds.push_back(std::move(rec));
        if (!failure.empty()) {
            summary.status = RunStatus::invariant_violation;
            summary.diagnostic = "round " + std::to_string(act.round) + ": " + failure;
            break;
        }
    }
    summary.rounds = state.round;
    summary.epochs = ledger.completed_epochs();
    summary.distinct_colors = uses_lights(config.algorithm) ? colors.size() : 0;
}

RoundRecord chain_record(const ChainConfiguration& chain, const ActivationRecord& act, std::size_t epoch)
{
    RoundRecord rec;
    rec.round = act.round;
    rec.epoch = epoch;
    rec.active = act.active;
    rec.positions = chain.positions;
    rec.phi2 = std::pair{phi2(chain, Axis::x), phi2(chain, Axis::y)};
    return rec;
}

void run_chain(Trace& trace)
{
    const RunConfig& config = trace.config;
    ChainConfiguration chain = config.chain;
    chain.round = 0;
    const std::size_t inner = chain.inner();
    Scheduler scheduler(config.scheduler, inner);
    EpochLedger ledger(inner);
    RunSummary& summary = trace.summary;
    for (;;) {
        if (eps_reached(chain, config.epsilon)) {
            summary.status = RunStatus::converged;
            break;
        }
        if (ledger.completed_epochs() >= config.max_epochs) {
            summary.status = RunStatus::budget_exhausted;
            break;
        }
        const ActivationRecord act = scheduler.next();
        const std::size_t epoch = ledger.current_epoch();
        std::vector<std::size_t> movers;
        for (RobotId id : act.active) movers.push_back(id + 1);
        chain = gtm_step(chain, movers);
        ledger.update(act);
        trace.rounds.push_back(chain_record(chain, act, epoch));
        if (max_link(chain) > 1.0 + kGeoTolerance) {
            summary.status = RunStatus::invariant_violation;
            summary.diagnostic = "round " + std::to_string(act.round) + ": chain link longer than 1";
            break;
        }
    }
    summary.rounds = chain.round;
    summary.epochs = ledger.completed_epochs();
}

} // namespace

Trace simulate(const RunConfig& config)
{
    validate(config);
    Trace trace;
    trace.config = config;
    if (trace.config.max_epochs == 0) trace.config.max_epochs = default_max_epochs(config);
    if (is_chain(config))
        run_chain(trace);
    else
        run_swarm(trace);
    return trace;
}

std::vector<Point2> final_positions(const Trace& trace)
{
    if (!trace.rounds.empty()) return trace.rounds.back().positions;
    return is_chain(trace.config) ? trace.config.chain.positions : trace.config.initial.positions();
}

namespace {

json header_json(const RunConfig& config)
{
    json j{{"type", "header"},
           {"version", kTraceVersion},
           {"algorithm", std::string(to_string(config.algorithm))},
           {"scheduler", describe(config.scheduler)},
           {"fairness_bound", config.scheduler.fairness_bound},
           {"seed", config.scheduler.seed},
           {"epsilon", config.epsilon},
           {"max_epochs", config.max_epochs},
           {"source", config.source}};
    if (config.scheduler.kind == SchedulerKind::ssync_adversary) j["script"] = config.scheduler.script;
    j["initial"] = json::parse(is_chain(config) ? chain_to_json(config.chain) : to_json(config.initial));
    return j;
}

json round_json(const RoundRecord& rec)
{
    json positions = json::array();
    for (Point2 p : rec.positions) positions.push_back({p.x, p.y});
    json j{{"type", "round"}, {"round", rec.round}, {"epoch", rec.epoch}, {"active", rec.active}, {"positions", positions}};
    if (!rec.lights.empty()) {
        json lights = json::array();
        for (const auto& l : rec.lights) lights.push_back({l.counter, l.mov, l.prev, l.final});
        j["lights"] = lights;
    }
    j["collisions"] = rec.collisions;
    if (rec.phi) j["phi"] = *rec.phi;
    if (rec.phi2) j["phi2"] = {rec.phi2->first, rec.phi2->second};
    j["line"] = {{"is_line", rec.is_line}, {"length", rec.line_length}};
    return j;
}

json result_json(const RunSummary& s)
{
    return {{"type", "result"},
            {"status", std::string(to_string(s.status))},
            {"rounds", s.rounds},
            {"epochs", s.epochs},
            {"distinct_colors", s.distinct_colors},
            {"diagnostic", s.diagnostic}};
}

RunStatus parse_status(const std::string& text)
{
    for (RunStatus s : {RunStatus::converged, RunStatus::budget_exhausted, RunStatus::invariant_violation})
        if (to_string(s) == text) return s;
    throw std::invalid_argument("unknown run status '" + text + "'");
}

RunConfig config_from_header(const json& h)
{
    if (h.at("version").get<int>() != kTraceVersion) throw std::invalid_argument("unsupported trace version");
    RunConfig config;
    const auto algorithm = parse_algorithm(h.at("algorithm").get<std::string>());
    if (!algorithm) throw std::invalid_argument("unknown algorithm in trace header");
    config.algorithm = *algorithm;
    const auto scheduler = h.at("scheduler").get<std::string>();
    if (scheduler == "ssync-adversary")
        config.scheduler = SchedulerSpec::adversary(h.at("script").get<ActivationScript>());
    else
        config.scheduler = parse_scheduler(scheduler);
    config.scheduler.fairness_bound = h.at("fairness_bound").get<std::size_t>();
    config.scheduler.seed = h.at("seed").get<std::uint64_t>();
    config.epsilon = h.at("epsilon").get<double>();
    config.max_epochs = h.at("max_epochs").get<std::size_t>();
    config.source = h.value("source", std::string("inline"));
    if (is_chain(config))
        config.chain = chain_from_json(h.at("initial").dump());
    else
        config.initial = configuration_from_json(h.at("initial").dump());
    return config;
}

RoundRecord round_from_json(const json& j)
{
    RoundRecord rec;
    rec.round = j.at("round").get<long>();
    rec.epoch = j.at("epoch").get<std::size_t>();
    rec.active = j.at("active").get<std::vector<RobotId>>();
    for (const auto& p : j.at("positions")) rec.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (j.contains("lights"))
        for (const auto& l : j["lights"])
            rec.lights.push_back({l.at(0).get<int>(), l.at(1).get<bool>(), l.at(2).get<bool>(), l.at(3).get<bool>()});
    rec.collisions = j.at("collisions").get<std::vector<std::pair<RobotId, RobotId>>>();
    if (j.contains("phi")) rec.phi = j["phi"].get<double>();
    if (j.contains("phi2")) rec.phi2 = std::pair{j["phi2"].at(0).get<double>(), j["phi2"].at(1).get<double>()};
    rec.is_line = j.at("line").at("is_line").get<bool>();
    rec.line_length = j.at("line").at("length").get<double>();
    return rec;
}

} // namespace

void write_trace(const Trace& trace, std::ostream& out)
{
    out << header_json(trace.config).dump() << '\n';
    for (const auto& rec : trace.rounds) out << round_json(rec).dump() << '\n';
    out << result_json(trace.summary).dump() << '\n';
}

std::string trace_to_string(const Trace& trace)
{
    std::ostringstream out;
    write_trace(trace, out);
    return out.str();
}

Trace read_trace(std::istream& in)
{
    Trace trace;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    bool have_result = false;
    try {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            if (have_result) throw std::invalid_argument("record after the result line");
            const json j = json::parse(line);
            const auto type = j.at("type").get<std::string>();
            if (!have_header) {
                if (type != "header") throw std::invalid_argument("first line is not a header");
                trace.config = config_from_header(j);
                have_header = true;
            } else if (type == "round") {
                RoundRecord rec = round_from_json(j);
                if (!trace.rounds.empty() && rec.round <= trace.rounds.back().round)
                    throw std::invalid_argument("rounds not strictly increasing");
                trace.rounds.push_back(std::move(rec));
            } else if (type == "result") {
                trace.summary.status = parse_status(j.at("status").get<std::string>());
                trace.summary.rounds = j.at("rounds").get<long>();
                trace.summary.epochs = j.at("epochs").get<std::size_t>();
                trace.summary.distinct_colors = j.at("distinct_colors").get<std::size_t>();
                trace.summary.diagnostic = j.at("diagnostic").get<std::string>();
                have_result = true;
            } else {
                throw std::invalid_argument("unknown record type '" + type + "'");
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed trace line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("malformed trace line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!have_header) throw std::invalid_argument("trace has no header");
    if (!have_result) throw std::invalid_argument("trace has no result line");
    return trace;
}

std::string_view to_string(Check check)
{
    switch (check) {
    case Check::replay: return "replay";
    case Check::safety: return "safety";
    case Check::drop_terms: return "drop-terms";
    case Check::epoch_bounds: return "epoch-bounds";
    case Check::chain_potential: return "chain-potential";
    }
    return "unknown";
}

std::optional<Check> parse_check(std::string_view text)
{
    for (Check c : all_checks())
        if (to_string(c) == text) return c;
    return std::nullopt;
}

std::vector<Check> all_checks() { return {Check::replay, Check::safety, Check::drop_terms, Check::epoch_bounds, Check::chain_potential}; }

namespace {

// States at the start of every round plus the final state.
std::vector<std::vector<Point2>> states_of(const Trace& trace)
{
    std::vector<std::vector<Point2>> states;
    states.push_back(is_chain(trace.config) ? trace.config.chain.positions : trace.config.initial.positions());
    for (const auto& rec : trace.rounds) states.push_back(rec.positions);
    return states;
}

std::vector<long> epoch_starts(const Trace& trace)
{
    EpochLedger ledger(std::max<std::size_t>(active_robot_count(trace.config), 1));
    for (const auto& rec : trace.rounds) {
        ActivationRecord act{rec.round, rec.active};
        ledger.update(act);
    }
    const auto starts = ledger.epoch_starts();
    return {starts.begin(), starts.end()};
}

GlobalConfiguration at_positions(const GlobalConfiguration& base, const std::vector<Point2>& positions)
{
    GlobalConfiguration config = base;
    for (std::size_t i = 0; i < positions.size(); ++i) config.robots[i].position = positions[i];
    return config;
}

void check_replay(const Trace& trace, VerifyReport& report)
{
    const std::string expected = trace_to_string(simulate(trace.config));
    const std::string actual = trace_to_string(trace);
    if (expected == actual) return;
    std::istringstream a(expected);
    std::istringstream b(actual);
    std::string la;
    std::string lb;
    std::size_t line = 0;
    for (;;) {
        ++line;
        const bool more_a = static_cast<bool>(std::getline(a, la));
        const bool more_b = static_cast<bool>(std::getline(b, lb));
        if (!more_a && !more_b) break;
        if (la != lb || more_a != more_b) {
            report.violations.push_back("replay mismatch at trace line " + std::to_string(line));
            return;
        }
    }
}

void check_safety(const Trace& trace, VerifyReport& report)
{
    const auto states = states_of(trace);
    const auto& config = trace.config;
    for (std::size_t s = 1; s < states.size(); ++s) {
        const long round = trace.rounds[s - 1].round;
        if (is_chain(config)) {
            for (std::size_t i = 1; i < states[s].size(); ++i)
                if (norm(states[s][i] - states[s][i - 1]) > 1.0 + kGeoTolerance)
                    report.violations.push_back("round " + std::to_string(round) + ": chain link " + std::to_string(i) +
                                                " longer than 1");
            continue;
        }
        GlobalConfiguration state = at_positions(config.initial, states[s]);
        const auto& lights = trace.rounds[s - 1].lights;
        for (std::size_t i = 0; i < lights.size() && i < state.size(); ++i) state.robots[i].visible = lights[i];
        const std::string failure = swarm_guard(config.algorithm, state, find_collisions(state));
        if (!failure.empty()) report.violations.push_back("round " + std::to_string(round) + ": " + failure);
    }
}

// Index of the first state at which the robots form a vertical line, and the order fixed there.
std::optional<std::pair<std::size_t, std::vector<RobotId>>> line_entry(const Trace& trace,
                                                                      const std::vector<std::vector<Point2>>& states)
{
    for (std::size_t s = 0; s < states.size(); ++s) {
        const auto state = at_positions(trace.config.initial, states[s]);
        if (line_metrics(state, trace.config.epsilon).is_line) return std::pair{s, line_order(state)};
    }
    return std::nullopt;
}

std::vector<double> ys_in(const std::vector<Point2>& positions, const std::vector<RobotId>& order)
{
    std::vector<double> ys;
    for (RobotId id : order) ys.push_back(positions[id].y);
    return ys;
}

bool strictly_increasing(const std::vector<double>& ys)
{
    for (std::size_t i = 1; i < ys.size(); ++i)
        if (!(ys[i] > ys[i - 1])) return false;
    return true;
}

void check_drop_terms(const Trace& trace, VerifyReport& report)
{
    if (trace.config.algorithm != Algorithm::oblot) return;
    const auto states = states_of(trace);
    const auto entry = line_entry(trace, states);
    if (!entry) return;
    const auto& [first, order] = *entry;
    const double unit = trace.config.initial.range.radius;
    report.min_residual = std::numeric_limits<double>::infinity();
    for (std::size_t s = first; s + 1 < states.size(); ++s) {
        const auto& rec = trace.rounds[s];
        const auto before_ys = ys_in(states[s], order);
        const auto after_ys = ys_in(states[s + 1], order);
        if (!strictly_increasing(after_ys)) {
            report.violations.push_back("round " + std::to_string(rec.round) + ": line order changed");
            return;
        }
        const auto flags = activation_flags(ActivationRecord{rec.round, rec.active}, order);
        try {
            const DropCheck check = phi_drop_bound_check(gap_vector(before_ys, unit), flags, gap_vector(after_ys, unit));
            ++report.drop_term_rounds;
            report.min_residual = std::min(report.min_residual, check.residual);
            if (check.residual < -1e-9)
                report.violations.push_back("round " + std::to_string(rec.round) + ": drop below the term bound");
            if (!check.endpoint_active) {
                report.max_interior_residual = std::max(report.max_interior_residual, std::abs(check.residual));
                if (std::abs(check.residual) > 1e-9)
                    report.violations.push_back("round " + std::to_string(rec.round) +
                                                ": interior-only round is not an identity");
            }
        } catch (const std::invalid_argument& e) {
            report.violations.push_back("round " + std::to_string(rec.round) + ": " + e.what());
        }
    }
    if (report.drop_term_rounds == 0) report.min_residual = 0.0;
}

void check_epoch_bounds(const Trace& trace, VerifyReport& report)
{
    if (trace.config.algorithm != Algorithm::oblot) return;
    const auto states = states_of(trace);
    const auto entry = line_entry(trace, states);
    if (!entry) return;
    const auto& [first, order] = *entry;
    std::vector<EpochSample> samples;
    const auto starts = epoch_starts(trace);
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const auto s = static_cast<std::size_t>(starts[k]);
        if (s >= first && s < states.size()) samples.push_back({k, ys_in(states[s], order)});
    }
    const EpochReport epochs = epoch_bound_checks(samples, trace.config.epsilon, trace.config.initial.range.radius);
    report.min_epoch_ratio = epochs.min_ratio;
    report.ratio_floor = epochs.ratio_floor;
    report.sorted_bound_violations = epochs.sorted_bound_violations;
    report.ratio_violations = epochs.ratio_violations;
    report.first_approx_epoch = epochs.first_approx_epoch;
    for (const auto& e : epochs.epochs) {
        report.series.epoch.push_back(e.epoch);
        report.series.potential.push_back(e.phi_start);
        report.series.bound.push_back(e.sorted_bound);
        report.series.ratio.push_back(e.ratio);
        if (!e.sorted_bound_ok)
            report.violations.push_back("epoch " + std::to_string(e.epoch) + ": drop below the sorted-gap bound");
        if (!e.ratio_ok)
            report.violations.push_back("epoch " + std::to_string(e.epoch) + ": relative drop below 1/(8n^2)");
    }
}

void check_chain_potential(const Trace& trace, VerifyReport& report)
{
    if (!is_chain(trace.config)) return;
    const auto states = states_of(trace);
    const auto starts = epoch_starts(trace);
    std::vector<double> px;
    std::vector<double> py;
    ChainConfiguration chain = trace.config.chain;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const auto s = static_cast<std::size_t>(starts[k]);
        if (s >= states.size()) break;
        chain.positions = states[s];
        px.push_back(phi2(chain, Axis::x));
        py.push_back(phi2(chain, Axis::y));
        report.series.epoch.push_back(k);
        report.series.potential.push_back(px.back());
        report.series.potential_y.push_back(py.back());
    }
    const double m = static_cast<double>(chain.inner() + 1);
    report.ratio_floor = 1.0 / (4.0 * m * m);
    for (const auto& series : {px, py}) {
        const RelativeDropStats stats = relative_drops(series, report.ratio_floor);
        report.ratio_violations += stats.violations;
        if (stats.min_ratio)
            report.min_epoch_ratio = std::min(report.min_epoch_ratio.value_or(*stats.min_ratio), *stats.min_ratio);
    }
    for (std::size_t k = 0; k + 1 < px.size(); ++k) {
        auto ratio_of = [](double a, double b) { return a > 1e-12 ? std::optional<double>((a - b) / a) : std::nullopt; };
        const auto rx = ratio_of(px[k], px[k + 1]);
        const auto ry = ratio_of(py[k], py[k + 1]);
        std::optional<double> r = rx;
        if (ry) r = std::min(r.value_or(*ry), *ry);
        report.series.ratio.push_back(r);
    }
    if (!px.empty()) report.series.ratio.push_back(std::nullopt);
    if (report.ratio_violations > 0)
        report.violations.push_back(std::to_string(report.ratio_violations) +
                                    " epochs with a potential drop below 1/(4(n+1)^2)");
}

} // namespace

VerifyReport verify(const Trace& trace, const std::vector<Check>& checks)
{
    VerifyReport report;
    for (Check check : checks) {
        report.checks_run.push_back(check);
        switch (check) {
        case Check::replay: check_replay(trace, report); break;
        case Check::safety: check_safety(trace, report); break;
        case Check::drop_terms: check_drop_terms(trace, report); break;
        case Check::epoch_bounds: check_epoch_bounds(trace, report); break;
        case Check::chain_potential: check_chain_potential(trace, report); break;
        }
    }
    return report;
}

std::string report_to_json(const VerifyReport& report)
{
    json checks = json::array();
    for (Check c : report.checks_run) checks.push_back(std::string(to_string(c)));
    json ratios = json::array();
    for (const auto& r : report.series.ratio) ratios.push_back(r ? json(*r) : json(nullptr));
    json j{{"ok", report.ok()},
           {"checks", checks},
           {"violations", report.violations},
           {"drop_term_rounds", report.drop_term_rounds},
           {"min_residual", report.min_residual},
           {"max_interior_residual", report.max_interior_residual},
           {"ratio_floor", report.ratio_floor},
           {"min_epoch_ratio", report.min_epoch_ratio ? json(*report.min_epoch_ratio) : json(nullptr)},
           {"sorted_bound_violations", report.sorted_bound_violations},
           {"ratio_violations", report.ratio_violations},
           {"first_approx_epoch", report.first_approx_epoch ? json(*report.first_approx_epoch) : json(nullptr)},
           {"epochs", {{"epoch", report.series.epoch},
                       {"potential", report.series.potential},
                       {"potential_y", report.series.potential_y},
                       {"bound", report.series.bound},
                       {"ratio", ratios}}}};
    return j.dump(2);
}

void write_epoch_csv(const VerifyReport& report, std::ostream& out)
{
    const auto& s = report.series;
    auto cell = [](const std::vector<double>& v, std::size_t k) { return k < v.size() ? json(v[k]).dump() : ""; };
    out << "epoch,potential,potential_y,bound,ratio\n";
    for (std::size_t k = 0; k < s.epoch.size(); ++k) {
        out << s.epoch[k] << ',' << cell(s.potential, k) << ',' << cell(s.potential_y, k) << ',' << cell(s.bound, k)
            << ',';
        if (k < s.ratio.size() && s.ratio[k]) out << json(*s.ratio[k]).dump();
        out << '\n';
    }
}

} // namespace maxline
