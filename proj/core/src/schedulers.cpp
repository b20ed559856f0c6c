#include "maxline/schedulers.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace maxline {

SchedulerSpec SchedulerSpec::random(double p, std::uint64_t seed)
{
    SchedulerSpec spec;
    spec.kind = SchedulerKind::ssync_random;
    spec.probability = p;
    spec.seed = seed;
    return spec;
}

SchedulerSpec SchedulerSpec::round_robin(std::size_t k)
{
    SchedulerSpec spec;
    spec.kind = SchedulerKind::ssync_roundrobin;
    spec.batch = k;
    return spec;
}

SchedulerSpec SchedulerSpec::adversary(ActivationScript script)
{
    SchedulerSpec spec;
    spec.kind = SchedulerKind::ssync_adversary;
    spec.script = std::move(script);
    return spec;
}

std::size_t effective_fairness_bound(const SchedulerSpec& spec, std::size_t n)
{
    if (spec.kind == SchedulerKind::fsync) return 1;
    if (spec.fairness_bound > 0) return spec.fairness_bound;
    return std::max<std::size_t>(2 * n, 1);
}

namespace {

double parse_double(std::string_view text)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("bad number '" + std::string(text) + "'");
    return value;
}

std::size_t parse_size(std::string_view text)
{
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("bad integer '" + std::string(text) + "'");
    return value;
}

} // namespace

SchedulerSpec parse_scheduler(std::string_view text)
{
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (head == "fsync" && arg.empty()) return SchedulerSpec::fsync();
    if (head == "ssync-random") {
        const double p = arg.empty() ? 0.5 : parse_double(arg);
        if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("activation probability must be in (0,1]");
        return SchedulerSpec::random(p);
    }
    if (head == "ssync-roundrobin") {
        const std::size_t k = arg.empty() ? 1 : parse_size(arg);
        if (k == 0) throw std::invalid_argument("round-robin batch must be positive");
        return SchedulerSpec::round_robin(k);
    }
    throw std::invalid_argument("unknown scheduler '" + std::string(text) + "'");
}

ActivationScript parse_script(std::string_view json_text)
{
    ActivationScript script;
    try {
        const auto j = nlohmann::json::parse(json_text);
        for (const auto& round : j) {
            std::vector<RobotId> ids = round.get<std::vector<RobotId>>();
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            script.push_back(std::move(ids));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed activation script: ") + e.what());
    }
    if (script.empty()) throw std::invalid_argument("activation script is empty");
    return script;
}

std::string script_to_json(const ActivationScript& script) { return nlohmann::json(script).dump(); }

std::string describe(const SchedulerSpec& spec)
{
    switch (spec.kind) {
    case SchedulerKind::fsync: return "fsync";
    case SchedulerKind::ssync_random: return "ssync-random:" + nlohmann::json(spec.probability).dump();
    case SchedulerKind::ssync_roundrobin: return "ssync-roundrobin:" + std::to_string(spec.batch);
    case SchedulerKind::ssync_adversary: return "ssync-adversary";
    }
    return "unknown";
}

Scheduler::Scheduler(SchedulerSpec spec, std::size_t n)
    : spec_(std::move(spec)), n_(n), bound_(effective_fairness_bound(spec_, n)), rng_(derive_seed(spec_.seed, 3)),
      idle_(n, 0)
{
    if (n_ == 0) throw std::invalid_argument("scheduler needs at least one robot");
    if (spec_.kind == SchedulerKind::ssync_random && !(spec_.probability > 0.0 && spec_.probability <= 1.0))
        throw std::invalid_argument("activation probability must be in (0,1]");
    if (spec_.kind == SchedulerKind::ssync_roundrobin && spec_.batch == 0)
        throw std::invalid_argument("round-robin batch must be positive");
    if (spec_.kind == SchedulerKind::ssync_adversary) {
        if (spec_.script.empty()) throw std::invalid_argument("activation script is empty");
        for (const auto& round : spec_.script) {
            if (round.empty()) throw std::invalid_argument("activation script has an empty round");
            for (RobotId id : round)
                if (id >= n_) throw std::invalid_argument("activation script names unknown robot");
        }
    }
}

std::vector<RobotId> Scheduler::draw()
{
    std::vector<RobotId> ids;
    switch (spec_.kind) {
    case SchedulerKind::fsync:
        for (RobotId id = 0; id < n_; ++id) ids.push_back(id);
        break;
    case SchedulerKind::ssync_random:
        for (RobotId id = 0; id < n_; ++id)
            if (rng_.bernoulli(spec_.probability)) ids.push_back(id);
        break;
    case SchedulerKind::ssync_roundrobin:
        for (std::size_t j = 0; j < std::min(spec_.batch, n_); ++j) ids.push_back((cursor_ + j) % n_);
        cursor_ = (cursor_ + spec_.batch) % n_;
        break;
    case SchedulerKind::ssync_adversary:
        ids = spec_.script[static_cast<std::size_t>(round_) % spec_.script.size()];
        break;
    }
    return ids;
}

ActivationRecord Scheduler::next()
{
    std::vector<bool> on(n_, false);
    bool any = false;
    while (!any) {
        for (RobotId id : draw()) on[id] = true;
        for (RobotId id = 0; id < n_; ++id)
            if (idle_[id] + 1 >= bound_) on[id] = true;
        any = std::find(on.begin(), on.end(), true) != on.end();
    }
    ActivationRecord record;
    record.round = round_++;
    for (RobotId id = 0; id < n_; ++id) {
        if (on[id]) {
            record.active.push_back(id);
            idle_[id] = 0;
        } else {
            ++idle_[id];
        }
    }
    return record;
}

ActivationRecord next_activation(const SchedulerSpec& spec, std::size_t n, std::span<const ActivationRecord> history)
{
    Scheduler scheduler(spec, n);
    for (std::size_t i = 0; i < history.size(); ++i) scheduler.next();
    return scheduler.next();
}

EpochLedger::EpochLedger(std::size_t n) : n_(n), seen_(n, false)
{
    if (n == 0) throw std::invalid_argument("epoch ledger needs at least one robot");
}

void EpochLedger::update(const ActivationRecord& record)
{
    if (record.round <= last_round_) throw std::invalid_argument("activation records out of order");
    last_round_ = record.round;
    for (RobotId id : record.active) {
        if (id >= n_) throw std::out_of_range("activation names unknown robot");
        if (!seen_[id]) {
            seen_[id] = true;
            ++seen_count_;
        }
    }
    if (seen_count_ == n_) {
        starts_.push_back(record.round + 1);
        std::fill(seen_.begin(), seen_.end(), false);
        seen_count_ = 0;
    }
}

} // namespace maxline
