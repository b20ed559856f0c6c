#pragma once

#include "maxline/random.hpp"
#include "maxline/world.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maxline {

enum class SchedulerKind { fsync, ssync_random, ssync_roundrobin, ssync_adversary };

using ActivationScript = std::vector<std::vector<RobotId>>;

struct SchedulerSpec {
    SchedulerKind kind = SchedulerKind::fsync;
    double probability = 0.5;     // ssync_random
    std::size_t batch = 1;        // ssync_roundrobin
    ActivationScript script;      // ssync_adversary, repeated cyclically
    std::size_t fairness_bound = 0;  // 0 selects the default for the kind
    std::uint64_t seed = 0;

    static SchedulerSpec fsync() { return {}; }
    static SchedulerSpec random(double p, std::uint64_t seed = 0);
    static SchedulerSpec round_robin(std::size_t k);
    static SchedulerSpec adversary(ActivationScript script);
};

/// Fairness bound in force for n robots: 1 for fsync, 2n unless set otherwise.
std::size_t effective_fairness_bound(const SchedulerSpec& spec, std::size_t n);

/// Parses "fsync", "ssync-random:p", "ssync-roundrobin:k". Adversary specs go through parse_script.
SchedulerSpec parse_scheduler(std::string_view text);
/// Parses a JSON list of lists of robot ids.
ActivationScript parse_script(std::string_view json_text);
std::string script_to_json(const ActivationScript& script);
std::string describe(const SchedulerSpec& spec);

/// Stateful activation generator for one simulation.
class Scheduler {
public:
    Scheduler(SchedulerSpec spec, std::size_t n);

    ActivationRecord next();
    std::size_t fairness_bound() const { return bound_; }
    const SchedulerSpec& spec() const { return spec_; }

private:
    std::vector<RobotId> draw();

    SchedulerSpec spec_;
    std::size_t n_;
    std::size_t bound_;
    Rng rng_;
    long round_ = 0;
    std::size_t cursor_ = 0;
    std::vector<std::size_t> idle_;
};

/// Activation for the round following history, replaying the scheduler from scratch.
ActivationRecord next_activation(const SchedulerSpec& spec, std::size_t n, std::span<const ActivationRecord> history);

/// Epoch boundaries: epoch k+1 starts the round after every robot has acted since epoch k began.
class EpochLedger {
public:
    explicit EpochLedger(std::size_t n);

    void update(const ActivationRecord& record);
    std::span<const long> epoch_starts() const { return starts_; }
    /// Number of epochs fully elapsed.
    std::size_t completed_epochs() const { return starts_.size() - 1; }
    /// Index of the epoch containing the next round.
    std::size_t current_epoch() const { return starts_.size() - 1; }

private:
    std::size_t n_;
    std::vector<long> starts_{0};
    std::vector<bool> seen_;
    std::size_t seen_count_ = 0;
    long last_round_ = -1;
};

} // namespace maxline
