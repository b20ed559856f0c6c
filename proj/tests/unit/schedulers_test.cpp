#include "maxline/schedulers.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace maxline;

TEST_SUITE("schedulers")
{
    TEST_CASE("fsync activates everyone")
    {
        Scheduler s(SchedulerSpec::fsync(), 5);
        for (long r = 0; r < 4; ++r) {
            const auto rec = s.next();
            CHECK(rec.round == r);
            CHECK(rec.active == std::vector<RobotId>{0, 1, 2, 3, 4});
        }
    }

    TEST_CASE("round robin cycles through ids")
    {
        Scheduler s(SchedulerSpec::round_robin(1), 3);
        const std::vector<std::vector<RobotId>> expected{{0}, {1}, {2}, {0}, {1}};
        for (const auto& e : expected) CHECK(s.next().active == e);

        Scheduler batch(SchedulerSpec::round_robin(2), 3);
        CHECK(batch.next().active == std::vector<RobotId>{0, 1});
        CHECK(batch.next().active == std::vector<RobotId>{0, 2});
    }

    TEST_CASE("random activation is never empty and forces idle robots")
    {
        SchedulerSpec spec = SchedulerSpec::random(0.05, 9);
        spec.fairness_bound = 4;
        Scheduler s(spec, 6);
        CHECK(s.fairness_bound() == 4);
        std::vector<int> idle(6, 0);
        for (int r = 0; r < 2000; ++r) {
            const auto rec = s.next();
            CHECK_FALSE(rec.active.empty());
            for (RobotId id = 0; id < 6; ++id) {
                if (rec.contains(id))
                    idle[id] = 0;
                else
                    ++idle[id];
                CHECK(idle[id] <= 3);
            }
        }
    }

    TEST_CASE("robot idle for three rounds under bound four acts in the fourth regardless of the coins")
    {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            SchedulerSpec spec = SchedulerSpec::random(0.5, seed);
            spec.fairness_bound = 4;
            Scheduler s(spec, 3);
            std::vector<int> idle(3, 0);
            for (int r = 0; r < 40; ++r) {
                const std::vector<int> before = idle;
                const auto rec = s.next();
                for (RobotId id = 0; id < 3; ++id) {
                    if (before[id] == 3) CHECK(rec.contains(id));
                    idle[id] = rec.contains(id) ? 0 : idle[id] + 1;
                }
            }
        }
    }

    TEST_CASE("default fairness bounds")
    {
        CHECK(effective_fairness_bound(SchedulerSpec::fsync(), 7) == 1);
        CHECK(effective_fairness_bound(SchedulerSpec::random(0.5), 7) == 14);
        SchedulerSpec custom = SchedulerSpec::random(0.5);
        custom.fairness_bound = 3;
        CHECK(effective_fairness_bound(custom, 7) == 3);
    }

    TEST_CASE("adversary script repeats and is made fair")
    {
        Scheduler s(SchedulerSpec::adversary({{0}, {0, 1}, {2}}), 3);
        CHECK(s.next().active == std::vector<RobotId>{0});
        CHECK(s.next().active == std::vector<RobotId>{0, 1});
        CHECK(s.next().active == std::vector<RobotId>{2});
        CHECK(s.next().active == std::vector<RobotId>{0});

        SchedulerSpec starving = SchedulerSpec::adversary({{0}});
        starving.fairness_bound = 3;
        Scheduler f(starving, 2);
        CHECK(f.next().active == std::vector<RobotId>{0});
        CHECK(f.next().active == std::vector<RobotId>{0});
        CHECK(f.next().active == std::vector<RobotId>{0, 1});
    }

    TEST_CASE("same spec and seed give the same activations")
    {
        Scheduler a(SchedulerSpec::random(0.3, 77), 9);
        Scheduler b(SchedulerSpec::random(0.3, 77), 9);
        for (int r = 0; r < 100; ++r) CHECK(a.next().active == b.next().active);
    }

    TEST_CASE("next_activation replays the generator")
    {
        const SchedulerSpec spec = SchedulerSpec::random(0.4, 3);
        Scheduler s(spec, 5);
        std::vector<ActivationRecord> history;
        for (int r = 0; r < 20; ++r) {
            const auto expected = s.next();
            CHECK(next_activation(spec, 5, history).active == expected.active);
            history.push_back(expected);
        }
    }

    TEST_CASE("parsing")
    {
        CHECK(parse_scheduler("fsync").kind == SchedulerKind::fsync);
        const auto r = parse_scheduler("ssync-random:0.25");
        CHECK(r.kind == SchedulerKind::ssync_random);
        CHECK(r.probability == doctest::Approx(0.25));
        const auto k = parse_scheduler("ssync-roundrobin:3");
        CHECK(k.kind == SchedulerKind::ssync_roundrobin);
        CHECK(k.batch == 3);
        CHECK_THROWS(parse_scheduler("ssync-random:1.5"));
        CHECK_THROWS(parse_scheduler("sometimes"));
        CHECK(parse_script("[[0],[1,2]]") == ActivationScript{{0}, {1, 2}});
        CHECK(parse_script(script_to_json({{2}, {0, 1}})) == ActivationScript{{2}, {0, 1}});
    }

    TEST_CASE("fsync epochs are single rounds")
    {
        EpochLedger ledger(4);
        Scheduler s(SchedulerSpec::fsync(), 4);
        for (int r = 0; r < 5; ++r) ledger.update(s.next());
        CHECK(std::vector<long>(ledger.epoch_starts().begin(), ledger.epoch_starts().end()) ==
              std::vector<long>{0, 1, 2, 3, 4, 5});
        CHECK(ledger.completed_epochs() == 5);
    }

    TEST_CASE("round robin epochs last n rounds")
    {
        EpochLedger ledger(3);
        Scheduler s(SchedulerSpec::round_robin(1), 3);
        for (int r = 0; r < 7; ++r) ledger.update(s.next());
        CHECK(std::vector<long>(ledger.epoch_starts().begin(), ledger.epoch_starts().end()) ==
              std::vector<long>{0, 3, 6});
    }

    TEST_CASE("scripted epoch boundary")
    {
        EpochLedger ledger(3);
        ledger.update({0, {0}});
        ledger.update({1, {0, 1}});
        CHECK(ledger.completed_epochs() == 0);
        ledger.update({2, {2}});
        CHECK(ledger.completed_epochs() == 1);
        CHECK(ledger.epoch_starts()[1] == 3);
        CHECK(ledger.current_epoch() == 1);
    }

    TEST_CASE("out-of-order rounds are rejected")
    {
        EpochLedger ledger(2);
        ledger.update({0, {0}});
        CHECK_THROWS_AS(ledger.update({0, {1}}), std::invalid_argument);
    }

    TEST_CASE("property: every window of bound times n rounds holds a full epoch")
    {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const std::size_t n = 2 + seed % 9;
            for (const SchedulerSpec& base : {SchedulerSpec::random(0.1, seed), SchedulerSpec::round_robin(1 + seed % 3),
                                              SchedulerSpec::adversary({{0}, {0, 1}})}) {
                Scheduler s(base, n);
                EpochLedger ledger(n);
                const long window = static_cast<long>(s.fairness_bound() * n);
                const long rounds = 20 * window;
                for (long r = 0; r < rounds; ++r) ledger.update(s.next());
                const auto starts = ledger.epoch_starts();
                for (std::size_t k = 0; k + 1 < starts.size(); ++k) CHECK(starts[k + 1] - starts[k] <= window);
                CHECK(rounds - starts.back() <= window);
            }
        }
    }
}
