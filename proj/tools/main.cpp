#include <maxline/fixtures.hpp>
#include <maxline/simulation.hpp>
#include <maxline/sweep.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace maxline;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

Algorithm algorithm_from(const std::string& text)
{
    const auto a = parse_algorithm(text);
    if (!a) throw CLI::ValidationError("--algorithm", "unknown algorithm '" + text + "'");
    return *a;
}

SchedulerSpec scheduler_from(const std::string& text)
{
    const std::string adversary = "ssync-adversary:";
    if (text.starts_with(adversary)) return SchedulerSpec::adversary(parse_script(read_file(text.substr(adversary.size()))));
    return parse_scheduler(text);
}

struct SimulateOptions {
    std::string algorithm = "maxline-oblot";
    std::string scheduler = "fsync";
    std::size_t n = 8;
    std::uint64_t seed = 1;
    double epsilon = 0.01;
    std::size_t max_epochs = 0;
    std::size_t fairness = 0;
    std::string trace;
    std::string config;
    std::string fixture;
    double scale = 1.0;
    double alpha = 2.0;
    double spread = 0.0;
    bool positive_chirality = false;
};

RunConfig run_config_from(const SimulateOptions& o)
{
    const Algorithm algorithm = algorithm_from(o.algorithm);
    SchedulerSpec scheduler = scheduler_from(o.scheduler);
    scheduler.seed = o.seed;
    scheduler.fairness_bound = o.fairness;
    RunConfig config;
    if (!o.config.empty()) {
        config.algorithm = algorithm;
        config.scheduler = scheduler;
        config.epsilon = o.epsilon;
        config.source = "file:" + o.config;
        if (algorithm == Algorithm::chain_gtm)
            config.chain = chain_from_json(read_file(o.config));
        else
            config.initial = configuration_from_json(read_file(o.config));
    } else if (!o.fixture.empty()) {
        const auto kind = parse_fixture_kind(o.fixture);
        if (!kind) throw CLI::ValidationError("--fixture", "unknown fixture '" + o.fixture + "'");
        FixtureSpec spec;
        spec.kind = *kind;
        spec.scale = o.scale;
        spec.alpha = o.alpha;
        config.algorithm = algorithm;
        config.scheduler = scheduler;
        config.epsilon = o.epsilon;
        config.source = "fixture:" + o.fixture;
        config.initial = make_fixture(spec, RangeKind::square).config;
    } else {
        const std::optional<double> spread = o.spread > 0.0 ? std::optional(o.spread) : std::nullopt;
        config = random_run(algorithm, scheduler, o.n, o.seed, o.epsilon, spread);
        if (o.positive_chirality && algorithm != Algorithm::chain_gtm)
            for (auto& r : config.initial.robots) r.chirality = Chirality::positive;
    }
    config.max_epochs = o.max_epochs;
    return config;
}

int run_simulate(const SimulateOptions& o)
{
    const Trace trace = simulate(run_config_from(o));
    if (!o.trace.empty()) {
        auto out = open_output(o.trace);
        write_trace(trace, out);
    }
    const auto& s = trace.summary;
    nlohmann::json summary{{"status", std::string(to_string(s.status))},
                           {"rounds", s.rounds},
                           {"epochs", s.epochs},
                           {"max_epochs", trace.config.max_epochs},
                           {"distinct_colors", s.distinct_colors},
                           {"diagnostic", s.diagnostic}};
    std::cout << summary.dump() << '\n';
    if (s.status == RunStatus::invariant_violation) std::cerr << "invariant violation: " << s.diagnostic << '\n';
    return exit_code(s.status);
}

struct VerifyOptions {
    std::string trace;
    std::vector<std::string> checks;
    std::string report;
    std::string csv;
};

int run_verify(const VerifyOptions& o)
{
    std::ifstream in(o.trace);
    if (!in) throw std::runtime_error("cannot read " + o.trace);
    const Trace trace = read_trace(in);
    std::vector<Check> checks;
    for (const auto& name : o.checks) {
        const auto c = parse_check(name);
        if (!c) throw CLI::ValidationError("--checks", "unknown check '" + name + "'");
        checks.push_back(*c);
    }
    if (checks.empty()) checks = all_checks();
    const VerifyReport report = verify(trace, checks);
    const std::string json = report_to_json(report);
    if (!o.report.empty())
        open_output(o.report) << json << '\n';
    else
        std::cout << json << '\n';
    if (!o.csv.empty()) {
        auto out = open_output(o.csv);
        write_epoch_csv(report, out);
    }
    for (const auto& v : report.violations) std::cerr << "violation: " << v << '\n';
    return report.ok() ? 0 : 3;
}

struct SweepOptions {
    std::string algorithm = "maxline-oblot";
    std::string scheduler = "fsync";
    std::vector<std::size_t> sizes;
    std::vector<double> spreads;
    std::size_t seeds = 5;
    std::uint64_t first_seed = 1;
    double epsilon = 0.01;
    std::size_t threads = 0;
    std::string csv;
    std::string cells;
};

int run_sweep_command(const SweepOptions& o)
{
    SweepSpec spec;
    spec.algorithm = algorithm_from(o.algorithm);
    spec.scheduler = scheduler_from(o.scheduler);
    spec.sizes = o.sizes;
    spec.spreads = o.spreads;
    for (std::size_t k = 0; k < o.seeds; ++k) spec.seeds.push_back(o.first_seed + k);
    spec.epsilon = o.epsilon;
    spec.threads = o.threads;
    const SweepResult result = run_sweep(spec);
    if (!o.cells.empty()) {
        auto out = open_output(o.cells);
        write_sweep_cells_csv(result, out);
    }
    if (!o.csv.empty()) {
        auto out = open_output(o.csv);
        write_sweep_summary_csv(result, out);
    } else {
        write_sweep_summary_csv(result, std::cout);
    }
    for (const auto& c : result.cells)
        if (c.summary.status == RunStatus::invariant_violation) {
            std::cerr << "cell n=" << c.n << " seed=" << c.seed << ": " << c.summary.diagnostic << '\n';
            return 3;
        }
    return result.all_converged() ? 0 : 2;
}

struct FixtureOptions {
    std::string kind = "c2";
    double scale = 1.0;
    double alpha = 2.0;
    std::string range = "circular";
    std::string out;
    bool stuck = false;
    std::size_t probe_grid = 21;
};

int run_fixture(const FixtureOptions& o)
{
    const auto kind = parse_fixture_kind(o.kind);
    if (!kind) throw CLI::ValidationError("--kind", "unknown fixture '" + o.kind + "'");
    const auto range = parse_range_kind(o.range);
    if (!range) throw CLI::ValidationError("--range", "unknown range '" + o.range + "'");
    FixtureSpec spec;
    spec.kind = *kind;
    spec.scale = o.scale;
    spec.alpha = o.alpha;
    const Fixture fixture = make_fixture(spec, *range);
    const std::string config = to_json(fixture.config);
    if (!o.out.empty())
        open_output(o.out) << config << '\n';
    else if (!o.stuck)
        std::cout << config << '\n';
    if (o.stuck) {
        const StuckReport report = stuck_check(fixture.config, fixture.config.range, o.probe_grid);
        nlohmann::json robots = nlohmann::json::array();
        for (const auto& p : report.robots) {
            robots.push_back({{"id", p.robot},
                              {"probes", p.probes},
                              {"preserving", p.preserving.size()},
                              {"connected", p.connected.size()},
                              {"rightward_freedom", rightward_freedom(p)},
                              {"looks_like_line_end", looks_like_line_end(fixture.config, p.robot, fixture.view_range)}});
        }
        std::cout << nlohmann::json{{"kind", o.kind}, {"range", o.range}, {"robots", robots}}.dump(2) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Simulator for max-line formation, gathering and chain formation of point robots"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run one simulation");
    simulate_cmd->add_option("--algorithm", sim.algorithm,
                             "maxline-oblot | maxline-lumi-fsync | maxline-lumi-fsync-stationary | "
                             "maxline-lumi-ssync | gathering | chain-gtm");
    simulate_cmd->add_option("--scheduler", sim.scheduler,
                             "fsync | ssync-random:p | ssync-roundrobin:k | ssync-adversary:FILE");
    simulate_cmd->add_option("--n", sim.n, "Robot count (inner robots for chain-gtm)")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", sim.seed, "Seed for the start and the scheduler");
    simulate_cmd->add_option("--epsilon", sim.epsilon, "Approximation parameter")->check(CLI::Range(0.0, 1.0));
    simulate_cmd->add_option("--max-epochs", sim.max_epochs, "Epoch budget (0 = algorithm default)");
    simulate_cmd->add_option("--fairness", sim.fairness, "Fairness bound for SSYNC (0 = 2n)");
    simulate_cmd->add_option("--trace", sim.trace, "Write the JSON-Lines trace here");
    simulate_cmd->add_option("--config", sim.config, "Initial configuration file");
    simulate_cmd->add_option("--fixture", sim.fixture, "Start from a fixture: c1 | c2 | alpha");
    simulate_cmd->add_option("--scale", sim.scale, "Fixture spacing");
    simulate_cmd->add_option("--alpha", sim.alpha, "Alpha fixture viewing factor");
    simulate_cmd->add_option("--spread", sim.spread, "Random start spanning this distance");
    simulate_cmd->add_flag("--positive-chirality", sim.positive_chirality, "Give every robot chirality +1");
    simulate_cmd->callback([&] { std::exit(run_simulate(sim)); });

    VerifyOptions ver;
    auto* verify_cmd = app.add_subcommand("verify", "Replay a trace and run analysis checks");
    verify_cmd->add_option("--trace", ver.trace, "Trace file")->required();
    verify_cmd->add_option("--checks", ver.checks, "replay, safety, drop-terms, epoch-bounds, chain-potential (default: all)")
        ->delimiter(',');
    verify_cmd->add_option("--report", ver.report, "Write the JSON report here");
    verify_cmd->add_option("--csv", ver.csv, "Write the per-epoch series here");
    verify_cmd->callback([&] { std::exit(run_verify(ver)); });

    SweepOptions sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of seeded simulations");
    sweep_cmd->add_option("--algorithm", sw.algorithm, "Algorithm identifier");
    sweep_cmd->add_option("--scheduler", sw.scheduler, "Scheduler spec");
    sweep_cmd->add_option("--n", sw.sizes, "Robot counts")->delimiter(',')->required();
    sweep_cmd->add_option("--spread", sw.spreads, "Spreads to sweep at a single robot count")->delimiter(',');
    sweep_cmd->add_option("--seeds", sw.seeds, "Seeds per cell")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sw.first_seed, "First seed");
    sweep_cmd->add_option("--epsilon", sw.epsilon, "Approximation parameter")->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--threads", sw.threads, "Worker threads (0 = hardware)");
    sweep_cmd->add_option("--csv", sw.csv, "Write the summary CSV here");
    sweep_cmd->add_option("--cells", sw.cells, "Write per-cell rows here");
    sweep_cmd->callback([&] { std::exit(run_sweep_command(sw)); });

    FixtureOptions fx;
    auto* fixture_cmd = app.add_subcommand("fixture", "Emit a fixture or probe it for stuck robots");
    fixture_cmd->add_option("--kind", fx.kind, "c1 | c2 | alpha");
    fixture_cmd->add_option("--scale", fx.scale, "Spacing c")->check(CLI::PositiveNumber);
    fixture_cmd->add_option("--alpha", fx.alpha, "Viewing range factor for alpha");
    fixture_cmd->add_option("--range", fx.range, "square | circular");
    fixture_cmd->add_option("--out", fx.out, "Write the configuration here");
    fixture_cmd->add_flag("--stuck", fx.stuck, "Run the stuck check");
    fixture_cmd->add_option("--probe-grid", fx.probe_grid, "Probes per axis")->check(CLI::Range(2, 1001));
    fixture_cmd->callback([&] { std::exit(run_fixture(fx)); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
