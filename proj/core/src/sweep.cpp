#include "maxline/sweep.hpp"

#include "maxline/fixtures.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace maxline {

RunConfig random_run(Algorithm algorithm, const SchedulerSpec& scheduler, std::size_t n, std::uint64_t seed,
                     double epsilon, std::optional<double> spread)
{
    RunConfig config;
    config.algorithm = algorithm;
    config.scheduler = scheduler;
    config.scheduler.seed = seed;
    config.epsilon = epsilon;
    if (algorithm == Algorithm::chain_gtm) {
        config.chain = random_chain(n, seed);
        config.source = "random-chain:" + std::to_string(n);
    } else if (spread) {
        config.initial = spread_connected(n, *spread, RangeModel::square(), seed);
        config.source = "spread:" + std::to_string(n) + ":" + nlohmann::json(*spread).dump();
    } else {
        config.initial = random_connected(n, RangeModel::square(), seed);
        config.source = "random:" + std::to_string(n);
    }
    return config;
}

bool SweepResult::all_converged() const
{
    return std::all_of(cells.begin(), cells.end(),
                       [](const SweepCell& c) { return c.summary.status == RunStatus::converged; });
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
        if (x[i] > 0.0 && y[i] > 0.0) pts.emplace_back(std::log(x[i]), std::log(y[i]));
    if (pts.size() < 2) return std::nullopt;
    double mx = 0.0;
    double my = 0.0;
    for (auto [a, b] : pts) {
        mx += a;
        my += b;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (auto [a, b] : pts) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

SweepResult run_sweep(const SweepSpec& spec)
{
    SweepResult result;
    const bool by_spread = !spec.spreads.empty();
    if (by_spread && spec.sizes.size() != 1) throw std::invalid_argument("a spread sweep needs exactly one robot count");
    if (spec.seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
    const std::size_t params = by_spread ? spec.spreads.size() : spec.sizes.size();
    if (params == 0) throw std::invalid_argument("sweep needs at least one parameter value");
    for (std::size_t p = 0; p < params; ++p) {
        for (std::uint64_t seed : spec.seeds) {
            SweepCell cell;
            cell.n = by_spread ? spec.sizes.front() : spec.sizes[p];
            if (by_spread) cell.spread = spec.spreads[p];
            cell.seed = seed;
            result.cells.push_back(cell);
        }
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < result.cells.size(); i = next++) {
            SweepCell& cell = result.cells[i];
            try {
                const RunConfig config =
                    random_run(spec.algorithm, spec.scheduler, cell.n, cell.seed, spec.epsilon, cell.spread);
                cell.summary = simulate(config).summary;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::size_t threads = spec.threads > 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, result.cells.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> xs;
    std::vector<double> epochs;
    std::vector<double> rounds;
    for (std::size_t p = 0; p < params; ++p) {
        SweepPoint point;
        point.parameter = by_spread ? spec.spreads[p] : static_cast<double>(spec.sizes[p]);
        for (std::size_t k = 0; k < spec.seeds.size(); ++k) {
            const auto& s = result.cells[p * spec.seeds.size() + k].summary;
            ++point.cells;
            point.converged += s.status == RunStatus::converged ? 1 : 0;
            point.mean_epochs += static_cast<double>(s.epochs);
            point.mean_rounds += static_cast<double>(s.rounds);
        }
        point.mean_epochs /= static_cast<double>(point.cells);
        point.mean_rounds /= static_cast<double>(point.cells);
        xs.push_back(point.parameter);
        epochs.push_back(point.mean_epochs);
        rounds.push_back(point.mean_rounds);
        result.points.push_back(point);
    }
    result.epochs_exponent = loglog_slope(xs, epochs);
    result.rounds_exponent = loglog_slope(xs, rounds);
    return result;
}

void write_sweep_cells_csv(const SweepResult& result, std::ostream& out)
{
    out << "n,spread,seed,status,rounds,epochs,distinct_colors,diagnostic\n";
    for (const auto& c : result.cells) {
        out << c.n << ',' << (c.spread ? nlohmann::json(*c.spread).dump() : "") << ',' << c.seed << ','
            << to_string(c.summary.status) << ',' << c.summary.rounds << ',' << c.summary.epochs << ','
            << c.summary.distinct_colors << ',' << nlohmann::json(c.summary.diagnostic).dump() << '\n';
    }
}

void write_sweep_summary_csv(const SweepResult& result, std::ostream& out)
{
    out << "parameter,cells,converged,mean_epochs,mean_rounds\n";
    for (const auto& p : result.points)
        out << nlohmann::json(p.parameter).dump() << ',' << p.cells << ',' << p.converged << ','
            << nlohmann::json(p.mean_epochs).dump() << ',' << nlohmann::json(p.mean_rounds).dump() << '\n';
    auto value = [](const std::optional<double>& v) { return v ? nlohmann::json(*v).dump() : std::string(); };
    out << "epochs_exponent,,," << value(result.epochs_exponent) << ",\n";
    out << "rounds_exponent,,,," << value(result.rounds_exponent) << '\n';
}

} // namespace maxline
