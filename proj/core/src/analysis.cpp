#include "maxline/analysis.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace maxline {

double GapVector::w(std::size_t i) const
{
    if (i == 0 || i > gaps_.size() + 2) throw std::out_of_range("gap index out of range");
    if (i == 1 || i == gaps_.size() + 2) return 1.0;
    return gaps_[i - 2];
}

std::vector<RobotId> line_order(const GlobalConfiguration& config)
{
    std::vector<RobotId> order(config.size());
    for (RobotId id = 0; id < order.size(); ++id) order[id] = id;
    std::stable_sort(order.begin(), order.end(), [&](RobotId a, RobotId b) {
        return config.robots[a].position.y < config.robots[b].position.y;
    });
    return order;
}

GapVector gap_vector(std::span<const double> ys, double unit)
{
    std::vector<double> gaps;
    for (std::size_t i = 1; i < ys.size(); ++i) gaps.push_back((ys[i] - ys[i - 1]) / unit);
    return GapVector(std::move(gaps));
}

GapVector gap_vector(const GlobalConfiguration& config, std::span<const RobotId> order)
{
    std::vector<double> ys;
    for (RobotId id : order) ys.push_back(config.robots.at(id).position.y);
    return gap_vector(ys, config.range.radius);
}

std::vector<bool> activation_flags(const ActivationRecord& record, std::span<const RobotId> order)
{
    std::vector<bool> flags;
    for (RobotId id : order) flags.push_back(record.contains(id));
    return flags;
}

double phi(const GapVector& g)
{
    double sum = 0.0;
    for (double w : g.gaps()) sum += (w - 1.0) * (w - 1.0);
    return sum;
}

namespace {

void require_size(const GapVector& g, const std::vector<bool>& active)
{
    if (active.size() != g.robots()) throw std::invalid_argument("activation flags differ from robot count");
}

} // namespace

GapVector w_update_oracle(const GapVector& g, const std::vector<bool>& active)
{
    require_size(g, active);
    std::vector<double> next;
    for (std::size_t i = 2; i <= g.robots(); ++i) {
        const bool lower = active[i - 2];
        const bool upper = active[i - 1];
        if (lower && upper)
            next.push_back(0.5 * g.w(i - 1) + 0.5 * g.w(i + 1));
        else if (lower)
            next.push_back(0.5 * g.w(i - 1) + 0.5 * g.w(i));
        else if (upper)
            next.push_back(0.5 * g.w(i) + 0.5 * g.w(i + 1));
        else
            next.push_back(g.w(i));
    }
    return GapVector(std::move(next));
}

double DropTerms::sum() const
{
    double s = 0.0;
    for (const auto* v : {&lower, &both, &upper})
        for (double d : *v) s += d;
    return s;
}

DropTerms drop_terms(const GapVector& g, const std::vector<bool>& active)
{
    require_size(g, active);
    DropTerms terms;
    auto sq = [](double v) { return v * v; };
    for (std::size_t i = 2; i <= g.robots(); ++i) {
        const bool lower = active[i - 2];
        const bool upper = active[i - 1];
        terms.lower.push_back(lower && !upper ? sq(g.w(i) - g.w(i - 1)) : 0.0);
        terms.both.push_back(lower && upper ? sq(g.w(i - 1) - g.w(i + 1)) : 0.0);
        terms.upper.push_back(upper && !lower ? sq(g.w(i) - g.w(i + 1)) : 0.0);
    }
    return terms;
}

DropCheck phi_drop_bound_check(const GapVector& before, const std::vector<bool>& active, const GapVector& after,
                               double tolerance)
{
    const GapVector expected = w_update_oracle(before, active);
    if (expected.robots() != after.robots()) throw std::invalid_argument("gap vectors differ in size");
    for (std::size_t i = 0; i < expected.gaps().size(); ++i)
        if (std::abs(expected.gaps()[i] - after.gaps()[i]) > tolerance)
            throw std::invalid_argument("gap " + std::to_string(i + 2) + " differs from the oracle update");
    DropCheck check;
    check.drop = phi(before) - phi(after);
    check.bound = 0.25 * drop_terms(before, active).sum();
    check.residual = check.drop - check.bound;
    check.endpoint_active = !active.empty() && (active.front() || active.back());
    return check;
}

namespace {

double sorted_gap_bound(const GapVector& g)
{
    std::vector<double> values;
    for (std::size_t i = 1; i <= g.robots(); ++i) values.push_back(g.w(i));
    std::sort(values.begin(), values.end(), std::greater<>());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) sum += (values[i] - values[i + 1]) * (values[i] - values[i + 1]);
    return 0.25 * sum;
}

double line_length(const GapVector& g)
{
    double sum = 0.0;
    for (double w : g.gaps()) sum += w;
    return sum;
}

} // namespace

EpochReport epoch_bound_checks(std::span<const EpochSample> samples, double eps, double unit)
{
    EpochReport report;
    if (samples.empty()) return report;
    const std::size_t n = samples.front().ys.size();
    report.ratio_floor = 1.0 / (8.0 * static_cast<double>(n * n));
    std::vector<GapVector> gaps;
    for (const auto& s : samples) {
        if (s.ys.size() != n) throw std::invalid_argument("epoch samples differ in robot count");
        gaps.push_back(gap_vector(s.ys, unit));
    }
    for (std::size_t k = 0; k < gaps.size(); ++k) {
        if (!report.first_approx_epoch && line_length(gaps[k]) >= (1.0 - eps) * static_cast<double>(n - 1))
            report.first_approx_epoch = samples[k].epoch;
        if (k + 1 == gaps.size()) break;
        EpochCheck check;
        check.epoch = samples[k].epoch;
        check.phi_start = phi(gaps[k]);
        check.phi_end = phi(gaps[k + 1]);
        check.sorted_bound = sorted_gap_bound(gaps[k]);
        const double drop = check.phi_start - check.phi_end;
        check.sorted_bound_ok = drop >= check.sorted_bound - 1e-9;
        if (check.phi_start > 1e-12) {
            check.ratio = drop / check.phi_start;
            check.ratio_ok = *check.ratio >= report.ratio_floor - 1e-9;
            report.min_ratio = std::min(report.min_ratio.value_or(*check.ratio), *check.ratio);
        }
        report.sorted_bound_violations += check.sorted_bound_ok ? 0 : 1;
        report.ratio_violations += check.ratio_ok ? 0 : 1;
        report.epochs.push_back(check);
    }
    return report;
}

LineMetrics line_metrics(const GlobalConfiguration& config, double eps)
{
    LineMetrics m;
    const auto stats = diameter_stats(config.positions());
    m.is_line = stats.extent_x <= kGeoTolerance;
    if (!m.is_line) return m;
    m.length = stats.extent_y;
    const double target = static_cast<double>(config.size() - 1) * config.range.radius;
    m.approx = m.length >= (1.0 - eps) * target;
    return m;
}

bool is_exact_line(const GlobalConfiguration& config)
{
    if (!line_metrics(config, 0.0).is_line) return false;
    const auto g = gap_vector(config, line_order(config));
    return std::all_of(g.gaps().begin(), g.gaps().end(), [](double w) { return std::abs(w - 1.0) <= 1e-9; });
}

RelativeDropStats relative_drops(std::span<const double> series, double floor, double negligible, double tolerance)
{
    RelativeDropStats stats;
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        if (series[k] <= negligible) continue;
        const double ratio = (series[k] - series[k + 1]) / series[k];
        stats.min_ratio = std::min(stats.min_ratio.value_or(ratio), ratio);
        if (ratio < floor - tolerance) ++stats.violations;
    }
    return stats;
}

} // namespace maxline
