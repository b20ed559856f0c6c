#pragma once

#include "maxline/world.hpp"

#include <optional>
#include <span>
#include <vector>

namespace maxline {

/// Consecutive gaps of a vertical line, in units of the range radius. The virtual gaps
/// w(1) and w(n+1) are 1; w(2)..w(n) are stored.
class GapVector {
public:
    GapVector() = default;
    explicit GapVector(std::vector<double> gaps) : gaps_(std::move(gaps)) {}

    std::size_t robots() const { return gaps_.size() + 1; }
    std::span<const double> gaps() const { return gaps_; }
    /// 1-based gap index in [1, n+1].
    double w(std::size_t i) const;

private:
    std::vector<double> gaps_;
};

/// Robot ids ordered by ascending y, ties by id.
std::vector<RobotId> line_order(const GlobalConfiguration& config);
/// Gaps between robots taken in the given order.
GapVector gap_vector(const GlobalConfiguration& config, std::span<const RobotId> order);
GapVector gap_vector(std::span<const double> ys_in_order, double unit = 1.0);

/// Activation flags per line position (lowest robot first).
std::vector<bool> activation_flags(const ActivationRecord& record, std::span<const RobotId> order);

double phi(const GapVector& g);

/// Gap vector after one round in which the flagged robots move to the middle of their line neighbors.
GapVector w_update_oracle(const GapVector& g, const std::vector<bool>& active);

struct DropTerms {
    std::vector<double> lower;   // only the lower robot of the gap acts
    std::vector<double> both;    // both robots act
    std::vector<double> upper;   // only the upper robot acts
    double sum() const;
};

DropTerms drop_terms(const GapVector& g, const std::vector<bool>& active);

struct DropCheck {
    double drop = 0.0;
    double bound = 0.0;
    double residual = 0.0;
    bool endpoint_active = false;
};

/// Compares the potential drop of one round to a quarter of its drop terms.
/// Throws if `after` differs from the oracle update by more than `tolerance`.
DropCheck phi_drop_bound_check(const GapVector& before, const std::vector<bool>& active, const GapVector& after,
                               double tolerance = 1e-9);

/// Line positions at the start of one epoch, in the order fixed when the line first formed.
struct EpochSample {
    std::size_t epoch = 0;
    std::vector<double> ys;
};

struct EpochCheck {
    std::size_t epoch = 0;
    double phi_start = 0.0;
    double phi_end = 0.0;
    double sorted_bound = 0.0;
    std::optional<double> ratio;  // relative drop, when phi_start is not negligible
    bool sorted_bound_ok = true;
    bool ratio_ok = true;
};

struct EpochReport {
    std::vector<EpochCheck> epochs;
    std::size_t sorted_bound_violations = 0;
    std::size_t ratio_violations = 0;
    std::optional<double> min_ratio;
    double ratio_floor = 0.0;
    std::optional<std::size_t> first_approx_epoch;
};

/// Per-epoch checks over consecutive samples: the drop against the sorted-gap bound and against
/// the relative floor 1/(8 n^2). Also records when the line first reaches length (1 - eps)(n - 1).
EpochReport epoch_bound_checks(std::span<const EpochSample> samples, double eps, double unit = 1.0);

struct LineMetrics {
    bool is_line = false;
    double length = 0.0;
    bool approx = false;
};

LineMetrics line_metrics(const GlobalConfiguration& config, double eps);
/// Vertical line whose consecutive gaps all equal the range radius within 1e-9.
bool is_exact_line(const GlobalConfiguration& config);

struct RelativeDropStats {
    std::optional<double> min_ratio;
    std::size_t violations = 0;
};

/// Relative drop between consecutive values of a potential, skipping values at or below `negligible`.
RelativeDropStats relative_drops(std::span<const double> series, double floor, double negligible = 1e-12,
                                 double tolerance = 1e-9);

} // namespace maxline
