#pragma once

#include <cmath>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mlrisk/domain.hpp"
#include "mlrisk/scoring.hpp"

namespace mlrisk {

inline constexpr double kInfeasibleRatio = std::numeric_limits<double>::infinity();

/// Cubic cost curve: Y = ((2S - 1)^3 + 1) * Ymax / 2. Steep near both ends, flat around S = 0.5.
inline double current_cost(double score, double max_cost) {
    if (!detail::in_unit_interval(score)) throw ScoreOutOfRange(score);
    const double x = 2.0 * score - 1.0;
    return (x * x * x + 1.0) * max_cost / 2.0;
}

inline double current_cost(const EvaluationFactor& f) { return current_cost(f.implementation_score, f.max_cost); }

struct CostReport {
    std::vector<std::string> factor_ids;
    std::vector<double> per_factor_cost;
    double total_cost = 0.0;
    double tc_sel = 0.0;
    double efficiency_ratio = kInfeasibleRatio;  // +inf when tc_sel == 0

    bool operator==(const CostReport&) const = default;
};

/// Total cost of the active factors divided by the selected total coverage.
/// Built once per assessment; operator() is cheap enough for grid enumeration.
class EfficiencyObjective {
public:
    explicit EfficiencyObjective(const Assessment& a) : EfficiencyObjective(a, a.selected_components) {}

    EfficiencyObjective(const Assessment& a, const std::set<Component>& selected) : coverage_(a, selected) {
        for (auto i : active_factor_indices(a)) max_costs_.push_back(a.factors[i].max_cost);
    }

    std::size_t dimension() const noexcept { return max_costs_.size(); }
    const std::vector<std::string>& factor_ids() const noexcept { return coverage_.factor_ids(); }
    const CoverageModel& coverage() const noexcept { return coverage_; }
    const std::vector<double>& max_costs() const noexcept { return max_costs_; }

    double total_cost(std::span<const double> scores) const {
        check(scores);
        double total = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) total += current_cost(scores[i], max_costs_[i]);
        return total;
    }

    double ratio(std::span<const double> scores) const {
        const double cost = total_cost(scores);
        const double tc = coverage_.selected_total(scores);
        return tc > 0.0 ? cost / tc : kInfeasibleRatio;
    }

    double operator()(std::span<const double> scores) const { return ratio(scores); }

    CostReport report(std::span<const double> scores) const {
        check(scores);
        CostReport r;
        r.factor_ids = factor_ids();
        for (std::size_t i = 0; i < scores.size(); ++i) {
            r.per_factor_cost.push_back(current_cost(scores[i], max_costs_[i]));
            r.total_cost += r.per_factor_cost.back();
        }
        r.tc_sel = coverage_.selected_total(scores);
        r.efficiency_ratio = r.tc_sel > 0.0 ? r.total_cost / r.tc_sel : kInfeasibleRatio;
        return r;
    }

private:
    void check(std::span<const double> scores) const {
        if (scores.size() != max_costs_.size()) throw DimensionMismatch(max_costs_.size(), scores.size());
    }

    CoverageModel coverage_;
    std::vector<double> max_costs_;
};

/// Ratio at one score vector (one entry per active factor). +inf when nothing is covered.
inline double efficiency_ratio(const Assessment& a, std::span<const double> scores) {
    return EfficiencyObjective(a)(scores);
}

inline CostReport cost_report(const Assessment& a, std::span<const double> scores) {
    return EfficiencyObjective(a).report(scores);
}

inline CostReport cost_report(const Assessment& a) {
    const auto scores = current_scores(a);
    return cost_report(a, scores);
}

}  // namespace mlrisk
