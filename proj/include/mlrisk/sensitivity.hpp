#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mlrisk/cost.hpp"
#include "mlrisk/domain.hpp"
#include "mlrisk/scoring.hpp"

namespace mlrisk {

inline constexpr int kDefaultSweepSteps = 11;

struct SweepSample {
    double score = 0.0;
    PerComponent<double> total_coverage{};
    bool operator==(const SweepSample&) const = default;
};

struct SweepResult {
    std::string ef_id;
    std::vector<SweepSample> samples;     // ascending by score
    std::vector<double> baseline_scores;  // one per active factor; the swept entry is ignored
    bool operator==(const SweepResult&) const = default;
};

struct SurfaceResult {
    std::string ef_x;
    std::string ef_y;
    std::vector<double> fixed_scores;
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<std::vector<double>> grid;  // grid[y][x]; +inf where nothing is covered
    bool operator==(const SurfaceResult&) const = default;
};

struct FactorInfluence {
    std::string ef_id;
    PerComponent<double> influence{};
    double total() const { return std::accumulate(influence.begin(), influence.end(), 0.0); }
    bool operator==(const FactorInfluence&) const = default;
};

namespace detail {

/// Position of `id` among the active factors. Throws UnknownId / TailoredOutFactor.
inline std::size_t active_position(const Assessment& a, const std::string& id) {
    const auto* f = a.find_factor(id);
    if (!f) throw UnknownId(id);
    if (f->tailored_out) throw TailoredOutFactor(id);
    const auto ids = active_factor_ids(a);
    return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
}

inline std::vector<double> evenly_spaced(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        v[static_cast<std::size_t>(k)] = k == count - 1 ? hi : lo + (hi - lo) * k / (count - 1);
    return v;
}

}  // namespace detail

/// Total coverage at `steps` evenly spaced scores of one factor in [0, 1], with every other
/// active factor held at its baseline score.
inline SweepResult sweep_ef(const Assessment& a, const std::string& ef_id, int steps,
                            const std::vector<double>& baseline) {
    const auto pos = detail::active_position(a, ef_id);
    if (steps < 2) throw InvalidConfig("sweep needs at least 2 steps");
    const CoverageModel model(a);
    if (baseline.size() != model.dimension()) throw DimensionMismatch(model.dimension(), baseline.size());

    SweepResult result{ef_id, {}, baseline};
    std::vector<double> scores = baseline;
    for (double s : detail::evenly_spaced(0.0, 1.0, steps)) {
        scores[pos] = s;
        result.samples.push_back({s, model.total_coverage(scores)});
    }
    return result;
}

/// Baseline of all zeros.
inline SweepResult sweep_ef(const Assessment& a, const std::string& ef_id, int steps = kDefaultSweepSteps) {
    return sweep_ef(a, ef_id, steps, std::vector<double>(active_factor_indices(a).size(), 0.0));
}

/// Efficiency ratio over [min_score, 1]^2 for two factors, the rest held at `fixed`.
inline SurfaceResult efficiency_surface(const Assessment& a, const std::string& ef_x, const std::string& ef_y,
                                        const std::vector<double>& fixed, int resolution, double min_score = 0.1) {
    if (ef_x == ef_y) throw SameAxis(ef_x);
    const auto px = detail::active_position(a, ef_x);
    const auto py = detail::active_position(a, ef_y);
    if (resolution < 2) throw InvalidConfig("surface resolution must be >= 2");
    if (!(min_score >= 0.0 && min_score < 1.0)) throw InvalidConfig("min score must lie in [0, 1)");
    const EfficiencyObjective objective(a);
    if (fixed.size() != objective.dimension()) throw DimensionMismatch(objective.dimension(), fixed.size());

    SurfaceResult result{ef_x, ef_y, fixed, {}, {}, {}};
    result.x_values = detail::evenly_spaced(min_score, 1.0, resolution);
    result.y_values = result.x_values;
    std::vector<double> scores = fixed;
    for (double y : result.y_values) {
        scores[py] = y;
        auto& row = result.grid.emplace_back();
        for (double x : result.x_values) {
            scores[px] = x;
            row.push_back(objective(scores));
        }
    }
    return result;
}

/// Every other active factor at the same score `fixed_score`.
inline SurfaceResult efficiency_surface(const Assessment& a, const std::string& ef_x, const std::string& ef_y,
                                        double fixed_score, int resolution, double min_score = 0.1) {
    return efficiency_surface(a, ef_x, ef_y, std::vector<double>(active_factor_indices(a).size(), fixed_score),
                              resolution, min_score);
}

/// Influence of each active factor: TC(S_i = 1) - TC(S_i = 0) with the others at their current
/// implementation scores, which is the slope of total coverage in that score.
/// Sorted by summed influence, descending; ties by id.
inline std::vector<FactorInfluence> rank_factors(const Assessment& a) {
    const CoverageModel model(a);
    std::vector<FactorInfluence> out;
    for (std::size_t i = 0; i < model.dimension(); ++i) out.push_back({model.factor_ids()[i], model.gradient(i)});
    std::stable_sort(out.begin(), out.end(), [](const FactorInfluence& l, const FactorInfluence& r) {
        const double lt = l.total();
        const double rt = r.total();
        if (lt != rt) return lt > rt;
        return l.ef_id < r.ef_id;
    });
    return out;
}

}  // namespace mlrisk
