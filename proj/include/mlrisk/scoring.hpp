#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mlrisk/domain.hpp"

namespace mlrisk {

struct ThresholdVerdict {
    Threshold threshold;
    bool passed = false;
    double observed = 0.0;

    bool operator==(const ThresholdVerdict&) const = default;
};

/// Everything derived from one assessment. Factor indices refer to the active
/// (non tailored-out) factors only, in assessment order.
struct ScoreReport {
    std::vector<std::string> factor_ids;
    std::vector<std::string> target_ids;
    std::vector<double> normalized_values;
    std::vector<PerComponent<double>> relative_weights;  // [target * factors + factor]
    std::vector<PerComponent<double>> protection;        // per target
    PerComponent<double> final_scores{};
    std::vector<PerComponent<double>> coverage;  // per target
    PerComponent<double> total_coverage{};
    std::vector<ThresholdVerdict> threshold_verdicts;

    bool operator==(const ScoreReport&) const = default;

    double weight(std::size_t target, std::size_t factor, Component c) const {
        return relative_weights[target * factor_ids.size() + factor][c.index()];
    }

    std::optional<std::size_t> factor_index(std::string_view id) const { return index_of(factor_ids, id); }
    std::optional<std::size_t> target_index(std::string_view id) const { return index_of(target_ids, id); }

private:
    static std::optional<std::size_t> index_of(const std::vector<std::string>& ids, std::string_view id) {
        auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end()) return std::nullopt;
        return static_cast<std::size_t>(it - ids.begin());
    }
};

namespace detail {

inline double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

/// Relative weights, protection, final scores and coverage. No validation and no thresholds.
inline ScoreReport compute_scores(const Assessment& a) {
    ScoreReport r;
    const auto active = active_factor_indices(a);
    const auto targets = normalize_targets(a.targets);
    const std::size_t nf = active.size();
    const std::size_t nt = targets.size();

    for (auto i : active) r.factor_ids.push_back(a.factors[i].id);
    for (const auto& t : targets) {
        r.target_ids.push_back(t.id);
        r.normalized_values.push_back(t.normalized_value);
    }

    r.relative_weights.assign(nt * nf, PerComponent<double>{});
    r.protection.assign(nt, PerComponent<double>{});
    r.coverage.assign(nt, PerComponent<double>{});

    std::vector<double> products(nf);
    for (std::size_t j = 0; j < nt; ++j) {
        for (auto c : kAllComponents) {
            double denominator = 0.0;
            for (std::size_t k = 0; k < nf; ++k) {
                const auto& f = a.factors[active[k]];
                products[k] = static_cast<double>(f.base_weights.at(c)) *
                              static_cast<double>(a.mapping.at(targets[j].id, f.id)) *
                              a.category_multipliers[category_index(f.category)];
                denominator += products[k];
            }
            double p = 0.0;
            for (std::size_t k = 0; k < nf; ++k) {
                const double w = denominator != 0.0 ? products[k] / denominator : 0.0;
                r.relative_weights[j * nf + k][c.index()] = w;
                p += w * a.factors[active[k]].implementation_score;
            }
            r.protection[j][c.index()] = clamp_unit(p);
        }
    }

    for (auto c : kAllComponents) {
        double fs = 0.0;
        double tc = 0.0;
        for (std::size_t j = 0; j < nt; ++j) {
            const double p = r.protection[j][c.index()];
            fs += p;
            r.coverage[j][c.index()] = clamp_unit(p * r.normalized_values[j]);
            tc += r.coverage[j][c.index()];
        }
        r.final_scores[c.index()] = clamp_unit(fs / static_cast<double>(nt));
        r.total_coverage[c.index()] = clamp_unit(tc);
    }
    return r;
}

inline std::size_t require_target(const ScoreReport& r, const std::string& id) {
    auto idx = r.target_index(id);
    if (!idx) throw UnknownId(id);
    return *idx;
}

}  // namespace detail

/// Share of factor `factor_id` in the protection of `target_id` for one component; 0 when no
/// active factor contributes to that target/component at all.
inline double relative_weight(const Assessment& a, const std::string& target_id, const std::string& factor_id,
                              Component c) {
    const auto* f = a.find_factor(factor_id);
    if (!f) throw UnknownId(factor_id);
    if (f->tailored_out) throw TailoredOutFactor(factor_id);
    const auto r = detail::compute_scores(a);
    const auto t = detail::require_target(r, target_id);
    return r.weight(t, *r.factor_index(factor_id), c);
}

inline double relative_weight(const Assessment& a, const std::string& target_id, const std::string& factor_id,
                              SecurityAttribute attribute, EvalDomain domain) {
    return relative_weight(a, target_id, factor_id, Component{attribute, domain});
}

inline double protection_score(const Assessment& a, const std::string& target_id, Component c) {
    const auto r = detail::compute_scores(a);
    return r.protection[detail::require_target(r, target_id)][c.index()];
}

inline double final_score(const Assessment& a, Component c) {
    if (a.targets.empty()) throw EmptyTargetList();
    return detail::compute_scores(a).final_scores[c.index()];
}

inline double coverage(const Assessment& a, const std::string& target_id, Component c) {
    const auto r = detail::compute_scores(a);
    return r.coverage[detail::require_target(r, target_id)][c.index()];
}

inline double total_coverage(const Assessment& a, Component c) {
    if (a.targets.empty()) throw EmptyTargetList();
    return detail::compute_scores(a).total_coverage[c.index()];
}

namespace detail {

inline double category_mean_score(const Assessment& a, const ScoreReport& r, Category category, Component c) {
    double mass = 0.0;
    double weighted = 0.0;
    for (std::size_t k = 0; k < r.factor_ids.size(); ++k) {
        const auto* f = a.find_factor(r.factor_ids[k]);
        if (f->category != category) continue;
        for (std::size_t j = 0; j < r.target_ids.size(); ++j) {
            const double w = r.weight(j, k, c);
            mass += w;
            weighted += w * f->implementation_score;
        }
    }
    return mass > 0.0 ? clamp_unit(weighted / mass) : 0.0;
}

}  // namespace detail

/// Compares each threshold with the matching observed value:
///  - factor scope: the factor's implementation score;
///  - target scope: the target's protection score for the component;
///  - category scope: mean implementation score of the category's factors, weighted by their
///    relative-weight mass for the component over all targets (0 if the category has no mass).
inline std::vector<ThresholdVerdict> check_thresholds(const Assessment& a, const ScoreReport& r) {
    std::vector<ThresholdVerdict> verdicts;
    verdicts.reserve(a.thresholds.size());
    for (const auto& th : a.thresholds) {
        double observed = 0.0;
        if (const auto* s = std::get_if<FactorScope>(&th.scope)) {
            const auto* f = a.find_factor(s->factor_id);
            if (!f) throw UnknownScopeId(s->factor_id);
            observed = f->implementation_score;
        } else if (const auto* s = std::get_if<TargetScope>(&th.scope)) {
            auto t = r.target_index(s->target_id);
            if (!t) throw UnknownScopeId(s->target_id);
            observed = r.protection[*t][s->component.index()];
        } else {
            const auto& cs = std::get<CategoryScope>(th.scope);
            observed = detail::category_mean_score(a, r, cs.category, cs.component);
        }
        verdicts.push_back({th, observed >= th.minimum - kNormalizationTolerance, observed});
    }
    return verdicts;
}

/// Full report. Throws InvalidAssessment when validate_assessment() finds anything.
inline ScoreReport evaluate(const Assessment& a) {
    auto issues = validate_assessment(a);
    if (!issues.empty()) throw InvalidAssessment(std::move(issues));
    auto r = detail::compute_scores(a);
    r.threshold_verdicts = check_thresholds(a, r);
    return r;
}

/// Total coverage is linear in the implementation scores:
///   TC_c(S) = sum_i S_i * g_ic,  g_ic = sum_j W_jic * V_j.
/// The gradients are computed once so that optimisation and sweeps cost O(factors) per point.
class CoverageModel {
public:
    explicit CoverageModel(const Assessment& a) : CoverageModel(a, a.selected_components) {}

    CoverageModel(const Assessment& a, const std::set<Component>& selected) {
        const auto r = detail::compute_scores(a);
        factor_ids_ = r.factor_ids;
        gradients_.assign(r.factor_ids.size(), PerComponent<double>{});
        selected_gradient_.assign(r.factor_ids.size(), 0.0);
        for (std::size_t i = 0; i < r.factor_ids.size(); ++i) {
            for (auto c : kAllComponents) {
                double g = 0.0;
                for (std::size_t j = 0; j < r.target_ids.size(); ++j)
                    g += r.weight(j, i, c) * r.normalized_values[j];
                gradients_[i][c.index()] = g;
            }
            for (auto c : selected) selected_gradient_[i] += gradients_[i][c.index()];
        }
    }

    std::size_t dimension() const noexcept { return factor_ids_.size(); }
    const std::vector<std::string>& factor_ids() const noexcept { return factor_ids_; }
    const PerComponent<double>& gradient(std::size_t factor) const { return gradients_[factor]; }

    PerComponent<double> total_coverage(std::span<const double> scores) const {
        check(scores);
        PerComponent<double> tc{};
        for (std::size_t i = 0; i < scores.size(); ++i)
            for (std::size_t c = 0; c < kComponentCount; ++c) tc[c] += gradients_[i][c] * scores[i];
        for (auto& v : tc) v = detail::clamp_unit(v);
        return tc;
    }

    /// Sum of total coverage over the selected components.
    double selected_total(std::span<const double> scores) const {
        check(scores);
        double tc = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) tc += selected_gradient_[i] * scores[i];
        return tc;
    }

private:
    void check(std::span<const double> scores) const {
        if (scores.size() != factor_ids_.size()) throw DimensionMismatch(factor_ids_.size(), scores.size());
    }

    std::vector<std::string> factor_ids_;
    std::vector<PerComponent<double>> gradients_;
    std::vector<double> selected_gradient_;
};

}  // namespace mlrisk
