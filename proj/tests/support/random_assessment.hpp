#pragma once

#include <random>
#include <string>
#include <vector>

#include "mlrisk/domain.hpp"

namespace mlrisk::testkit {

struct RandomShape {
    int min_factors = 1;
    int max_factors = 6;
    int max_targets = 6;
    bool tailoring = true;
    bool thresholds = true;
    bool multipliers = true;
    bool component_subsets = true;
};

class RandomAssessments {
public:
    explicit RandomAssessments(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }
    bool chance(double p) { return uniform() < p; }
    std::mt19937_64& engine() { return rng_; }

    double score() {
        switch (integer(0, 5)) {
            case 0: return 0.0;
            case 1: return 1.0;
            case 2: return integer(0, 10) / 10.0;
            default: return uniform();
        }
    }

    std::string text() {
        static const std::vector<std::string> pool{"Backups", "Access \"control\"", "Données", "a,b;c", "x\ny",
                                                   "", "Modèle robuste", "tab\there", "∑ weights", "plain"};
        return pool[static_cast<std::size_t>(integer(0, static_cast<int>(pool.size()) - 1))];
    }

    /// A valid, normalised assessment.
    Assessment next(const RandomShape& shape = {}) {
        Assessment a;
        a.name = text();
        const int nf = integer(shape.min_factors, shape.max_factors);
        const int nt = integer(1, shape.max_targets);
        const double weight_density = uniform(0.3, 1.0);
        const double mapping_density = uniform(0.2, 1.0);

        for (int i = 0; i < nf; ++i) {
            EvaluationFactor f;
            f.id = "EF" + std::to_string(i + 1);
            f.name = text();
            f.category = kCategories[static_cast<std::size_t>(integer(0, 3))];
            for (auto c : kAllComponents) f.base_weights.set(c, chance(weight_density) ? integer(0, 5) : 0);
            f.max_cost = chance(0.1) ? 0.0 : (chance(0.5) ? integer(0, 50) * 1000.0 : uniform(0, 50000));
            f.implementation_score = score();
            if (shape.tailoring && nf > 1 && chance(0.15)) {
                f.tailored_out = true;
                f.tailoring_justification = "not applicable: " + text() + "!";
            }
            a.factors.push_back(std::move(f));
        }
        if (std::all_of(a.factors.begin(), a.factors.end(), [](const auto& f) { return f.tailored_out; })) {
            a.factors.front().tailored_out = false;
            a.factors.front().tailoring_justification.clear();
        }

        for (int j = 0; j < nt; ++j) {
            ProtectionTarget t;
            t.id = (chance(0.5) ? "A" : "T") + std::to_string(j + 1);
            t.name = text();
            t.kind = t.id[0] == 'A' ? TargetKind::Asset : TargetKind::Task;
            t.raw_value = integer(kMinRawValue, kMaxRawValue);
            a.targets.push_back(std::move(t));
        }
        a.targets = normalize_targets(std::move(a.targets));

        for (const auto& t : a.targets)
            for (const auto& f : a.factors)
                if (chance(mapping_density)) a.mapping.set(t.id, f.id, integer(0, 5));

        if (shape.component_subsets && chance(0.3)) {
            a.selected_components.clear();
            for (auto c : kAllComponents)
                if (chance(0.5)) a.selected_components.insert(c);
            if (a.selected_components.empty()) a.selected_components.insert(kAllComponents[integer(0, 5)]);
        }

        if (shape.multipliers && chance(0.3))
            for (auto& m : a.category_multipliers) m = chance(0.2) ? 0.0 : uniform(0.0, 3.0);

        if (shape.thresholds) {
            const int count = integer(0, 3);
            for (int k = 0; k < count; ++k) {
                Threshold th;
                th.minimum = integer(0, 10) / 10.0;
                const auto comp = kAllComponents[static_cast<std::size_t>(integer(0, 5))];
                switch (integer(0, 2)) {
                    case 0: th.scope = FactorScope{a.factors[static_cast<std::size_t>(integer(0, nf - 1))].id}; break;
                    case 1: th.scope = TargetScope{a.targets[static_cast<std::size_t>(integer(0, nt - 1))].id, comp}; break;
                    default: th.scope = CategoryScope{kCategories[static_cast<std::size_t>(integer(0, 3))], comp}; break;
                }
                a.thresholds.push_back(std::move(th));
            }
        }
        return a;
    }

    /// Scores for the active factors of `a`, each in [lo, 1].
    std::vector<double> scores_for(const Assessment& a, double lo = 0.0) {
        std::vector<double> s(active_factor_indices(a).size());
        for (auto& v : s) v = uniform(lo, 1.0);
        return s;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace mlrisk::testkit
