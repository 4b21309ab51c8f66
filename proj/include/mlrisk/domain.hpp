#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mlrisk/errors.hpp"

namespace mlrisk {

// Declaration order is the output order: C < I < A, Proactive < Reactive.
enum class SecurityAttribute : std::uint8_t { Confidentiality, Integrity, Availability };
enum class EvalDomain : std::uint8_t { Proactive, Reactive };
enum class Category : std::uint8_t { Data, Model, ExecutionEnvironment, SecurityControls };
enum class TargetKind : std::uint8_t { Asset, Task };

inline constexpr std::array<SecurityAttribute, 3> kAttributes{
    SecurityAttribute::Confidentiality, SecurityAttribute::Integrity, SecurityAttribute::Availability};
inline constexpr std::array<EvalDomain, 2> kDomains{EvalDomain::Proactive, EvalDomain::Reactive};
inline constexpr std::array<Category, 4> kCategories{Category::Data, Category::Model,
                                                     Category::ExecutionEnvironment,
                                                     Category::SecurityControls};

inline constexpr int kMinLevel = 0;
inline constexpr int kMaxLevel = 5;
inline constexpr int kMinRawValue = 1;
inline constexpr int kMaxRawValue = 100;
inline constexpr int kSchemaVersion = 1;
inline constexpr double kNormalizationTolerance = 1e-9;

/// A (security attribute, domain) pair; one of the six coverage components.
struct Component {
    SecurityAttribute attribute{};
    EvalDomain domain{};

    constexpr std::size_t index() const noexcept {
        return static_cast<std::size_t>(attribute) * 2 + static_cast<std::size_t>(domain);
    }
    constexpr auto operator<=>(const Component& other) const noexcept { return index() <=> other.index(); }
    constexpr bool operator==(const Component& other) const noexcept { return index() == other.index(); }
};

inline constexpr std::size_t kComponentCount = 6;

/// All six components in canonical order C/P, C/R, I/P, I/R, A/P, A/R.
inline constexpr std::array<Component, kComponentCount> kAllComponents{{
    {SecurityAttribute::Confidentiality, EvalDomain::Proactive},
    {SecurityAttribute::Confidentiality, EvalDomain::Reactive},
    {SecurityAttribute::Integrity, EvalDomain::Proactive},
    {SecurityAttribute::Integrity, EvalDomain::Reactive},
    {SecurityAttribute::Availability, EvalDomain::Proactive},
    {SecurityAttribute::Availability, EvalDomain::Reactive},
}};

template <typename T>
using PerComponent = std::array<T, kComponentCount>;

template <typename T>
using PerCategory = std::array<T, kCategories.size()>;

constexpr std::size_t category_index(Category c) noexcept { return static_cast<std::size_t>(c); }

// ---------------------------------------------------------------------------
// Names. Short forms are used in files and on the command line.

constexpr std::string_view short_name(SecurityAttribute a) noexcept {
    switch (a) {
        case SecurityAttribute::Confidentiality: return "C";
        case SecurityAttribute::Integrity: return "I";
        case SecurityAttribute::Availability: return "A";
    }
    return "?";
}

constexpr std::string_view long_name(SecurityAttribute a) noexcept {
    switch (a) {
        case SecurityAttribute::Confidentiality: return "confidentiality";
        case SecurityAttribute::Integrity: return "integrity";
        case SecurityAttribute::Availability: return "availability";
    }
    return "?";
}

constexpr std::string_view to_string(EvalDomain d) noexcept {
    return d == EvalDomain::Proactive ? "proactive" : "reactive";
}

constexpr std::string_view to_string(Category c) noexcept {
    switch (c) {
        case Category::Data: return "Data";
        case Category::Model: return "Model";
        case Category::ExecutionEnvironment: return "ExecutionEnvironment";
        case Category::SecurityControls: return "SecurityControls";
    }
    return "?";
}

constexpr std::string_view to_string(TargetKind k) noexcept { return k == TargetKind::Asset ? "Asset" : "Task"; }

/// "C/P", "A/R", ...
inline std::string to_string(Component c) {
    std::string s{short_name(c.attribute)};
    s += '/';
    s += c.domain == EvalDomain::Proactive ? 'P' : 'R';
    return s;
}

inline std::optional<SecurityAttribute> parse_attribute(std::string_view s) {
    for (auto a : kAttributes)
        if (s == short_name(a) || s == long_name(a)) return a;
    return std::nullopt;
}

inline std::optional<EvalDomain> parse_domain(std::string_view s) {
    if (s == "P" || s == "proactive") return EvalDomain::Proactive;
    if (s == "R" || s == "reactive") return EvalDomain::Reactive;
    return std::nullopt;
}

inline std::optional<Category> parse_category(std::string_view s) {
    for (auto c : kCategories)
        if (s == to_string(c)) return c;
    return std::nullopt;
}

inline std::optional<TargetKind> parse_target_kind(std::string_view s) {
    if (s == "Asset") return TargetKind::Asset;
    if (s == "Task") return TargetKind::Task;
    return std::nullopt;
}

/// Accepts "C/P" style names.
inline std::optional<Component> parse_component(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    auto attribute = parse_attribute(s.substr(0, slash));
    auto domain = parse_domain(s.substr(slash + 1));
    if (!attribute || !domain) return std::nullopt;
    return Component{*attribute, *domain};
}

// ---------------------------------------------------------------------------

/// Contribution level (0..5) of a factor to each attribute in each domain.
/// Out-of-range levels can be stored so that validation can report them.
class BaseWeightMatrix {
public:
    BaseWeightMatrix() = default;

    /// Rows in C, I, A order.
    static BaseWeightMatrix from_rows(std::array<int, 3> proactive, std::array<int, 3> reactive) {
        BaseWeightMatrix m;
        for (std::size_t a = 0; a < 3; ++a) {
            m.set({kAttributes[a], EvalDomain::Proactive}, proactive[a]);
            m.set({kAttributes[a], EvalDomain::Reactive}, reactive[a]);
        }
        return m;
    }

    int at(Component c) const noexcept { return levels_[c.index()]; }
    void set(Component c, int level) noexcept { levels_[c.index()] = level; }

    bool operator==(const BaseWeightMatrix&) const = default;

private:
    PerComponent<int> levels_{};
};

struct EvaluationFactor {
    std::string id;
    std::string name;
    Category category = Category::SecurityControls;
    BaseWeightMatrix base_weights;
    double max_cost = 0.0;
    double implementation_score = 0.0;
    bool tailored_out = false;
    std::string tailoring_justification;  // empty when none was given

    bool operator==(const EvaluationFactor&) const = default;
};

struct ProtectionTarget {
    std::string id;
    std::string name;
    TargetKind kind = TargetKind::Asset;
    int raw_value = 1;
    double normalized_value = 0.0;  // derived, see normalize_targets()

    bool operator==(const ProtectionTarget&) const = default;
};

/// Sparse storage for the dense target x factor grid; absent entries read as 0.
class MappingMatrix {
public:
    using Key = std::pair<std::string, std::string>;  // (target id, factor id)

    int at(const std::string& target_id, const std::string& factor_id) const {
        auto it = entries_.find(Key{target_id, factor_id});
        return it == entries_.end() ? 0 : it->second;
    }

    void set(const std::string& target_id, const std::string& factor_id, int level) {
        if (level == 0)
            entries_.erase(Key{target_id, factor_id});
        else
            entries_[Key{target_id, factor_id}] = level;
    }

    /// Non-zero entries, ordered by (target id, factor id).
    const std::map<Key, int>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    void clear() noexcept { entries_.clear(); }

    bool operator==(const MappingMatrix&) const = default;

private:
    std::map<Key, int> entries_;
};

struct FactorScope {
    std::string factor_id;
    bool operator==(const FactorScope&) const = default;
};

struct TargetScope {
    std::string target_id;
    Component component;
    bool operator==(const TargetScope&) const = default;
};

struct CategoryScope {
    Category category = Category::Data;
    Component component;
    bool operator==(const CategoryScope&) const = default;
};

using ThresholdScope = std::variant<FactorScope, TargetScope, CategoryScope>;

struct Threshold {
    ThresholdScope scope;
    double minimum = 0.0;

    bool operator==(const Threshold&) const = default;
};

inline std::set<Component> all_components_set() { return {kAllComponents.begin(), kAllComponents.end()}; }

struct Assessment {
    std::string name;
    std::vector<EvaluationFactor> factors;
    std::vector<ProtectionTarget> targets;
    MappingMatrix mapping;
    std::set<Component> selected_components = all_components_set();
    std::vector<Threshold> thresholds;
    /// Optional per-category emphasis applied to BW*M before normalisation. All 1 reproduces
    /// the plain relative-weight formula.
    PerCategory<double> category_multipliers{1.0, 1.0, 1.0, 1.0};
    int schema_version = kSchemaVersion;

    bool operator==(const Assessment&) const = default;

    const EvaluationFactor* find_factor(std::string_view id) const {
        auto it = std::find_if(factors.begin(), factors.end(), [&](const auto& f) { return f.id == id; });
        return it == factors.end() ? nullptr : &*it;
    }
    EvaluationFactor* find_factor(std::string_view id) {
        return const_cast<EvaluationFactor*>(std::as_const(*this).find_factor(id));
    }
    const ProtectionTarget* find_target(std::string_view id) const {
        auto it = std::find_if(targets.begin(), targets.end(), [&](const auto& t) { return t.id == id; });
        return it == targets.end() ? nullptr : &*it;
    }
};

// ---------------------------------------------------------------------------

/// Fills normalized_value = raw / sum(raw). Throws EmptyTargetList or RawValueOutOfRange.
inline std::vector<ProtectionTarget> normalize_targets(std::vector<ProtectionTarget> targets) {
    if (targets.empty()) throw EmptyTargetList();
    long long total = 0;
    for (const auto& t : targets) {
        if (t.raw_value < kMinRawValue || t.raw_value > kMaxRawValue) throw RawValueOutOfRange(t.id);
        total += t.raw_value;
    }
    for (auto& t : targets) t.normalized_value = static_cast<double>(t.raw_value) / static_cast<double>(total);
    return targets;
}

/// Indices of the factors that take part in scoring (not tailored out), in assessment order.
inline std::vector<std::size_t> active_factor_indices(const Assessment& a) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        if (!a.factors[i].tailored_out) out.push_back(i);
    return out;
}

inline std::vector<std::string> active_factor_ids(const Assessment& a) {
    std::vector<std::string> ids;
    for (auto i : active_factor_indices(a)) ids.push_back(a.factors[i].id);
    return ids;
}

/// Implementation scores of the active factors, in assessment order.
inline std::vector<double> current_scores(const Assessment& a) {
    std::vector<double> s;
    for (auto i : active_factor_indices(a)) s.push_back(a.factors[i].implementation_score);
    return s;
}

/// Copy of `a` with the active factors' implementation scores replaced by `scores`.
inline Assessment with_scores(Assessment a, const std::vector<double>& scores) {
    const auto active = active_factor_indices(a);
    if (scores.size() != active.size()) throw DimensionMismatch(active.size(), scores.size());
    for (std::size_t k = 0; k < active.size(); ++k) a.factors[active[k]].implementation_score = scores[k];
    return a;
}

namespace detail {

inline bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

inline bool in_unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace detail

/// Every violated invariant. An empty result means the assessment can be evaluated.
inline std::vector<ValidationIssue> validate_assessment(const Assessment& a) {
    std::vector<ValidationIssue> issues;
    auto add = [&](std::string id, std::string field, std::string message) {
        issues.push_back({std::move(id), std::move(field), std::move(message)});
    };

    if (a.schema_version != kSchemaVersion)
        add("", "schema_version", "unsupported schema version " + std::to_string(a.schema_version));

    std::set<std::string> factor_ids;
    std::size_t active = 0;
    for (const auto& f : a.factors) {
        if (f.id.empty()) add("", "factors.id", "empty factor id");
        if (!factor_ids.insert(f.id).second) add(f.id, "id", "duplicate factor id");
        for (auto c : kAllComponents) {
            const int w = f.base_weights.at(c);
            if (w < kMinLevel || w > kMaxLevel)
                add(f.id, "base_weights." + to_string(c), "base weight out of range [0, 5]");
        }
        if (!std::isfinite(f.max_cost) || f.max_cost < 0.0) add(f.id, "max_cost", "max cost must be >= 0");
        if (!detail::in_unit_interval(f.implementation_score))
            add(f.id, "implementation_score", "implementation score out of range [0, 1]");
        if (f.tailored_out && detail::is_blank(f.tailoring_justification))
            add(f.id, "tailoring_justification", "missing tailoring justification");
        if (!f.tailored_out) ++active;
    }
    if (active == 0) add("", "factors", "no active evaluation factors");

    std::set<std::string> target_ids;
    for (const auto& t : a.targets) {
        if (t.id.empty()) add("", "targets.id", "empty target id");
        if (!target_ids.insert(t.id).second) add(t.id, "id", "duplicate target id");
        if (t.raw_value < kMinRawValue || t.raw_value > kMaxRawValue)
            add(t.id, "raw_value", "raw value out of range [1, 100]");
    }
    if (a.targets.empty()) add("", "targets", "no targets");

    for (const auto& [key, level] : a.mapping.entries()) {
        const auto& [target_id, factor_id] = key;
        const std::string where = target_id + "/" + factor_id;
        if (!target_ids.count(target_id)) add(where, "mapping", "mapping references unknown target");
        if (!factor_ids.count(factor_id)) add(where, "mapping", "mapping references unknown factor");
        if (level < kMinLevel || level > kMaxLevel) add(where, "mapping", "mapping out of range [0, 5]");
    }

    if (a.selected_components.empty()) add("", "selected_components", "no selected components");

    for (std::size_t k = 0; k < a.thresholds.size(); ++k) {
        const auto& th = a.thresholds[k];
        const std::string where = "threshold[" + std::to_string(k) + "]";
        if (!detail::in_unit_interval(th.minimum)) add(where, "minimum", "threshold minimum out of range [0, 1]");
        if (auto* s = std::get_if<FactorScope>(&th.scope); s && !factor_ids.count(s->factor_id))
            add(where, "scope", "threshold references unknown factor '" + s->factor_id + "'");
        if (auto* s = std::get_if<TargetScope>(&th.scope); s && !target_ids.count(s->target_id))
            add(where, "scope", "threshold references unknown target '" + s->target_id + "'");
    }

    for (auto c : kCategories) {
        const double m = a.category_multipliers[category_index(c)];
        if (!std::isfinite(m) || m < 0.0)
            add("", "category_multipliers." + std::string(to_string(c)), "category multiplier must be >= 0");
    }
    return issues;
}

}  // namespace mlrisk
