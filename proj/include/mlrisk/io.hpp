#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "mlrisk/catalog.hpp"
#include "mlrisk/cost.hpp"
#include "mlrisk/domain.hpp"
#include "mlrisk/optimizer.hpp"
#include "mlrisk/scoring.hpp"
#include "mlrisk/sensitivity.hpp"

// Assessment documents are JSON with sorted keys and two-space indentation. Saving is a pure
// function of the assessment, so an unchanged assessment re-saves byte for byte.
// See docs/file-format.md for the schema.

namespace mlrisk::io {

using json = nlohmann::json;

/// Shortest decimal that round-trips; "inf" / "-inf" / "nan" for non-finite values.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

/// +inf is written as null in JSON documents.
inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------------------
// Assessment <-> JSON

inline json base_weights_to_json(const BaseWeightMatrix& m) {
    json out = json::object();
    for (auto d : kDomains) {
        json row = json::array();
        for (auto a : kAttributes) row.push_back(m.at({a, d}));
        out[std::string(to_string(d))] = row;
    }
    return out;
}

inline json threshold_to_json(const Threshold& th) {
    json j;
    if (const auto* s = std::get_if<FactorScope>(&th.scope)) {
        j["scope"] = "factor";
        j["factor"] = s->factor_id;
    } else if (const auto* s = std::get_if<TargetScope>(&th.scope)) {
        j["scope"] = "target";
        j["target"] = s->target_id;
        j["component"] = to_string(s->component);
    } else {
        const auto& cs = std::get<CategoryScope>(th.scope);
        j["scope"] = "category";
        j["category"] = std::string(to_string(cs.category));
        j["component"] = to_string(cs.component);
    }
    j["minimum"] = th.minimum;
    return j;
}

inline json assessment_to_json(const Assessment& a) {
    json j;
    j["name"] = a.name;

    json factors = json::array();
    for (const auto& f : a.factors) {
        factors.push_back({
            {"id", f.id},
            {"name", f.name},
            {"category", std::string(to_string(f.category))},
            {"base_weights", base_weights_to_json(f.base_weights)},
            {"max_cost", f.max_cost},
            {"implementation_score", f.implementation_score},
            {"tailored_out", f.tailored_out},
            {"tailoring_justification", f.tailoring_justification},
        });
    }
    j["factors"] = factors;

    json targets = json::array();
    for (const auto& t : a.targets)
        targets.push_back({{"id", t.id}, {"name", t.name}, {"kind", std::string(to_string(t.kind))},
                           {"raw_value", t.raw_value}});
    j["targets"] = targets;

    // Dense over the declared ids, plus any stray entries so that nothing is silently dropped.
    json mapping = json::object();
    for (const auto& t : a.targets) {
        json row = json::object();
        for (const auto& f : a.factors) row[f.id] = a.mapping.at(t.id, f.id);
        mapping[t.id] = row;
    }
    for (const auto& [key, level] : a.mapping.entries()) mapping[key.first][key.second] = level;
    j["mapping"] = mapping;

    json selected = json::array();
    for (auto c : a.selected_components) selected.push_back(to_string(c));
    j["selected_components"] = selected;

    json thresholds = json::array();
    for (const auto& th : a.thresholds) thresholds.push_back(threshold_to_json(th));
    j["thresholds"] = thresholds;

    json multipliers = json::object();
    for (auto c : kCategories) multipliers[std::string(to_string(c))] = a.category_multipliers[category_index(c)];
    j["category_multipliers"] = multipliers;
    return j;
}

namespace detail {

/// Strict field access with JSON-pointer style paths in error messages.
class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

    const json& node() const noexcept { return node_; }
    const std::string& path() const noexcept { return path_; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(0, (path_.empty() ? std::string("/") : path_) + ": " + message);
    }

    void expect_object(std::initializer_list<std::string_view> allowed) const {
        if (!node_.is_object()) fail("expected an object");
        for (const auto& item : node_.items()) {
            bool known = false;
            for (auto name : allowed) known = known || item.key() == name;
            if (!known) Reader(node_, path_ + "/" + item.key()).fail("unknown field '" + item.key() + "'");
        }
    }

    bool has(std::string_view key) const { return node_.contains(std::string(key)); }

    Reader at(std::string_view key) const {
        if (!has(key)) fail("missing field '" + std::string(key) + "'");
        return {node_.at(std::string(key)), path_ + "/" + std::string(key)};
    }

    Reader at(std::size_t index) const { return {node_.at(index), path_ + "/" + std::to_string(index)}; }

    std::string string() const {
        if (!node_.is_string()) fail("expected a string");
        return node_.get<std::string>();
    }

    double number() const {
        if (!node_.is_number()) fail("expected a number");
        return node_.get<double>();
    }

    int integer() const {
        if (!node_.is_number_integer()) fail("expected an integer");
        const auto v = node_.get<long long>();
        if (v < -1'000'000 || v > 1'000'000) fail("integer out of range");
        return static_cast<int>(v);
    }

    bool boolean() const {
        if (!node_.is_boolean()) fail("expected true or false");
        return node_.get<bool>();
    }

    std::size_t array_size() const {
        if (!node_.is_array()) fail("expected an array");
        return node_.size();
    }

private:
    const json& node_;
    std::string path_;
};

inline Component read_component(const Reader& r) {
    const auto text = r.string();
    auto c = parse_component(text);
    if (!c) r.fail("unknown component '" + text + "' (expected e.g. C/P or A/R)");
    return *c;
}

inline Category read_category(const Reader& r) {
    const auto text = r.string();
    auto c = parse_category(text);
    if (!c) r.fail("unknown category '" + text + "'");
    return *c;
}

inline BaseWeightMatrix read_base_weights(const Reader& r) {
    r.expect_object({"proactive", "reactive"});
    BaseWeightMatrix m;
    for (auto d : kDomains) {
        const auto row = r.at(to_string(d));
        if (row.array_size() != 3) row.fail("expected 3 levels in C, I, A order");
        for (std::size_t k = 0; k < 3; ++k) m.set({kAttributes[k], d}, row.at(k).integer());
    }
    return m;
}

inline Threshold read_threshold(const Reader& r) {
    const auto scope = r.at("scope").string();
    Threshold th;
    if (scope == "factor") {
        r.expect_object({"scope", "factor", "minimum"});
        th.scope = FactorScope{r.at("factor").string()};
    } else if (scope == "target") {
        r.expect_object({"scope", "target", "component", "minimum"});
        th.scope = TargetScope{r.at("target").string(), read_component(r.at("component"))};
    } else if (scope == "category") {
        r.expect_object({"scope", "category", "component", "minimum"});
        th.scope = CategoryScope{read_category(r.at("category")), read_component(r.at("component"))};
    } else {
        r.at("scope").fail("unknown threshold scope '" + scope + "'");
    }
    th.minimum = r.at("minimum").number();
    return th;
}

}  // namespace detail

/// Builds an assessment from the "assessment" object of a document. Unknown fields are rejected.
/// Normalised target values are filled in; domain validation is left to the caller.
inline Assessment assessment_from_json(const json& node, const std::string& path = "/assessment") {
    using detail::Reader;
    const Reader r(node, path);
    r.expect_object({"name", "factors", "targets", "mapping", "selected_components", "thresholds",
                     "category_multipliers"});
    Assessment a;
    a.name = r.at("name").string();

    const auto factors = r.at("factors");
    for (std::size_t i = 0; i < factors.array_size(); ++i) {
        const auto fr = factors.at(i);
        fr.expect_object({"id", "name", "category", "base_weights", "max_cost", "implementation_score",
                          "tailored_out", "tailoring_justification"});
        EvaluationFactor f;
        f.id = fr.at("id").string();
        f.name = fr.at("name").string();
        f.category = detail::read_category(fr.at("category"));
        f.base_weights = detail::read_base_weights(fr.at("base_weights"));
        f.max_cost = fr.at("max_cost").number();
        f.implementation_score = fr.at("implementation_score").number();
        if (fr.has("tailored_out")) f.tailored_out = fr.at("tailored_out").boolean();
        if (fr.has("tailoring_justification")) f.tailoring_justification = fr.at("tailoring_justification").string();
        a.factors.push_back(std::move(f));
    }

    const auto targets = r.at("targets");
    for (std::size_t i = 0; i < targets.array_size(); ++i) {
        const auto tr = targets.at(i);
        tr.expect_object({"id", "name", "kind", "raw_value"});
        ProtectionTarget t;
        t.id = tr.at("id").string();
        t.name = tr.at("name").string();
        const auto kind = tr.at("kind").string();
        auto parsed = parse_target_kind(kind);
        if (!parsed) tr.at("kind").fail("unknown kind '" + kind + "' (expected Asset or Task)");
        t.kind = *parsed;
        t.raw_value = tr.at("raw_value").integer();
        a.targets.push_back(std::move(t));
    }

    const auto mapping = r.at("mapping");
    if (!mapping.node().is_object()) mapping.fail("expected an object keyed by target id");
    for (const auto& row : mapping.node().items()) {
        const Reader rr(row.value(), mapping.path() + "/" + row.key());
        if (!rr.node().is_object()) rr.fail("expected an object keyed by factor id");
        for (const auto& cell : rr.node().items())
            a.mapping.set(row.key(), cell.key(), Reader(cell.value(), rr.path() + "/" + cell.key()).integer());
    }

    if (r.has("selected_components")) {
        const auto sel = r.at("selected_components");
        a.selected_components.clear();
        for (std::size_t i = 0; i < sel.array_size(); ++i) {
            if (!a.selected_components.insert(detail::read_component(sel.at(i))).second)
                sel.at(i).fail("duplicate component");
        }
    }

    if (r.has("thresholds")) {
        const auto ths = r.at("thresholds");
        for (std::size_t i = 0; i < ths.array_size(); ++i) a.thresholds.push_back(detail::read_threshold(ths.at(i)));
    }

    if (r.has("category_multipliers")) {
        const auto cm = r.at("category_multipliers");
        cm.expect_object({"Data", "Model", "ExecutionEnvironment", "SecurityControls"});
        for (auto c : kCategories) {
            const std::string key(to_string(c));
            if (cm.has(key)) a.category_multipliers[category_index(c)] = cm.at(key).number();
        }
    }

    // Out-of-range raw values are reported by validation, not here.
    const bool raw_ok = !a.targets.empty() && std::all_of(a.targets.begin(), a.targets.end(), [](const auto& t) {
        return t.raw_value >= kMinRawValue && t.raw_value <= kMaxRawValue;
    });
    if (raw_ok) a.targets = normalize_targets(std::move(a.targets));
    return a;
}

// ---------------------------------------------------------------------------
// Report payloads

inline json per_component_to_json(const PerComponent<double>& values) {
    json j = json::object();
    for (auto c : kAllComponents) j[to_string(c)] = number_or_null(values[c.index()]);
    return j;
}

inline json verdict_to_json(const ThresholdVerdict& v) {
    return {{"threshold", threshold_to_json(v.threshold)}, {"passed", v.passed}, {"observed", v.observed}};
}

inline json report_to_json(const ScoreReport& r) {
    json j;
    j["factor_ids"] = r.factor_ids;
    j["target_ids"] = r.target_ids;
    j["normalized_values"] = r.normalized_values;
    json weights = json::object();
    json protection = json::object();
    json coverage = json::object();
    for (std::size_t t = 0; t < r.target_ids.size(); ++t) {
        json per_factor = json::object();
        for (std::size_t f = 0; f < r.factor_ids.size(); ++f)
            per_factor[r.factor_ids[f]] = per_component_to_json(r.relative_weights[t * r.factor_ids.size() + f]);
        weights[r.target_ids[t]] = per_factor;
        protection[r.target_ids[t]] = per_component_to_json(r.protection[t]);
        coverage[r.target_ids[t]] = per_component_to_json(r.coverage[t]);
    }
    j["relative_weights"] = weights;
    j["protection"] = protection;
    j["coverage"] = coverage;
    j["final_scores"] = per_component_to_json(r.final_scores);
    j["total_coverage"] = per_component_to_json(r.total_coverage);
    json verdicts = json::array();
    for (const auto& v : r.threshold_verdicts) verdicts.push_back(verdict_to_json(v));
    j["threshold_verdicts"] = verdicts;
    return j;
}

inline json cost_report_to_json(const CostReport& r) {
    json per_factor = json::object();
    for (std::size_t i = 0; i < r.factor_ids.size(); ++i) per_factor[r.factor_ids[i]] = r.per_factor_cost[i];
    return {{"per_factor_cost", per_factor},
            {"total_cost", r.total_cost},
            {"tc_sel", r.tc_sel},
            {"efficiency_ratio", number_or_null(r.efficiency_ratio)},
            {"feasible", std::isfinite(r.efficiency_ratio)}};
}

inline json sweep_to_json(const SweepResult& s) {
    json samples = json::array();
    for (const auto& smp : s.samples)
        samples.push_back({{"score", smp.score}, {"total_coverage", per_component_to_json(smp.total_coverage)}});
    return {{"ef_id", s.ef_id}, {"baseline_scores", s.baseline_scores}, {"samples", samples}};
}

inline json surface_to_json(const SurfaceResult& s) {
    json grid = json::array();
    for (const auto& row : s.grid) {
        json jr = json::array();
        for (double v : row) jr.push_back(number_or_null(v));
        grid.push_back(jr);
    }
    return {{"ef_x", s.ef_x},         {"ef_y", s.ef_y},         {"fixed_scores", s.fixed_scores},
            {"x_values", s.x_values}, {"y_values", s.y_values}, {"grid", grid}};
}

inline json optimization_to_json(const OptimizationResult& r) {
    json scores = json::object();
    for (std::size_t i = 0; i < r.factor_ids.size() && i < r.best_scores.size(); ++i)
        scores[r.factor_ids[i]] = r.best_scores[i];
    json trace = json::array();
    for (const auto& t : r.trace) trace.push_back({{"iteration", t.iteration}, {"ratio", number_or_null(t.ratio)}});
    return {{"factor_ids", r.factor_ids},
            {"best_scores", scores},
            {"best_ratio", number_or_null(r.best_ratio)},
            {"evaluations", r.evaluations},
            {"feasible", r.feasible},
            {"trace", trace}};
}

inline json influence_to_json(const std::vector<FactorInfluence>& ranking) {
    json out = json::array();
    for (const auto& fi : ranking)
        out.push_back({{"ef_id", fi.ef_id}, {"influence", per_component_to_json(fi.influence)}, {"total", fi.total()}});
    return out;
}

inline json issues_to_json(const std::vector<ValidationIssue>& issues) {
    json out = json::array();
    for (const auto& i : issues) out.push_back({{"id", i.id}, {"field", i.field}, {"message", i.message}});
    return out;
}

/// Same document conventions as assessments: schema_version plus one payload key.
inline json catalog_to_json(const Catalog& catalog) {
    json entries = json::array();
    for (const auto& e : catalog.entries()) {
        json levels = json::array();
        for (const auto& l : e.levels)
            levels.push_back({{"label", l.label}, {"description", l.description}, {"guideline_score", l.guideline_score}});
        entries.push_back({{"id", e.id}, {"name", e.name}, {"category", std::string(to_string(e.category))},
                           {"levels", levels}});
    }
    return {{"schema_version", kSchemaVersion}, {"catalog", entries}};
}

// ---------------------------------------------------------------------------
// Documents

struct LoadedDocument {
    Assessment assessment;
    std::vector<std::string> warnings;
};

inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

inline json document_to_json(const Assessment& a, const ScoreReport* cache = nullptr) {
    json doc;
    doc["schema_version"] = a.schema_version;
    doc["assessment"] = assessment_to_json(a);
    if (cache) doc["report_cache"] = report_to_json(*cache);
    return doc;
}

/// Canonical text of a valid assessment. Throws ValidationError otherwise.
inline std::string serialize_assessment(const Assessment& a, bool embed_report = false) {
    auto issues = validate_assessment(a);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    if (embed_report) {
        const auto report = evaluate(a);
        return dump_canonical(document_to_json(a, &report));
    }
    return dump_canonical(document_to_json(a));
}

namespace detail {

inline std::size_t line_of(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// "15.000" could mean fifteen thousand (European grouping) or fifteen. Money fields must not
/// be written that way.
inline void reject_locale_ambiguous_money(std::string_view text) {
    static const std::regex pattern(R"re("max_cost"\s*:\s*(-?\d{1,3}(?:\.\d{3})+)(?![\d.eE]))re");
    const std::string s(text);
    std::smatch m;
    if (std::regex_search(s, m, pattern)) {
        const auto value = m[1].str();
        throw ParseError(line_of(text, static_cast<std::size_t>(m.position(1))),
                         "max_cost value " + value +
                             " is locale-ambiguous ('.' may be a thousands separator); write the plain amount, "
                             "e.g. 15000 or 15.0");
    }
}

}  // namespace detail

/// Parses and validates a document. Throws ParseError or ValidationError. A report cache that
/// disagrees with the recomputed report only produces a warning.
inline LoadedDocument parse_document(std::string_view text) {
    detail::reject_locale_ambiguous_money(text);
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(detail::line_of(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }

    const detail::Reader root(doc, "");
    root.expect_object({"schema_version", "assessment", "report_cache"});
    const int version = root.at("schema_version").integer();
    if (version != kSchemaVersion)
        root.at("schema_version").fail("unsupported schema version " + std::to_string(version) + " (supported: " +
                                       std::to_string(kSchemaVersion) + ")");

    LoadedDocument out;
    out.assessment = assessment_from_json(doc.at("assessment"));
    out.assessment.schema_version = version;
    auto issues = validate_assessment(out.assessment);
    if (!issues.empty()) throw ValidationError(std::move(issues));

    if (doc.contains("report_cache")) {
        if (report_to_json(evaluate(out.assessment)) != doc.at("report_cache"))
            out.warnings.push_back("embedded report cache is stale; it will be recomputed");
    }
    return out;
}

inline Assessment parse_assessment(std::string_view text) { return parse_document(text).assessment; }

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoFailure("error while reading '" + path.string() + "'");
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoFailure("error while writing '" + path.string() + "'");
}

inline LoadedDocument load_document(const std::filesystem::path& path) { return parse_document(read_file(path)); }

inline Assessment load_assessment(const std::filesystem::path& path) { return load_document(path).assessment; }

inline void save_assessment(const Assessment& a, const std::filesystem::path& path, bool embed_report = false) {
    write_file(path, serialize_assessment(a, embed_report));
}

// ---------------------------------------------------------------------------
// Weight profiles: base weights and cost ceilings for catalog factors, kept apart from any
// one assessment. The shipped example profile is illustrative, not normative.

struct WeightProfileEntry {
    BaseWeightMatrix base_weights;
    double max_cost = 0.0;
    bool operator==(const WeightProfileEntry&) const = default;
};

using WeightProfile = std::map<std::string, WeightProfileEntry>;

inline WeightProfile parse_weight_profile(std::string_view text) {
    detail::reject_locale_ambiguous_money(text);
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(detail::line_of(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    const detail::Reader root(doc, "");
    root.expect_object({"schema_version", "description", "factors"});
    if (root.at("schema_version").integer() != kSchemaVersion) root.at("schema_version").fail("unsupported schema version");
    if (root.has("description")) root.at("description").string();
    const auto factors = root.at("factors");
    if (!factors.node().is_object()) factors.fail("expected an object keyed by catalog id");
    WeightProfile profile;
    for (const auto& item : factors.node().items()) {
        const detail::Reader fr(item.value(), factors.path() + "/" + item.key());
        fr.expect_object({"base_weights", "max_cost"});
        WeightProfileEntry e{detail::read_base_weights(fr.at("base_weights")), fr.at("max_cost").number()};
        for (auto c : kAllComponents)
            if (e.base_weights.at(c) < kMinLevel || e.base_weights.at(c) > kMaxLevel)
                fr.at("base_weights").fail("base weight out of range [0, 5]");
        if (!std::isfinite(e.max_cost) || e.max_cost < 0.0) fr.at("max_cost").fail("max cost must be >= 0");
        profile.emplace(item.key(), e);
    }
    return profile;
}

inline WeightProfile load_weight_profile(const std::filesystem::path& path) {
    return parse_weight_profile(read_file(path));
}

/// New assessment with the given catalog factors, weights and costs taken from `profile` when it
/// has them, and one placeholder target so that the result validates.
inline Assessment scaffold_assessment(const std::string& name, const std::vector<std::string>& ids,
                                      const WeightProfile* profile = nullptr,
                                      const Catalog& catalog = Catalog::builtin()) {
    Assessment a;
    a.name = name;
    a.factors = instantiate_from_catalog(ids, catalog);
    if (profile) {
        for (auto& f : a.factors) {
            if (auto it = profile->find(f.id); it != profile->end()) {
                f.base_weights = it->second.base_weights;
                f.max_cost = it->second.max_cost;
            }
        }
    }
    a.targets = normalize_targets({{"T1", "Placeholder target", TargetKind::Asset, 50, 0.0}});
    return a;
}

// ---------------------------------------------------------------------------
// CSV. Header row, comma separated, '.' decimal point, full precision, "inf" for +inf.

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

namespace detail {

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void csv_row(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
}

}  // namespace detail

inline std::string to_csv(const CsvTable& table) {
    std::string out;
    detail::csv_row(out, table.header);
    for (const auto& row : table.rows) detail::csv_row(out, row);
    return out;
}

inline CsvTable to_table(const SweepResult& s) {
    CsvTable t;
    t.header.push_back("score");
    for (auto c : kAllComponents) t.header.push_back(to_string(c));
    for (const auto& smp : s.samples) {
        std::vector<std::string> row{format_number(smp.score)};
        for (double v : smp.total_coverage) row.push_back(format_number(v));
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Row-major: y outer, x inner.
inline CsvTable to_table(const SurfaceResult& s) {
    CsvTable t;
    t.header = {"ef_x_score", "ef_y_score", "efficiency_ratio"};
    for (std::size_t y = 0; y < s.y_values.size(); ++y)
        for (std::size_t x = 0; x < s.x_values.size(); ++x)
            t.rows.push_back({format_number(s.x_values[x]), format_number(s.y_values[y]), format_number(s.grid[y][x])});
    return t;
}

/// One row per component in C/P, C/R, I/P, I/R, A/P, A/R order.
inline CsvTable to_table(const ScoreReport& r) {
    CsvTable t;
    t.header = {"attribute", "domain", "final_score", "total_coverage"};
    for (auto c : kAllComponents)
        t.rows.push_back({std::string(short_name(c.attribute)), std::string(to_string(c.domain)),
                          format_number(r.final_scores[c.index()]), format_number(r.total_coverage[c.index()])});
    return t;
}

template <typename T>
std::string to_csv(const T& data) {
    return to_csv(to_table(data));
}

template <typename T>
void export_tabular(const T& data, const std::filesystem::path& path) {
    write_file(path, to_csv(data));
}

/// Reads what to_csv() writes (RFC 4180 quoting, no embedded newlines in unquoted fields).
inline CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !field.empty()) {
                record.push_back(std::move(field));
                records.push_back(std::move(record));
            }
            field.clear();
            record.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (quoted) throw ParseError(0, "unterminated quoted CSV field");
    if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    CsvTable t;
    if (records.empty()) return t;
    t.header = std::move(records.front());
    for (std::size_t k = 1; k < records.size(); ++k) {
        if (records[k].size() != t.header.size())
            throw ParseError(k + 1, "CSV row has " + std::to_string(records[k].size()) + " fields, header has " +
                                        std::to_string(t.header.size()));
        t.rows.push_back(std::move(records[k]));
    }
    return t;
}

/// Inverse of format_number().
inline double parse_number(std::string_view s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) throw ParseError(0, "not a number: '" + std::string(s) + "'");
    return v;
}

}  // namespace mlrisk::io
