#pragma once

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "mlrisk/catalog.hpp"
#include "mlrisk/cost.hpp"
#include "mlrisk/io.hpp"
#include "mlrisk/optimizer.hpp"
#include "mlrisk/scoring.hpp"
#include "mlrisk/sensitivity.hpp"
#include "mlrisk/service.hpp"

// Command-line front end. Every command is a thin adapter over the library calls.
// Exit codes: 0 success, 1 invalid input file (parse or validation), 2 usage error.

namespace mlrisk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

enum class Format { Table, Csv, Json };

namespace detail {

/// Thrown for bad flag values that CLI11 cannot catch itself.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& message) : Error(message) {}
};

struct Style {
    bool color = false;
    std::string bold(const std::string& s) const { return color ? "\033[1m" + s + "\033[0m" : s; }
    std::string red(const std::string& s) const { return color ? "\033[31m" + s + "\033[0m" : s; }
    std::string green(const std::string& s) const { return color ? "\033[32m" + s + "\033[0m" : s; }
};

inline std::string fixed2(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::fixed << std::setprecision(2) << v;
    return ss.str();
}

inline std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline std::string lpad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::vector<std::string> split(const std::string& text, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(text);
    while (std::getline(ss, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

inline double parse_score_text(const std::string& s) {
    try {
        return io::parse_number(s);
    } catch (const ParseError&) {
        throw UsageError("not a number: '" + s + "'");
    }
}

/// "0.8,0.7,0.7" (active-factor order) or "EF1=0.8,EF3=0.5" (others keep `defaults`).
inline std::vector<double> parse_scores(const Assessment& a, const std::string& text, std::vector<double> defaults) {
    const auto ids = active_factor_ids(a);
    const auto parts = split(text);
    const bool named = !parts.empty() && parts.front().find('=') != std::string::npos;
    if (!named) {
        if (parts.size() != ids.size())
            throw UsageError("expected " + std::to_string(ids.size()) + " scores, got " + std::to_string(parts.size()));
        for (std::size_t i = 0; i < parts.size(); ++i) defaults[i] = parse_score_text(parts[i]);
    } else {
        for (const auto& p : parts) {
            const auto eq = p.find('=');
            if (eq == std::string::npos) throw UsageError("mix of named and positional scores: '" + p + "'");
            const auto id = p.substr(0, eq);
            auto it = std::find(ids.begin(), ids.end(), id);
            if (it == ids.end()) throw UsageError("unknown or tailored-out factor '" + id + "'");
            defaults[static_cast<std::size_t>(it - ids.begin())] = parse_score_text(p.substr(eq + 1));
        }
    }
    for (double s : defaults)
        if (!mlrisk::detail::in_unit_interval(s)) throw UsageError("score " + fixed2(s) + " is outside [0, 1]");
    return defaults;
}

inline std::set<Component> parse_components(const std::string& text) {
    std::set<Component> out;
    for (const auto& p : split(text)) {
        auto c = parse_component(p);
        if (!c) throw UsageError("unknown component '" + p + "' (expected e.g. C/P, I/R)");
        out.insert(*c);
    }
    if (out.empty()) throw UsageError("at least one component is required");
    return out;
}

inline std::string component_header(const Style& style, std::size_t first_width) {
    std::string h = pad("", first_width);
    for (auto c : kAllComponents) h += lpad(to_string(c), 7);
    return style.bold(h);
}

inline std::string component_row(const std::string& label, const PerComponent<double>& v, std::size_t first_width) {
    std::string row = pad(label, first_width);
    for (double x : v) row += lpad(fixed2(x), 7);
    return row;
}

inline std::size_t label_width(const std::vector<std::string>& labels, std::size_t minimum) {
    std::size_t w = minimum;
    for (const auto& l : labels) w = std::max(w, l.size() + 2);
    return w;
}

inline void print_report_table(std::ostream& os, const Assessment& a, const ScoreReport& r, const Style& style) {
    const auto fw = label_width(r.factor_ids, 10);
    os << style.bold("Relative weights") << "\n";
    for (std::size_t t = 0; t < r.target_ids.size(); ++t) {
        os << "\n" << r.target_ids[t] << " (normalized value " << fixed2(r.normalized_values[t]) << ")\n";
        os << component_header(style, fw) << "\n";
        for (std::size_t f = 0; f < r.factor_ids.size(); ++f)
            os << component_row(r.factor_ids[f], r.relative_weights[t * r.factor_ids.size() + f], fw) << "\n";
    }

    const auto tw = label_width(r.target_ids, 16);
    os << "\n" << style.bold("Protection scores") << "\n" << component_header(style, tw) << "\n";
    for (std::size_t t = 0; t < r.target_ids.size(); ++t) os << component_row(r.target_ids[t], r.protection[t], tw) << "\n";
    os << "\n" << component_header(style, tw) << "\n";
    os << component_row("final score", r.final_scores, tw) << "\n";
    os << component_row("total coverage", r.total_coverage, tw) << "\n";

    if (!r.threshold_verdicts.empty()) {
        os << "\n" << style.bold("Thresholds") << "\n";
        for (const auto& v : r.threshold_verdicts) {
            std::string scope;
            if (const auto* s = std::get_if<FactorScope>(&v.threshold.scope))
                scope = "factor " + s->factor_id;
            else if (const auto* s = std::get_if<TargetScope>(&v.threshold.scope))
                scope = "target " + s->target_id + " " + to_string(s->component);
            else {
                const auto& cs = std::get<CategoryScope>(v.threshold.scope);
                scope = "category " + std::string(to_string(cs.category)) + " " + to_string(cs.component);
            }
            os << pad(scope, 32) << " min " << fixed2(v.threshold.minimum) << "  observed " << fixed2(v.observed) << "  "
               << (v.passed ? style.green("pass") : style.red("FAIL")) << "\n";
        }
    }
    const auto tailored = a.factors.size() - r.factor_ids.size();
    if (tailored > 0) {
        os << "\n" << style.bold("Tailored out") << "\n";
        for (const auto& f : a.factors)
            if (f.tailored_out) os << "  " << f.id << ": " << f.tailoring_justification << "\n";
    }
}

struct Common {
    std::string input;
    std::string output;
    std::string format = "table";
};

inline void add_common(CLI::App* cmd, Common& c, bool needs_input = true) {
    auto* in = cmd->add_option("-i,--input", c.input, "Assessment file");
    if (needs_input) in->required();
    cmd->add_option("-o,--output", c.output, "Write output to this file instead of stdout");
    cmd->add_option("-f,--format", c.format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
}

inline Format format_of(const Common& c) {
    if (c.format == "csv") return Format::Csv;
    if (c.format == "json") return Format::Json;
    return Format::Table;
}

}  // namespace detail

/// Runs one command. `argv[0]` is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ML security risk assessment: scoring, cost efficiency and sensitivity", "mlrisk"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every command");

    detail::Common common;
    std::string ids_text, profile_path, name = "New assessment", scores_text, components_text, ef_id, baseline_text;
    std::string ef_x, ef_y, fixed_text = "0.7", anchors_text, strategy = "exhaustive", domain = "continuous";
    std::string entry_id, host = "127.0.0.1", ui_dir;
    int steps = kDefaultSweepSteps, resolution = kDefaultSweepSteps, port = 8080;
    OptimizationConfig cfg;
    bool embed_report = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check an assessment file");
    detail::add_common(validate_cmd, common);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Relative weights, protection, final scores, coverage");
    detail::add_common(evaluate_cmd, common);

    auto* sensitivity_cmd = app.add_subcommand("sensitivity", "Sweep one factor, or rank all factors by influence");
    detail::add_common(sensitivity_cmd, common);
    sensitivity_cmd->add_option("--ef", ef_id, "Factor to sweep (omit to rank every factor)");
    sensitivity_cmd->add_option("--steps", steps, "Sample count in [0, 1]")->capture_default_str();
    sensitivity_cmd->add_option("--baseline", baseline_text, "Scores of the other factors (default 0)");

    auto* surface_cmd = app.add_subcommand("surface", "Efficiency ratio over two factors");
    detail::add_common(surface_cmd, common);
    surface_cmd->add_option("--x", ef_x, "Factor on the x axis")->required();
    surface_cmd->add_option("--y", ef_y, "Factor on the y axis")->required();
    surface_cmd->add_option("--fixed", fixed_text, "Score of the remaining factors: one value or a list")
        ->capture_default_str();
    surface_cmd->add_option("--resolution", resolution, "Points per axis")->capture_default_str();
    surface_cmd->add_option("--min-score", cfg.min_score, "Lower end of both axes")->capture_default_str();
    surface_cmd->add_option("--components", components_text, "Selected components, e.g. C/P,I/P");

    auto* optimize_cmd = app.add_subcommand("optimize", "Minimise total cost / selected total coverage");
    detail::add_common(optimize_cmd, common);
    optimize_cmd->add_option("--min-score", cfg.min_score, "Lower bound per factor")->capture_default_str();
    optimize_cmd->add_option("--step", cfg.grid_step, "Grid step")->capture_default_str();
    optimize_cmd->add_option("--strategy", strategy, "Search strategy")
        ->check(CLI::IsMember({"exhaustive", "heuristic"}))
        ->capture_default_str();
    optimize_cmd->add_option("--domain", domain, "Heuristic search space")
        ->check(CLI::IsMember({"continuous", "lattice"}))
        ->capture_default_str();
    optimize_cmd->add_option("--restarts", cfg.restarts, "Heuristic restarts")->capture_default_str();
    optimize_cmd->add_option("--max-iterations", cfg.max_iterations, "Coordinate sweeps per restart")
        ->capture_default_str();
    optimize_cmd->add_option("--seed", cfg.seed, "Heuristic seed")->capture_default_str();
    optimize_cmd->add_option("--budget", cfg.budget, "Max grid points for the exhaustive search")
        ->capture_default_str();
    optimize_cmd->add_option("--threads", cfg.threads, "Worker threads for the exhaustive search")
        ->capture_default_str();
    optimize_cmd->add_option("--components", components_text, "Selected components, e.g. C/P,I/P");

    auto* cost_cmd = app.add_subcommand("cost", "Cost per factor, total cost and efficiency ratio");
    detail::add_common(cost_cmd, common);
    cost_cmd->add_option("--scores", scores_text, "Scores to price (default: the file's implementation scores)");
    cost_cmd->add_option("--components", components_text, "Selected components, e.g. C/P,I/P");

    auto* catalog_cmd = app.add_subcommand("catalog", "List the built-in evaluation factor catalog");
    detail::add_common(catalog_cmd, common, false);
    catalog_cmd->add_option("--id", entry_id, "Show one entry with its levels");
    catalog_cmd->add_option("--anchors", anchors_text, "Override guideline scores, e.g. 0,0.4,1");

    auto* init_cmd = app.add_subcommand("init", "Scaffold an assessment from catalog ids");
    detail::add_common(init_cmd, common, false);
    init_cmd->add_option("--ids", ids_text, "Comma-separated catalog ids, e.g. D.01,M.03")->required();
    init_cmd->add_option("--profile", profile_path, "Weight profile with base weights and costs");
    init_cmd->add_option("--name", name, "Assessment name")->capture_default_str();

    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API for one assessment");
    serve_cmd->add_option("-i,--input", common.input, "Assessment file")->required();
    serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
    serve_cmd->add_option("--ui-dir", ui_dir, "Directory with the built web UI");

    for (auto* cmd : {evaluate_cmd, cost_cmd}) cmd->add_flag("--embed-report", embed_report)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const detail::Style style{&out == &std::cout && ::isatty(STDOUT_FILENO) && common.output.empty() &&
                              std::getenv("MLRISK_NO_COLOR") == nullptr};
    const auto format = detail::format_of(common);
    std::ostringstream buffer;
    buffer.imbue(std::locale::classic());
    auto finish = [&](int code) {
        if (common.output.empty()) {
            out << buffer.str();
        } else {
            io::write_file(common.output, buffer.str());
        }
        return code;
    };
    auto load = [&] {
        auto doc = io::load_document(common.input);
        for (const auto& w : doc.warnings) err << "warning: " << w << "\n";
        return doc.assessment;
    };

    try {
        if (validate_cmd->parsed()) {
            std::vector<ValidationIssue> issues;
            try {
                load();
            } catch (const IssueListError& e) {
                issues = e.issues();
            }
            for (const auto& i : issues)
                err << "error: " << (i.id.empty() ? "" : i.id + ": ") << i.field << ": " << i.message << "\n";
            if (format == Format::Json)
                buffer << io::dump_canonical({{"valid", issues.empty()}, {"issues", io::issues_to_json(issues)}});
            else if (issues.empty())
                buffer << common.input << ": ok\n";
            return finish(issues.empty() ? kExitOk : kExitInvalid);
        }

        if (evaluate_cmd->parsed()) {
            const auto a = load();
            const auto report = evaluate(a);
            if (format == Format::Json)
                buffer << io::dump_canonical(io::report_to_json(report));
            else if (format == Format::Csv)
                buffer << io::to_csv(report);
            else
                detail::print_report_table(buffer, a, report, style);
            return finish(kExitOk);
        }

        if (cost_cmd->parsed()) {
            auto a = load();
            if (!components_text.empty()) a.selected_components = detail::parse_components(components_text);
            const auto scores =
                scores_text.empty() ? current_scores(a) : detail::parse_scores(a, scores_text, current_scores(a));
            const auto report = cost_report(a, scores);
            if (format == Format::Json) {
                auto j = io::cost_report_to_json(report);
                j["scores"] = scores;
                buffer << io::dump_canonical(j);
            } else if (format == Format::Csv) {
                io::CsvTable t{{"factor_id", "score", "cost"}, {}};
                for (std::size_t i = 0; i < scores.size(); ++i)
                    t.rows.push_back({report.factor_ids[i], io::format_number(scores[i]),
                                      io::format_number(report.per_factor_cost[i])});
                buffer << io::to_csv(t);
            } else {
                const auto fw = detail::label_width(report.factor_ids, 10);
                buffer << style.bold(detail::pad("factor", fw) + detail::lpad("score", 8) + detail::lpad("cost", 14)) << "\n";
                for (std::size_t i = 0; i < scores.size(); ++i)
                    buffer << detail::pad(report.factor_ids[i], fw) << detail::lpad(detail::fixed2(scores[i]), 8)
                           << detail::lpad(detail::fixed2(report.per_factor_cost[i]), 14) << "\n";
                buffer << "\ntotal cost        " << detail::fixed2(report.total_cost) << "\n";
                buffer << "selected coverage " << detail::fixed2(report.tc_sel) << "\n";
                buffer << "efficiency ratio  "
                       << (std::isfinite(report.efficiency_ratio) ? detail::fixed2(report.efficiency_ratio)
                                                                  : std::string("infeasible (no selected coverage)"))
                       << "\n";
            }
            return finish(kExitOk);
        }

        if (optimize_cmd->parsed()) {
            auto a = load();
            if (!components_text.empty()) a.selected_components = detail::parse_components(components_text);
            cfg.strategy = strategy == "heuristic" ? Strategy::CoordinateDescent : Strategy::ExhaustiveGrid;
            cfg.domain = domain == "lattice" ? SearchDomain::Lattice : SearchDomain::Continuous;
            const auto result = optimize(a, cfg);
            if (format == Format::Json) {
                buffer << io::dump_canonical(io::optimization_to_json(result));
            } else if (format == Format::Csv) {
                io::CsvTable t{{"factor_id", "best_score"}, {}};
                for (std::size_t i = 0; i < result.factor_ids.size(); ++i)
                    t.rows.push_back({result.factor_ids[i], io::format_number(result.best_scores[i])});
                buffer << io::to_csv(t);
            } else if (!result.feasible) {
                buffer << "infeasible: no point of the search space covers any selected component\n";
            } else {
                buffer << style.bold("best scores") << "\n";
                for (std::size_t i = 0; i < result.factor_ids.size(); ++i)
                    buffer << "  " << detail::pad(result.factor_ids[i], 12) << detail::fixed2(result.best_scores[i]) << "\n";
                buffer << "efficiency ratio  " << detail::fixed2(result.best_ratio) << "\n";
                buffer << "evaluations       " << result.evaluations << "\n";
            }
            return finish(kExitOk);
        }

        if (sensitivity_cmd->parsed()) {
            const auto a = load();
            if (ef_id.empty()) {
                const auto ranking = rank_factors(a);
                if (format == Format::Json) {
                    buffer << io::dump_canonical(io::influence_to_json(ranking));
                } else if (format == Format::Csv) {
                    io::CsvTable t{{"ef_id"}, {}};
                    for (auto c : kAllComponents) t.header.push_back(to_string(c));
                    t.header.push_back("total");
                    for (const auto& fi : ranking) {
                        std::vector<std::string> row{fi.ef_id};
                        for (double v : fi.influence) row.push_back(io::format_number(v));
                        row.push_back(io::format_number(fi.total()));
                        t.rows.push_back(std::move(row));
                    }
                    buffer << io::to_csv(t);
                } else {
                    std::vector<std::string> ids;
                    for (const auto& fi : ranking) ids.push_back(fi.ef_id);
                    const auto fw = detail::label_width(ids, 10);
                    buffer << style.bold("Influence on total coverage (S=1 minus S=0)") << "\n";
                    buffer << detail::component_header(style, fw) << style.bold(detail::lpad("total", 8)) << "\n";
                    for (const auto& fi : ranking)
                        buffer << detail::component_row(fi.ef_id, fi.influence, fw)
                               << detail::lpad(detail::fixed2(fi.total()), 8) << "\n";
                }
                return finish(kExitOk);
            }
            const auto zeros = std::vector<double>(active_factor_indices(a).size(), 0.0);
            const auto baseline = baseline_text.empty() ? zeros : detail::parse_scores(a, baseline_text, zeros);
            const auto sweep = sweep_ef(a, ef_id, steps, baseline);
            if (format == Format::Json) {
                buffer << io::dump_canonical(io::sweep_to_json(sweep));
            } else if (format == Format::Csv) {
                buffer << io::to_csv(sweep);
            } else {
                buffer << style.bold("Total coverage while sweeping " + ef_id) << "\n";
                buffer << detail::component_header(style, 8) << "\n";
                for (const auto& s : sweep.samples)
                    buffer << detail::component_row(detail::fixed2(s.score), s.total_coverage, 8) << "\n";
            }
            return finish(kExitOk);
        }

        if (surface_cmd->parsed()) {
            auto a = load();
            if (!components_text.empty()) a.selected_components = detail::parse_components(components_text);
            const auto n = active_factor_indices(a).size();
            std::vector<double> fixed;
            if (fixed_text.find(',') == std::string::npos && fixed_text.find('=') == std::string::npos)
                fixed.assign(n, detail::parse_score_text(fixed_text));
            else
                fixed = detail::parse_scores(a, fixed_text, current_scores(a));
            const auto surface = efficiency_surface(a, ef_x, ef_y, fixed, resolution, cfg.min_score);
            if (format == Format::Json) {
                buffer << io::dump_canonical(io::surface_to_json(surface));
            } else if (format == Format::Csv) {
                buffer << io::to_csv(surface);
            } else {
                buffer << style.bold("Efficiency ratio: rows " + ef_y + ", columns " + ef_x) << "\n";
                buffer << detail::pad("", 6);
                for (double x : surface.x_values) buffer << detail::lpad(detail::fixed2(x), 11);
                buffer << "\n";
                for (std::size_t y = 0; y < surface.y_values.size(); ++y) {
                    buffer << detail::pad(detail::fixed2(surface.y_values[y]), 6);
                    for (double v : surface.grid[y]) buffer << detail::lpad(detail::fixed2(v), 11);
                    buffer << "\n";
                }
            }
            return finish(kExitOk);
        }

        if (catalog_cmd->parsed()) {
            Catalog catalog = Catalog::builtin();
            if (!anchors_text.empty()) {
                const auto parts = detail::split(anchors_text);
                if (parts.size() != 3) throw detail::UsageError("--anchors needs exactly three values");
                catalog = catalog.with_guideline_scores({detail::parse_score_text(parts[0]),
                                                         detail::parse_score_text(parts[1]),
                                                         detail::parse_score_text(parts[2])});
            }
            if (!entry_id.empty()) catalog = Catalog({catalog.at(entry_id)});
            if (format == Format::Json) {
                buffer << io::dump_canonical(io::catalog_to_json(catalog));
            } else if (format == Format::Csv) {
                io::CsvTable t{{"id", "name", "category", "level", "label", "guideline_score", "description"}, {}};
                for (const auto& e : catalog.entries())
                    for (std::size_t k = 0; k < 3; ++k)
                        t.rows.push_back({e.id, e.name, std::string(to_string(e.category)), std::to_string(k),
                                          e.levels[k].label, io::format_number(e.levels[k].guideline_score),
                                          e.levels[k].description});
                buffer << io::to_csv(t);
            } else {
                for (const auto& e : catalog.entries()) {
                    buffer << style.bold(e.id) << "  " << e.name << "  [" << to_string(e.category) << "]\n";
                    if (!entry_id.empty())
                        for (const auto& l : e.levels)
                            buffer << "    " << detail::fixed2(l.guideline_score) << "  " << l.label << ": "
                                   << l.description << "\n";
                }
            }
            return finish(kExitOk);
        }

        if (init_cmd->parsed()) {
            std::optional<io::WeightProfile> profile;
            if (!profile_path.empty()) profile = io::load_weight_profile(profile_path);
            const auto a = io::scaffold_assessment(name, detail::split(ids_text), profile ? &*profile : nullptr);
            buffer << io::serialize_assessment(a);
            return finish(kExitOk);
        }

        if (serve_cmd->parsed()) {
            service::serve(common.input, host, port,
                           ui_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(ui_dir),
                           [&](int bound) { err << "serving " << common.input << " on http://" << host << ":" << bound << "\n"; });
            return kExitOk;
        }
    } catch (const detail::UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownId& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownCatalogId& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TailoredOutFactor& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SameAxis& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidConfig& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "usage error: " << e.what() << " (raise --budget, use a coarser --step, or --strategy heuristic)\n";
        return kExitUsage;
    } catch (const IssueListError& e) {
        for (const auto& i : e.issues())
            err << "error: " << (i.id.empty() ? "" : i.id + ": ") << i.field << ": " << i.message << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"mlrisk"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mlrisk::cli
