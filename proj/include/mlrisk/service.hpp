#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <thread>
#include <utility>

#include <httplib.h>

#include "mlrisk/catalog.hpp"
#include "mlrisk/cost.hpp"
#include "mlrisk/io.hpp"
#include "mlrisk/optimizer.hpp"
#include "mlrisk/scoring.hpp"
#include "mlrisk/sensitivity.hpp"

// HTTP API over a single loaded assessment. Handlers live on Api and are plain functions of
// (method, path, body) so they can be exercised without a socket; Server binds them to httplib.
//
//   GET  /api/assessment        document + revision
//   PUT  /api/assessment        replace document, guarded by expected_revision
//   POST /api/evaluate          score report of the current assessment
//   POST /api/whatif            report + cost at overridden scores, no mutation
//   POST /api/sweep             one-at-a-time sweep
//   POST /api/surface           efficiency grid over two factors
//   POST /api/optimize          run the optimizer (synchronous, or "async": true)
//   GET  /api/optimize/status   state of the last async run
//   POST /api/save              write the assessment file
//   GET  /api/catalog           built-in catalog document

namespace mlrisk::service {

using json = nlohmann::json;

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// Current assessment, its revision and the report for that revision.
class Session {
public:
    struct Snapshot {
        Assessment assessment;
        std::uint64_t revision = 0;
        ScoreReport report;
    };

    enum class UpdateStatus { Accepted, Conflict, Invalid };

    struct UpdateResult {
        UpdateStatus status = UpdateStatus::Accepted;
        std::uint64_t revision = 0;
        std::vector<ValidationIssue> issues;
    };

    Session(Assessment assessment, std::filesystem::path path)
        : assessment_(std::move(assessment)), report_(evaluate(assessment_)), path_(std::move(path)) {}

    static Session load(const std::filesystem::path& path) { return Session(io::load_assessment(path), path); }

    Snapshot snapshot() const {
        std::shared_lock lock(mutex_);
        return {assessment_, revision_, report_};
    }

    std::uint64_t revision() const {
        std::shared_lock lock(mutex_);
        return revision_;
    }

    const std::filesystem::path& path() const noexcept { return path_; }

    /// Accepted only when expected_revision matches and the new assessment validates.
    UpdateResult replace(Assessment next, std::uint64_t expected_revision) {
        auto issues = validate_assessment(next);
        std::unique_lock lock(mutex_);
        if (expected_revision != revision_) return {UpdateStatus::Conflict, revision_, {}};
        if (!issues.empty()) return {UpdateStatus::Invalid, revision_, std::move(issues)};
        report_ = evaluate(next);
        assessment_ = std::move(next);
        ++revision_;
        return {UpdateStatus::Accepted, revision_, {}};
    }

    /// Writes the canonical form of the current revision; returns that revision.
    std::uint64_t save() const {
        std::shared_lock lock(mutex_);
        io::save_assessment(assessment_, path_);
        return revision_;
    }

private:
    mutable std::shared_mutex mutex_;
    Assessment assessment_;
    std::uint64_t revision_ = 0;
    ScoreReport report_;
    std::filesystem::path path_;
};

/// Parses a score override: an array in active-factor order, or an object keyed by factor id
/// (factors not named keep their current score).
inline std::vector<double> scores_from_json(const Assessment& a, const json& node) {
    auto scores = current_scores(a);
    const auto ids = active_factor_ids(a);
    if (node.is_array()) {
        if (node.size() != ids.size()) throw DimensionMismatch(ids.size(), node.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (!node[i].is_number()) throw ParseError(0, "scores must be numbers");
            scores[i] = node[i].get<double>();
        }
    } else if (node.is_object()) {
        for (const auto& item : node.items()) {
            const auto* f = a.find_factor(item.key());
            if (!f) throw UnknownId(item.key());
            if (f->tailored_out) throw TailoredOutFactor(item.key());
            if (!item.value().is_number()) throw ParseError(0, "score of '" + item.key() + "' must be a number");
            const auto pos = static_cast<std::size_t>(std::find(ids.begin(), ids.end(), item.key()) - ids.begin());
            scores[pos] = item.value().get<double>();
        }
    } else {
        throw ParseError(0, "scores must be an array or an object keyed by factor id");
    }
    for (double s : scores)
        if (!detail::in_unit_interval(s)) throw ScoreOutOfRange(s);
    return scores;
}

/// Reads optimizer settings; absent fields keep their defaults.
inline OptimizationConfig optimization_config_from_json(const json& node) {
    OptimizationConfig cfg;
    if (node.is_null()) return cfg;
    const io::detail::Reader r(node, "");
    r.expect_object({"min_score", "grid_step", "strategy", "max_iterations", "restarts", "seed", "budget", "threads",
                     "domain", "trace", "components", "async"});
    if (r.has("min_score")) cfg.min_score = r.at("min_score").number();
    if (r.has("grid_step")) cfg.grid_step = r.at("grid_step").number();
    if (r.has("strategy")) {
        const auto s = r.at("strategy").string();
        if (s == "exhaustive")
            cfg.strategy = Strategy::ExhaustiveGrid;
        else if (s == "heuristic")
            cfg.strategy = Strategy::CoordinateDescent;
        else
            r.at("strategy").fail("expected 'exhaustive' or 'heuristic'");
    }
    if (r.has("max_iterations")) cfg.max_iterations = r.at("max_iterations").integer();
    if (r.has("restarts")) cfg.restarts = r.at("restarts").integer();
    if (r.has("seed")) {
        if (!node.at("seed").is_number_unsigned()) r.at("seed").fail("expected a non-negative integer");
        cfg.seed = node.at("seed").get<std::uint64_t>();
    }
    if (r.has("budget")) {
        if (!node.at("budget").is_number_unsigned()) r.at("budget").fail("expected a non-negative integer");
        cfg.budget = node.at("budget").get<std::uint64_t>();
    }
    if (r.has("threads")) cfg.threads = static_cast<unsigned>(std::max(1, r.at("threads").integer()));
    if (r.has("domain")) {
        const auto d = r.at("domain").string();
        if (d == "continuous")
            cfg.domain = SearchDomain::Continuous;
        else if (d == "lattice")
            cfg.domain = SearchDomain::Lattice;
        else
            r.at("domain").fail("expected 'continuous' or 'lattice'");
    }
    if (r.has("trace")) cfg.record_trace = r.at("trace").boolean();
    return cfg;
}

/// Replaces selected_components when the request names some.
inline Assessment with_components(Assessment a, const json& node) {
    if (!node.is_object() || !node.contains("components")) return a;
    const io::detail::Reader r(node.at("components"), "/components");
    std::set<Component> selected;
    for (std::size_t i = 0; i < r.array_size(); ++i) selected.insert(io::detail::read_component(r.at(i)));
    if (selected.empty()) r.fail("at least one component is required");
    a.selected_components = std::move(selected);
    return a;
}

/// Background optimizer run polled through GET /api/optimize/status.
class OptimizerJob {
public:
    enum class State { Idle, Running, Done, Failed };

    ~OptimizerJob() { join(); }

    /// False when a run is already in progress.
    bool start(Assessment a, OptimizationConfig cfg) {
        std::lock_guard lock(mutex_);
        if (state_ == State::Running) return false;
        if (worker_.joinable()) worker_.join();
        state_ = State::Running;
        progress_ = 0;
        result_.reset();
        error_.clear();
        cfg.on_progress = [this](std::uint64_t n) { progress_.store(n, std::memory_order_relaxed); };
        worker_ = std::thread([this, a = std::move(a), cfg = std::move(cfg)] {
            try {
                auto r = optimize(a, cfg);
                std::lock_guard done(mutex_);
                result_ = std::move(r);
                state_ = State::Done;
            } catch (const std::exception& e) {
                std::lock_guard done(mutex_);
                error_ = e.what();
                state_ = State::Failed;
            }
        });
        return true;
    }

    json status() const {
        std::lock_guard lock(mutex_);
        static constexpr const char* names[] = {"idle", "running", "done", "failed"};
        json j{{"state", names[static_cast<int>(state_)]}, {"evaluations", progress_.load()}};
        j["result"] = result_ ? io::optimization_to_json(*result_) : json(nullptr);
        if (!error_.empty()) j["error"] = error_;
        return j;
    }

    void join() {
        std::thread t;
        {
            std::lock_guard lock(mutex_);
            t = std::move(worker_);
        }
        if (t.joinable()) t.join();
    }

private:
    mutable std::mutex mutex_;
    State state_ = State::Idle;
    std::atomic<std::uint64_t> progress_{0};
    std::optional<OptimizationResult> result_;
    std::string error_;
    std::thread worker_;
};

class Api {
public:
    explicit Api(Session& session) : session_(session) {}

    Response handle(std::string_view method, std::string_view path, std::string_view body) {
        try {
            if (path == "/api/assessment" && method == "GET") return get_assessment();
            if (path == "/api/assessment" && method == "PUT") return put_assessment(parse_body(body));
            if (path == "/api/evaluate" && method == "POST") return evaluate_current();
            if (path == "/api/whatif" && method == "POST") return whatif(parse_body(body));
            if (path == "/api/sweep" && method == "POST") return sweep(parse_body(body));
            if (path == "/api/surface" && method == "POST") return surface(parse_body(body));
            if (path == "/api/optimize" && method == "POST") return run_optimizer(parse_body(body));
            if (path == "/api/optimize/status" && method == "GET") return ok(job_.status());
            if (path == "/api/save" && method == "POST") return save();
            if (path == "/api/catalog" && method == "GET") return ok(io::catalog_to_json(Catalog::builtin()));
            return error(404, "no such endpoint: " + std::string(method) + " " + std::string(path));
        } catch (const IssueListError& e) {
            return error(422, e.what(), io::issues_to_json(e.issues()));
        } catch (const UnknownId& e) {
            return error(404, e.what());
        } catch (const BudgetExceeded& e) {
            return error(422, e.what());
        } catch (const Error& e) {
            return error(400, e.what());
        } catch (const json::exception& e) {
            return error(400, e.what());
        } catch (const std::exception& e) {
            return error(500, e.what());
        }
    }

    OptimizerJob& job() noexcept { return job_; }

private:
    static json parse_body(std::string_view body) {
        if (body.empty()) return json::object();
        try {
            return json::parse(body.begin(), body.end());
        } catch (const json::parse_error& e) {
            throw ParseError(0, std::string("request body: ") + e.what());
        }
    }

    static Response ok(const json& j, int status = 200) { return {status, io::dump_canonical(j)}; }

    static Response error(int status, const std::string& message, json issues = nullptr) {
        json j{{"error", message}};
        if (!issues.is_null()) j["issues"] = std::move(issues);
        return ok(j, status);
    }

    Response get_assessment() const {
        const auto snap = session_.snapshot();
        return ok({{"revision", snap.revision}, {"document", io::document_to_json(snap.assessment)}});
    }

    Response put_assessment(const json& body) {
        if (!body.contains("expected_revision") || !body.at("expected_revision").is_number_unsigned())
            throw ParseError(0, "expected_revision (non-negative integer) is required");
        if (!body.contains("document")) throw ParseError(0, "document is required");
        auto next = io::parse_document(body.at("document").dump());
        const auto result = session_.replace(std::move(next.assessment), body.at("expected_revision").get<std::uint64_t>());
        switch (result.status) {
            case Session::UpdateStatus::Conflict:
                return ok({{"error", "revision conflict: current revision is " + std::to_string(result.revision)},
                           {"revision", result.revision}},
                          409);
            case Session::UpdateStatus::Invalid:
                return error(422, "invalid assessment", io::issues_to_json(result.issues));
            case Session::UpdateStatus::Accepted:
                break;
        }
        const auto snap = session_.snapshot();
        return ok({{"revision", snap.revision}, {"report", io::report_to_json(snap.report)}});
    }

    Response evaluate_current() const {
        const auto snap = session_.snapshot();
        return ok({{"revision", snap.revision}, {"report", io::report_to_json(snap.report)}});
    }

    Response whatif(const json& body) const {
        const auto snap = session_.snapshot();
        const auto base = with_components(snap.assessment, body);
        const auto scores = body.contains("scores") ? scores_from_json(base, body.at("scores")) : current_scores(base);
        const auto trial = with_scores(base, scores);
        return ok({{"revision", snap.revision},
                   {"scores", scores},
                   {"report", io::report_to_json(evaluate(trial))},
                   {"cost", io::cost_report_to_json(cost_report(trial, scores))}});
    }

    Response sweep(const json& body) const {
        const auto snap = session_.snapshot();
        if (!body.contains("ef") || !body.at("ef").is_string()) throw ParseError(0, "ef (factor id) is required");
        const int steps = body.value("steps", kDefaultSweepSteps);
        std::vector<double> baseline(active_factor_indices(snap.assessment).size(), 0.0);
        if (body.contains("baseline")) {
            // Unnamed factors default to 0, not to their current score.
            const auto zeroed = with_scores(snap.assessment, baseline);
            baseline = scores_from_json(zeroed, body.at("baseline"));
        }
        return ok(io::sweep_to_json(sweep_ef(snap.assessment, body.at("ef").get<std::string>(), steps, baseline)));
    }

    Response surface(const json& body) const {
        const auto snap = session_.snapshot();
        const auto a = with_components(snap.assessment, body);
        for (const char* key : {"ef_x", "ef_y"})
            if (!body.contains(key) || !body.at(key).is_string())
                throw ParseError(0, std::string(key) + " (factor id) is required");
        const int resolution = body.value("resolution", kDefaultSweepSteps);
        const double min_score = body.value("min_score", 0.1);
        std::vector<double> fixed = current_scores(a);
        if (body.contains("fixed")) {
            const auto& f = body.at("fixed");
            fixed = f.is_number() ? std::vector<double>(fixed.size(), f.get<double>()) : scores_from_json(a, f);
        }
        return ok(io::surface_to_json(efficiency_surface(a, body.at("ef_x").get<std::string>(),
                                                         body.at("ef_y").get<std::string>(), fixed, resolution,
                                                         min_score)));
    }

    Response run_optimizer(const json& body) {
        const auto snap = session_.snapshot();
        const auto a = with_components(snap.assessment, body);
        auto cfg = optimization_config_from_json(body);
        if (body.value("async", false)) {
            if (!job_.start(a, std::move(cfg))) return error(409, "an optimization is already running");
            return ok(job_.status(), 202);
        }
        return ok(io::optimization_to_json(optimize(a, cfg)));
    }

    Response save() {
        const auto revision = session_.save();
        return ok({{"path", session_.path().string()}, {"revision", revision}});
    }

    Session& session_;
    OptimizerJob job_;
};

inline constexpr const char* kPlaceholderPage =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>mlrisk</title></head>"
    "<body><p>mlrisk service is running. The API lives under <code>/api</code>; start the server with "
    "<code>--ui-dir</code> to serve the web UI bundle here.</p></body></html>";

/// httplib front end for an Api.
class Server {
public:
    explicit Server(Api& api, std::optional<std::filesystem::path> ui_dir = std::nullopt) : api_(api) {
        auto route = [this](const httplib::Request& req, httplib::Response& res) {
            const auto r = api_.handle(req.method, req.path, req.body);
            res.status = r.status;
            res.set_content(r.body, r.content_type);
        };
        for (const char* p : {"/api/assessment", "/api/optimize/status", "/api/catalog"}) server_.Get(p, route);
        server_.Put("/api/assessment", route);
        for (const char* p : {"/api/evaluate", "/api/whatif", "/api/sweep", "/api/surface", "/api/optimize", "/api/save"})
            server_.Post(p, route);
        if (ui_dir && std::filesystem::is_directory(*ui_dir)) {
            server_.set_mount_point("/", ui_dir->string());
        } else {
            server_.Get("/", [](const httplib::Request&, httplib::Response& res) {
                res.set_content(kPlaceholderPage, "text/html");
            });
        }
    }

    /// Binds to `port` (0 picks a free one). Returns the bound port or -1.
    int bind(const std::string& host, int port) {
        return port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    }

    /// Blocks until stop().
    bool listen() { return server_.listen_after_bind(); }
    void stop() { server_.stop(); }
    void wait_until_ready() const { server_.wait_until_ready(); }

private:
    Api& api_;
    httplib::Server server_;
};

class BindFailure : public Error {
public:
    BindFailure(const std::string& host, int port)
        : Error("cannot bind " + host + ":" + std::to_string(port)) {}
};

/// Loads `assessment_path` and serves it until the process is stopped.
inline void serve(const std::filesystem::path& assessment_path, const std::string& host, int port,
                  std::optional<std::filesystem::path> ui_dir = std::nullopt,
                  const std::function<void(int)>& on_listening = {}) {
    auto session = Session::load(assessment_path);
    Api api(session);
    Server server(api, std::move(ui_dir));
    const int bound = server.bind(host, port);
    if (bound < 0) throw BindFailure(host, port);
    if (on_listening) on_listening(bound);
    server.listen();
}

}  // namespace mlrisk::service
