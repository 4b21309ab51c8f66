#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <thread>

#include "mlrisk/service.hpp"
#include "support/sample.hpp"

using namespace mlrisk;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

class ServiceTest : public ::testing::Test {
protected:
    void SetUp() override {
        path_ = fs::temp_directory_path() /
                ("mlrisk_svc_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + ".risk");
        io::save_assessment(testkit::sample_assessment(), path_);
        session_ = std::make_unique<service::Session>(io::load_assessment(path_), path_);
        api_ = std::make_unique<service::Api>(*session_);
    }
    void TearDown() override {
        api_->job().join();
        fs::remove(path_);
    }

    json call(std::string_view method, std::string_view path, const json& body = json::object(), int status = 200) {
        const auto r = api_->handle(method, path, body.dump());
        EXPECT_EQ(r.status, status) << method << " " << path << ": " << r.body;
        return json::parse(r.body);
    }

    fs::path path_;
    std::unique_ptr<service::Session> session_;
    std::unique_ptr<service::Api> api_;
};

}  // namespace

TEST_F(ServiceTest, GetAssessment) {
    const auto j = call("GET", "/api/assessment");
    EXPECT_EQ(j.at("revision"), 0);
    EXPECT_EQ(io::assessment_from_json(j.at("document").at("assessment")), testkit::sample_assessment());
}

TEST_F(ServiceTest, EvaluateMatchesLibrary) {
    const auto j = call("POST", "/api/evaluate");
    EXPECT_EQ(j.at("revision"), 0);
    EXPECT_EQ(j.at("report"), io::report_to_json(evaluate(testkit::sample_assessment())));
}

TEST_F(ServiceTest, WhatIfIsStateless) {
    const auto j = call("POST", "/api/whatif", {{"scores", {1.0, 1.0, 1.0}}});
    const auto full = testkit::sample_with_scores({1, 1, 1});
    EXPECT_EQ(j.at("report"), io::report_to_json(evaluate(full)));
    EXPECT_EQ(j.at("cost"), io::cost_report_to_json(cost_report(full)));
    EXPECT_EQ(call("POST", "/api/whatif", {{"scores", {{"EF1", 0.8}}}}).at("cost"),
              io::cost_report_to_json(cost_report(testkit::sample_assessment())));
    EXPECT_EQ(session_->revision(), 0u);
    EXPECT_EQ(session_->snapshot().assessment, testkit::sample_assessment());
    EXPECT_TRUE(call("POST", "/api/whatif", {{"scores", {0, 0, 0}}}).at("cost").at("efficiency_ratio").is_null());
}

TEST_F(ServiceTest, WhatIfErrors) {
    call("POST", "/api/whatif", {{"scores", {1.0}}}, 400);
    call("POST", "/api/whatif", {{"scores", {2.0, 0, 0}}}, 400);
    call("POST", "/api/whatif", {{"scores", {{"EF9", 0.5}}}}, 404);
    const auto r = api_->handle("POST", "/api/whatif", "{oops");
    EXPECT_EQ(r.status, 400);
}

TEST_F(ServiceTest, PutWithRevision) {
    auto a = testkit::sample_assessment();
    a.factors[0].implementation_score = 0.3;
    const auto doc = io::document_to_json(a);
    auto j = call("PUT", "/api/assessment", {{"expected_revision", 0}, {"document", doc}});
    EXPECT_EQ(j.at("revision"), 1);
    EXPECT_EQ(session_->snapshot().assessment, a);

    j = call("PUT", "/api/assessment", {{"expected_revision", 0}, {"document", doc}}, 409);
    EXPECT_EQ(j.at("revision"), 1);
    EXPECT_EQ(session_->revision(), 1u);

    a.mapping.set("A1", "EF1", 9);
    j = call("PUT", "/api/assessment", {{"expected_revision", 1}, {"document", io::document_to_json(a)}}, 422);
    EXPECT_FALSE(j.at("issues").empty());
    EXPECT_EQ(session_->revision(), 1u);
}

TEST_F(ServiceTest, SaveIsByteIdentical) {
    const auto before = io::read_file(path_);
    call("POST", "/api/save");
    EXPECT_EQ(io::read_file(path_), before);

    auto a = testkit::sample_assessment();
    a.name = "changed";
    call("PUT", "/api/assessment", {{"expected_revision", 0}, {"document", io::document_to_json(a)}});
    EXPECT_EQ(io::read_file(path_), before);  // not persisted until saved
    call("POST", "/api/save");
    EXPECT_EQ(io::load_assessment(path_).name, "changed");
}

TEST_F(ServiceTest, Optimize) {
    const auto j = call("POST", "/api/optimize", {{"min_score", 0.1}, {"grid_step", 0.1}});
    EXPECT_EQ(j, io::optimization_to_json(optimize(testkit::sample_assessment())));
    EXPECT_NEAR(j.at("best_scores").at("EF1").get<double>(), 0.8, 1e-12);
    EXPECT_NEAR(j.at("best_scores").at("EF2").get<double>(), 0.7, 1e-12);
    EXPECT_NEAR(j.at("best_scores").at("EF3").get<double>(), 0.7, 1e-12);
    call("POST", "/api/optimize", {{"budget", 5}}, 422);
    call("POST", "/api/optimize", {{"strategy", "annealing"}}, 400);
    call("POST", "/api/optimize", {{"unknown", 1}}, 400);
}

TEST_F(ServiceTest, OptimizeAsync) {
    EXPECT_EQ(call("GET", "/api/optimize/status").at("state"), "idle");
    call("POST", "/api/optimize", {{"async", true}, {"strategy", "heuristic"}}, 202);
    api_->job().join();
    const auto status = call("GET", "/api/optimize/status");
    EXPECT_EQ(status.at("state"), "done");
    OptimizationConfig cfg;
    cfg.strategy = Strategy::CoordinateDescent;
    EXPECT_EQ(status.at("result"), io::optimization_to_json(optimize(testkit::sample_assessment(), cfg)));
}

TEST_F(ServiceTest, SweepMatchesLibrary) {
    EXPECT_EQ(call("POST", "/api/sweep", {{"ef", "EF1"}}),
              io::sweep_to_json(sweep_ef(testkit::sample_assessment(), "EF1")));
    EXPECT_EQ(call("POST", "/api/sweep", {{"ef", "EF2"}, {"steps", 5}, {"baseline", {0.8, 0.7, 0.7}}}),
              io::sweep_to_json(sweep_ef(testkit::sample_assessment(), "EF2", 5, {0.8, 0.7, 0.7})));
    call("POST", "/api/sweep", {{"ef", "EF9"}}, 404);
}

TEST_F(ServiceTest, SurfaceMatchesLibrary) {
    EXPECT_EQ(call("POST", "/api/surface", {{"ef_x", "EF1"}, {"ef_y", "EF2"}, {"fixed", 0.7}, {"resolution", 4}}),
              io::surface_to_json(efficiency_surface(testkit::sample_assessment(), "EF1", "EF2", 0.7, 4)));
    call("POST", "/api/surface", {{"ef_x", "EF1"}, {"ef_y", "EF1"}}, 400);
}

TEST_F(ServiceTest, CatalogAndUnknown) {
    EXPECT_EQ(call("GET", "/api/catalog"), io::catalog_to_json(Catalog::builtin()));
    call("GET", "/api/nothing", json::object(), 404);
    call("DELETE", "/api/assessment", json::object(), 404);
}

TEST_F(ServiceTest, ConcurrentReadsDuringWrites) {
    std::atomic<bool> stop{false};
    std::vector<std::thread> readers;
    std::atomic<int> bad{0};
    for (int k = 0; k < 3; ++k)
        readers.emplace_back([&] {
            while (!stop) {
                const auto r = api_->handle("POST", "/api/evaluate", "");
                if (r.status != 200) ++bad;
            }
        });
    for (int rev = 0; rev < 20; ++rev) {
        auto a = testkit::sample_assessment();
        a.factors[0].implementation_score = rev / 20.0;
        call("PUT", "/api/assessment", {{"expected_revision", rev}, {"document", io::document_to_json(a)}});
    }
    stop = true;
    for (auto& t : readers) t.join();
    EXPECT_EQ(bad, 0);
    EXPECT_EQ(session_->revision(), 20u);
}

TEST_F(ServiceTest, LiveServer) {
    service::Server server(*api_);
    const int port = server.bind("127.0.0.1", 0);
    ASSERT_GT(port, 0);
    std::thread t([&] { server.listen(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto res = client.Get("/api/assessment");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body).at("revision"), 0);

    res = client.Post("/api/whatif", json({{"scores", {0.8, 0.7, 0.7}}}).dump(), "application/json");
    ASSERT_TRUE(res);
    EXPECT_NEAR(json::parse(res->body).at("cost").at("efficiency_ratio").get<double>(), 7264.276483956669, 1e-8);

    res = client.Get("/");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);

    server.stop();
    t.join();
}
