#include <gtest/gtest.h>

#include <cmath>

#include "mlrisk/sensitivity.hpp"
#include "support/random_assessment.hpp"
#include "support/sample.hpp"

using namespace mlrisk;
using mlrisk::testkit::sample_assessment;

namespace {

constexpr Component CP{SecurityAttribute::Confidentiality, EvalDomain::Proactive};
constexpr Component AP{SecurityAttribute::Availability, EvalDomain::Proactive};

}  // namespace

TEST(Sweep, AvailabilityRisesConfidentialityFlat) {
    const auto s = sweep_ef(sample_assessment(), "EF1");
    ASSERT_EQ(s.samples.size(), 11u);
    EXPECT_EQ(s.ef_id, "EF1");
    EXPECT_EQ(s.baseline_scores, (std::vector<double>{0, 0, 0}));
    EXPECT_EQ(s.samples.front().total_coverage[AP.index()], 0.0);
    for (std::size_t k = 0; k < s.samples.size(); ++k) {
        EXPECT_NEAR(s.samples[k].score, k / 10.0, 1e-15);
        EXPECT_EQ(s.samples[k].total_coverage[CP.index()], 0.0);
        if (k > 0) {
            EXPECT_GT(s.samples[k].total_coverage[AP.index()], s.samples[k - 1].total_coverage[AP.index()]);
        }
    }
    // Linear: the midpoint is the mean of the ends.
    const double lo = s.samples.front().total_coverage[AP.index()];
    const double hi = s.samples.back().total_coverage[AP.index()];
    EXPECT_NEAR(s.samples[5].total_coverage[AP.index()], (lo + hi) / 2, 1e-12);
}

TEST(Sweep, TwoStepsAreEndpoints) {
    const auto s = sweep_ef(sample_assessment(), "EF2", 2);
    ASSERT_EQ(s.samples.size(), 2u);
    EXPECT_EQ(s.samples[0].score, 0.0);
    EXPECT_EQ(s.samples[1].score, 1.0);
}

TEST(Sweep, UnmappedFactorIsFlat) {
    auto a = sample_assessment();
    for (const auto& t : a.targets) a.mapping.set(t.id, "EF3", 0);
    const std::vector<double> base{0.3, 0.6, 0.2};
    const auto s = sweep_ef(a, "EF3", 11, base);
    for (const auto& sample : s.samples) EXPECT_EQ(sample.total_coverage, s.samples.front().total_coverage);
}

TEST(Sweep, BaselineIsHeld) {
    const std::vector<double> base{0.8, 0.7, 0.7};
    const auto s = sweep_ef(sample_assessment(), "EF2", 11, base);
    // At the baseline's own score the sweep reproduces the current report.
    const auto r = evaluate(sample_assessment());
    for (std::size_t c = 0; c < 6; ++c) EXPECT_NEAR(s.samples[7].total_coverage[c], r.total_coverage[c], 1e-12);
}

TEST(Sweep, Errors) {
    auto a = sample_assessment();
    EXPECT_THROW(sweep_ef(a, "EF9"), UnknownId);
    EXPECT_THROW(sweep_ef(a, "EF1", 1), InvalidConfig);
    EXPECT_THROW(sweep_ef(a, "EF1", 11, {0.1}), DimensionMismatch);
    a.factors[0].tailored_out = true;
    a.factors[0].tailoring_justification = "n/a";
    EXPECT_THROW(sweep_ef(a, "EF1"), TailoredOutFactor);
}

TEST(Sweep, CollinearEverywhere) {
    testkit::RandomAssessments gen(51);
    for (int k = 0; k < 100; ++k) {
        const auto a = gen.next();
        const auto ids = active_factor_ids(a);
        const auto base = gen.scores_for(a);
        for (const auto& id : ids) {
            const auto s = sweep_ef(a, id, 11, base);
            for (std::size_t c = 0; c < 6; ++c) {
                const double y0 = s.samples[0].total_coverage[c];
                const double y1 = s.samples[10].total_coverage[c];
                for (const auto& sample : s.samples)
                    EXPECT_NEAR(sample.total_coverage[c], y0 + (y1 - y0) * sample.score, 1e-12);
            }
        }
    }
}

TEST(Surface, MinimumNearSampleOptimum) {
    const auto s = efficiency_surface(sample_assessment(), "EF1", "EF2", 0.7, 10);
    ASSERT_EQ(s.grid.size(), 10u);
    ASSERT_EQ(s.grid[0].size(), 10u);
    std::size_t bx = 0, by = 0;
    for (std::size_t y = 0; y < 10; ++y)
        for (std::size_t x = 0; x < 10; ++x)
            if (s.grid[y][x] < s.grid[by][bx]) {
                bx = x;
                by = y;
            }
    EXPECT_NEAR(s.x_values[bx], 0.8, 0.1 + 1e-12);
    EXPECT_NEAR(s.y_values[by], 0.7, 0.1 + 1e-12);
    EXPECT_NEAR(s.grid[6][7], 7264.276483956669, 1e-8);
}

TEST(Surface, ResolutionTwoIsCorners) {
    const auto s = efficiency_surface(sample_assessment(), "EF1", "EF3", 0.5, 2);
    EXPECT_EQ(s.x_values, (std::vector<double>{0.1, 1.0}));
    ASSERT_EQ(s.grid.size(), 2u);
    EXPECT_EQ(s.grid[1].size(), 2u);
    const auto expect = efficiency_ratio(sample_assessment(), std::vector<double>{1.0, 0.5, 0.1});
    EXPECT_EQ(s.grid[0][1], expect);
}

TEST(Surface, FreeFactorsCostNothing) {
    auto a = sample_assessment();
    for (auto& f : a.factors) f.max_cost = 0;
    const auto s = efficiency_surface(a, "EF2", "EF3", 0.7, 5);
    for (const auto& row : s.grid)
        for (double v : row) EXPECT_EQ(v, 0.0);
}

TEST(Surface, Errors) {
    const auto a = sample_assessment();
    EXPECT_THROW(efficiency_surface(a, "EF1", "EF1", 0.7, 5), SameAxis);
    EXPECT_THROW(efficiency_surface(a, "EF1", "EF9", 0.7, 5), UnknownId);
    EXPECT_THROW(efficiency_surface(a, "EF1", "EF2", 0.7, 1), InvalidConfig);
    EXPECT_THROW(efficiency_surface(a, "EF1", "EF2", std::vector<double>{0.7}, 5), DimensionMismatch);
}

TEST(Surface, RowMatchesSweepAtThatBaseline) {
    const auto a = sample_assessment();
    const std::vector<double> fixed{0.8, 0.7, 0.7};
    const auto s = efficiency_surface(a, "EF1", "EF2", fixed, 10);
    const EfficiencyObjective objective(a);
    for (std::size_t y = 0; y < s.y_values.size(); ++y) {
        for (std::size_t x = 0; x < s.x_values.size(); ++x) {
            std::vector<double> p = fixed;
            p[0] = s.x_values[x];
            p[1] = s.y_values[y];
            const auto tc = objective.coverage().total_coverage(p);
            double sel = 0;
            for (double v : tc) sel += v;
            EXPECT_NEAR(s.grid[y][x], objective.total_cost(p) / sel, 1e-9);
        }
    }
}

TEST(Rank, SampleOrdering) {
    const auto ranking = rank_factors(sample_assessment());
    ASSERT_EQ(ranking.size(), 3u);
    const auto best_ap = std::max_element(ranking.begin(), ranking.end(), [](const auto& l, const auto& r) {
        return l.influence[AP.index()] < r.influence[AP.index()];
    });
    EXPECT_EQ(best_ap->ef_id, "EF1");
    for (std::size_t k = 1; k < ranking.size(); ++k) EXPECT_GE(ranking[k - 1].total(), ranking[k].total());
}

TEST(Rank, UnmappedFactorHasNoInfluence) {
    auto a = sample_assessment();
    for (const auto& t : a.targets) a.mapping.set(t.id, "EF2", 0);
    for (const auto& fi : rank_factors(a))
        if (fi.ef_id == "EF2") {
            for (double v : fi.influence) EXPECT_EQ(v, 0.0);
        }
}

TEST(Rank, IdenticalFactorsOrderedById) {
    auto a = sample_assessment();
    auto twin = a.factors[2];
    twin.id = "EF0";
    a.factors.insert(a.factors.begin(), twin);
    for (const auto& t : a.targets) a.mapping.set(t.id, "EF0", a.mapping.at(t.id, "EF3"));
    const auto ranking = rank_factors(a);
    std::vector<std::string> ids;
    for (const auto& fi : ranking) ids.push_back(fi.ef_id);
    const auto p0 = std::find(ids.begin(), ids.end(), "EF0");
    const auto p3 = std::find(ids.begin(), ids.end(), "EF3");
    EXPECT_EQ(p3 - p0, 1);
    EXPECT_EQ(p0->size(), 3u);
    EXPECT_EQ(ranking[static_cast<std::size_t>(p0 - ids.begin())].influence,
              ranking[static_cast<std::size_t>(p3 - ids.begin())].influence);
}

TEST(Rank, InfluencesAddUp) {
    testkit::RandomAssessments gen(52);
    for (int k = 0; k < 100; ++k) {
        const auto a = gen.next();
        const auto n = active_factor_indices(a).size();
        const CoverageModel model(a);
        const auto hi = model.total_coverage(std::vector<double>(n, 1.0));
        const auto lo = model.total_coverage(std::vector<double>(n, 0.0));
        PerComponent<double> sum{};
        for (const auto& fi : rank_factors(a))
            for (std::size_t c = 0; c < 6; ++c) sum[c] += fi.influence[c];
        for (std::size_t c = 0; c < 6; ++c) EXPECT_NEAR(sum[c], hi[c] - lo[c], 1e-9);
    }
}
