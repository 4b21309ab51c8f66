#include <gtest/gtest.h>

#include "mlrisk/scoring.hpp"
#include "support/naive.hpp"
#include "support/random_assessment.hpp"
#include "support/sample.hpp"

using namespace mlrisk;
using mlrisk::testkit::sample_assessment;
using mlrisk::testkit::sample_with_scores;

namespace {

constexpr Component CP{SecurityAttribute::Confidentiality, EvalDomain::Proactive};
constexpr Component CR{SecurityAttribute::Confidentiality, EvalDomain::Reactive};
constexpr Component IP{SecurityAttribute::Integrity, EvalDomain::Proactive};
constexpr Component IR{SecurityAttribute::Integrity, EvalDomain::Reactive};
constexpr Component AP{SecurityAttribute::Availability, EvalDomain::Proactive};
constexpr Component AR{SecurityAttribute::Availability, EvalDomain::Reactive};

}  // namespace

TEST(RelativeWeight, SampleCells) {
    const auto a = sample_assessment();
    EXPECT_DOUBLE_EQ(relative_weight(a, "A1", "EF3", CP), 20.0 / 24);
    EXPECT_DOUBLE_EQ(relative_weight(a, "A1", "EF2", CR), 8.0 / 18);
    EXPECT_DOUBLE_EQ(relative_weight(a, "A1", "EF2", SecurityAttribute::Confidentiality, EvalDomain::Reactive),
                     8.0 / 18);
    EXPECT_DOUBLE_EQ(relative_weight(a, "A3", "EF2", CR), 4.0 / 6);
    EXPECT_DOUBLE_EQ(relative_weight(a, "A3", "EF3", CR), 2.0 / 6);
    for (auto c : kAllComponents) EXPECT_EQ(relative_weight(a, "A2", "EF1", c), 0.0);
}

TEST(RelativeWeight, ZeroDenominatorGivesZero) {
    const auto a = sample_assessment();
    EXPECT_EQ(relative_weight(a, "A2", "EF2", AR), 0.0);
    EXPECT_EQ(relative_weight(a, "A2", "EF1", AR), 0.0);
    EXPECT_EQ(relative_weight(a, "A2", "EF3", AR), 0.0);
}

TEST(RelativeWeight, Errors) {
    auto a = sample_assessment();
    EXPECT_THROW(relative_weight(a, "A9", "EF1", CP), UnknownId);
    EXPECT_THROW(relative_weight(a, "A1", "EF9", CP), UnknownId);
    a.factors[0].tailored_out = true;
    a.factors[0].tailoring_justification = "n/a";
    EXPECT_THROW(relative_weight(a, "A1", "EF1", CP), TailoredOutFactor);
}

TEST(Protection, Examples) {
    EXPECT_DOUBLE_EQ(protection_score(sample_with_scores({1, 1, 1}), "A1", CP), 1.0);
    EXPECT_NEAR(protection_score(sample_assessment(), "A1", AP), 4.0 / 6 * 0.8 + 2.0 / 6 * 0.7, 1e-15);
    EXPECT_NEAR(protection_score(sample_assessment(), "A1", AP), 0.767, 5e-4);
    for (auto c : kAllComponents) EXPECT_EQ(protection_score(sample_with_scores({0, 0, 0}), "A3", c), 0.0);
    EXPECT_THROW(protection_score(sample_assessment(), "Z", CP), UnknownId);
}

TEST(FinalScore, Examples) {
    const auto full = sample_with_scores({1, 1, 1});
    EXPECT_DOUBLE_EQ(final_score(full, AR), 0.75);
    EXPECT_DOUBLE_EQ(final_score(full, CP), 1.0);
    for (auto c : kAllComponents) EXPECT_EQ(final_score(sample_with_scores({0, 0, 0}), c), 0.0);
    auto empty = sample_assessment();
    empty.targets.clear();
    EXPECT_THROW(final_score(empty, CP), EmptyTargetList);
}

TEST(Coverage, Examples) {
    EXPECT_NEAR(coverage(sample_with_scores({1, 1, 1}), "A4", CP), 75.0 / 165, 1e-15);
    auto a = sample_assessment();
    a.targets.push_back(a.targets[0]);
    a.targets.back().id = "A5";
    a.targets = normalize_targets(a.targets);
    for (auto c : kAllComponents) EXPECT_EQ(coverage(a, "A5", c), 0.0);
    EXPECT_EQ(coverage(sample_with_scores({0, 0, 0}), "A1", IP), 0.0);
    EXPECT_THROW(coverage(a, "nope", CP), UnknownId);
}

TEST(TotalCoverage, Examples) {
    const auto full = sample_with_scores({1, 1, 1});
    EXPECT_DOUBLE_EQ(total_coverage(full, CP), 1.0);
    EXPECT_DOUBLE_EQ(total_coverage(full, AR), 31.0 / 33);
    for (auto c : kAllComponents) EXPECT_EQ(total_coverage(sample_with_scores({0, 0, 0}), c), 0.0);
}

TEST(Evaluate, SampleAtCurrentScoresMatchesFrozenValues) {
    const auto r = evaluate(sample_assessment());
    for (auto c : {CP, CR, IP, IR}) {
        EXPECT_NEAR(r.final_scores[c.index()], 0.7, 1e-12) << to_string(c);
        EXPECT_NEAR(r.total_coverage[c.index()], 0.7, 1e-12) << to_string(c);
    }
    EXPECT_NEAR(r.final_scores[AP.index()], 2333.0 / 3060, 1e-12);
    EXPECT_NEAR(r.total_coverage[AP.index()], 39373.0 / 50490, 1e-12);
    EXPECT_NEAR(r.final_scores[AR.index()], 0.6, 1e-12);
    EXPECT_NEAR(r.total_coverage[AR.index()], 124.0 / 165, 1e-12);
}

TEST(Evaluate, WeightsForFullScores) {
    const auto r = evaluate(sample_with_scores({1, 1, 1}));
    ASSERT_EQ(r.factor_ids, (std::vector<std::string>{"EF1", "EF2", "EF3"}));
    ASSERT_EQ(r.target_ids, (std::vector<std::string>{"A1", "A2", "A3", "A4"}));
    EXPECT_NEAR(r.weight(0, 0, AP), 2.0 / 3, 1e-15);
    EXPECT_NEAR(r.weight(3, 0, AP), 16.0 / 17, 1e-15);
    EXPECT_EQ(r.weight(1, 1, CP), 1.0);
    for (auto c : kAllComponents) EXPECT_DOUBLE_EQ(r.final_scores[c.index()], c == AR ? 0.75 : 1.0);
}

TEST(Evaluate, EmptyMappingScoresNothing) {
    auto a = sample_assessment();
    a.mapping.clear();
    const auto r = evaluate(a);
    for (const auto& w : r.relative_weights)
        for (double v : w) EXPECT_EQ(v, 0.0);
    for (auto c : kAllComponents) {
        EXPECT_EQ(r.final_scores[c.index()], 0.0);
        EXPECT_EQ(r.total_coverage[c.index()], 0.0);
    }
}

TEST(Evaluate, MatchesDirectSummation) {
    const auto a = sample_assessment();
    const auto r = evaluate(a);
    const auto n = testkit::naive::evaluate(a);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t c = 0; c < 6; ++c) {
            EXPECT_NEAR(r.protection[j][c], n.protection[j][c], 1e-12);
            EXPECT_NEAR(r.coverage[j][c], n.coverage[j][c], 1e-12);
        }
}

TEST(Evaluate, Deterministic) {
    const auto a = sample_assessment();
    EXPECT_EQ(evaluate(a), evaluate(a));
}

TEST(Evaluate, InvalidThrowsWithIssues) {
    auto a = sample_assessment();
    a.mapping.set("A1", "EF1", 9);
    try {
        evaluate(a);
        FAIL() << "expected InvalidAssessment";
    } catch (const InvalidAssessment& e) {
        ASSERT_EQ(e.issues().size(), 1u);
        EXPECT_NE(e.issues()[0].message.find("mapping out of range"), std::string::npos);
    }
}

TEST(Evaluate, TailoredFactorsAreLeftOut) {
    auto a = sample_assessment();
    a.factors[0].tailored_out = true;
    a.factors[0].tailoring_justification = "no load balancer in scope";
    const auto r = evaluate(a);
    EXPECT_EQ(r.factor_ids, (std::vector<std::string>{"EF2", "EF3"}));
    // EF2 is the only remaining contributor to A4 availability.
    EXPECT_DOUBLE_EQ(r.weight(3, 0, AP), 1.0);
}

TEST(Evaluate, UniformCategoryMultipliersChangeNothing) {
    auto a = sample_assessment();
    const auto base = evaluate(a);
    a.category_multipliers = {2.5, 2.5, 2.5, 2.5};
    const auto scaled = evaluate(a);
    for (std::size_t k = 0; k < base.relative_weights.size(); ++k)
        for (std::size_t c = 0; c < 6; ++c)
            EXPECT_NEAR(base.relative_weights[k][c], scaled.relative_weights[k][c], 1e-15);
}

TEST(Evaluate, CategoryMultiplierShiftsWeight) {
    auto a = sample_assessment();
    a.category_multipliers[category_index(Category::Model)] = 2.0;  // EF3
    EXPECT_DOUBLE_EQ(relative_weight(a, "A1", "EF3", CP), 40.0 / 44);
    a.category_multipliers[category_index(Category::Model)] = 0.0;
    EXPECT_DOUBLE_EQ(relative_weight(a, "A1", "EF3", CP), 0.0);
    EXPECT_DOUBLE_EQ(relative_weight(a, "A1", "EF2", CP), 1.0);
}

TEST(Thresholds, Examples) {
    auto a = sample_with_scores({1, 1, 1});
    a.thresholds = {{FactorScope{"EF2"}, 0.5}, {TargetScope{"A2", AR}, 0.1}};
    const auto v = evaluate(a).threshold_verdicts;
    ASSERT_EQ(v.size(), 2u);
    EXPECT_TRUE(v[0].passed);
    EXPECT_EQ(v[0].observed, 1.0);
    EXPECT_FALSE(v[1].passed);
    EXPECT_EQ(v[1].observed, 0.0);

    auto b = sample_assessment();
    b.thresholds = {{FactorScope{"EF2"}, 0.5}};
    EXPECT_TRUE(evaluate(b).threshold_verdicts[0].passed);
    EXPECT_TRUE(evaluate(sample_assessment()).threshold_verdicts.empty());
}

TEST(Thresholds, BoundaryPasses) {
    auto a = sample_assessment();
    a.thresholds = {{FactorScope{"EF2"}, 0.7}, {FactorScope{"EF2"}, 0.71}};
    const auto v = evaluate(a).threshold_verdicts;
    EXPECT_TRUE(v[0].passed);
    EXPECT_FALSE(v[1].passed);
}

TEST(Thresholds, CategoryIsMassWeightedMean) {
    auto a = sample_assessment();
    a.factors[2].category = Category::Data;  // EF2 and EF3 both Data now
    a.thresholds = {{CategoryScope{Category::Data, CP}, 0.7}, {CategoryScope{Category::SecurityControls, CP}, 0.1}};
    const auto v = evaluate(a).threshold_verdicts;
    EXPECT_NEAR(v[0].observed, 0.7, 1e-12);
    EXPECT_TRUE(v[0].passed);
    EXPECT_EQ(v[1].observed, 0.0);
    EXPECT_FALSE(v[1].passed);

    // A/P: EF1 (0.8) is ExecutionEnvironment, EF2 (0.7) carries the Data mass.
    a.thresholds = {{CategoryScope{Category::ExecutionEnvironment, AP}, 0.0}};
    EXPECT_NEAR(evaluate(a).threshold_verdicts[0].observed, 0.8, 1e-12);
}

TEST(Thresholds, UnknownScope) {
    auto a = sample_assessment();
    const auto r = evaluate(a);
    a.thresholds = {{TargetScope{"Z9", CP}, 0.1}};
    EXPECT_THROW(check_thresholds(a, r), UnknownScopeId);
    a.thresholds = {{FactorScope{"Z9"}, 0.1}};
    EXPECT_THROW(check_thresholds(a, r), UnknownScopeId);
}

TEST(CoverageModel, AgreesWithEvaluate) {
    testkit::RandomAssessments gen(11);
    for (int k = 0; k < 100; ++k) {
        const auto a = gen.next();
        const CoverageModel model(a);
        const auto s = gen.scores_for(a);
        const auto tc = model.total_coverage(s);
        const auto r = evaluate(with_scores(a, s));
        double sel = 0;
        for (auto c : a.selected_components) sel += r.total_coverage[c.index()];
        for (std::size_t c = 0; c < 6; ++c) EXPECT_NEAR(tc[c], r.total_coverage[c], 1e-12);
        EXPECT_NEAR(model.selected_total(s), sel, 1e-12);
    }
}

TEST(CoverageModel, DimensionChecked) {
    const CoverageModel model(sample_assessment());
    EXPECT_EQ(model.dimension(), 3u);
    const std::vector<double> two{0.1, 0.2};
    EXPECT_THROW(model.total_coverage(two), DimensionMismatch);
}
