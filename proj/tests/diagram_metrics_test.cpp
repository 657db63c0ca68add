#include <gtest/gtest.h>

#include <cmath>

#include "kunneth/combinators.hpp"
#include "kunneth/diagram_metrics.hpp"
#include "support.hpp"

using namespace kunneth;

TEST(DeltaMatching, Examples) {
    Bars d{Interval(0, 2), Interval(1, kInfinity)};
    Matching identity;
    for (const auto& b : d) identity.pairs.emplace_back(b, b);
    EXPECT_TRUE(isDeltaMatching(identity, 0));

    Matching discard;
    discard.unmatchedA = {Interval(0, 2)};
    EXPECT_TRUE(isDeltaMatching(discard, 1));
    EXPECT_FALSE(isDeltaMatching(discard, 0.9));

    Matching mixed;
    mixed.pairs.emplace_back(Interval(0, 2), Interval(0, kInfinity));
    EXPECT_FALSE(isDeltaMatching(mixed, 1e12));
}

TEST(Bottleneck, Examples) {
    Bars d{Interval(0, 2), Interval(1, kInfinity), Interval(0.5, 0.75)};
    EXPECT_EQ(bottleneck(d, d), 0.0);
    EXPECT_EQ(bottleneck({Interval(0, 2)}, {}), 1.0);
    EXPECT_EQ(bottleneck({Interval(0, 4)}, {Interval(1, 4)}), 1.0);
    EXPECT_EQ(bottleneck({}, {}), 0.0);
    EXPECT_TRUE(std::isinf(bottleneck({Interval(0, kInfinity)}, {})));
    EXPECT_EQ(bottleneck({Interval(0, kInfinity)}, {Interval(2, kInfinity)}), 2.0);
}

TEST(Bottleneck, MatchesBruteForce) {
    testutil::Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        Bars a = testutil::randomDiagram(rng), b = testutil::randomDiagram(rng);
        auto result = bottleneckMatching(a, b);
        double brute = testutil::bruteForceBottleneck(a, b);
        if (std::isinf(brute)) {
            EXPECT_TRUE(std::isinf(result.distance));
            continue;
        }
        EXPECT_NEAR(result.distance, brute, 1e-9);
        EXPECT_TRUE(isDeltaMatching(result.matching, result.distance));
        EXPECT_TRUE(partitions(result.matching, a, b));
        EXPECT_EQ(bottleneck(b, a), result.distance);
    }
}

TEST(Bottleneck, TriangleInequalityAndReordering) {
    testutil::Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        Bars a = testutil::randomDiagram(rng, 5, 0), b = testutil::randomDiagram(rng, 5, 0),
             c = testutil::randomDiagram(rng, 5, 0);
        EXPECT_LE(bottleneck(a, c), bottleneck(a, b) + bottleneck(b, c) + 1e-9);
        Bars shuffled = a;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(bottleneck(shuffled, b), bottleneck(a, b));
    }
}

TEST(LogComparison, IdenticalInputs) {
    GradedBarcode x{{1, {Interval(1, 3), Interval(2, kInfinity)}}};
    auto report = logScaleComparisonReport(x, x, 1);
    EXPECT_EQ(report.logBottleneck, 0.0);
    for (const auto& p : report.pairs) {
        EXPECT_EQ(p.birthRatio, 1.0);
        EXPECT_EQ(p.deathRatio, 1.0);
    }
    EXPECT_TRUE(report.passes());
}

TEST(LogComparison, UnmatchedBar) {
    GradedBarcode x{{1, {Interval(1, 3)}}}, empty;
    auto report = logScaleComparisonReport(x, empty, 1);
    ASSERT_EQ(report.unmatched.size(), 1u);
    EXPECT_EQ(report.unmatched[0].deathOverBirth, 3.0);
    EXPECT_TRUE(report.unmatched[0].withinFactorFour);
    EXPECT_NEAR(report.logBottleneck, std::log(3.0) / 2, 1e-12);
}

TEST(LogComparison, FiltersZeroBirths) {
    GradedBarcode x{{0, {Interval(0, kInfinity), Interval(0, 1)}}};
    EXPECT_THROW(logScaleComparisonReport(x, x, 0), EmptyAfterFilter);
    GradedBarcode y{{1, {Interval(0, 2), Interval(1, 2)}}};
    auto report = logScaleComparisonReport(y, y, 1);
    EXPECT_EQ(report.filteredCategorical, 1u);
    EXPECT_EQ(report.filteredTensor, 1u);
}

TEST(LogComparison, CirclesWithinBound) {
    auto circle = [](double radius) {
        std::vector<double> coords;
        for (int i = 0; i < 8; ++i) {
            coords.push_back(radius * std::cos(i * M_PI / 4));
            coords.push_back(radius * std::sin(i * M_PI / 4));
        }
        return computeBarcode(ripsFiltration(FiniteMetricSpace::euclidean(PointCloud(2, coords)), 3));
    };
    auto x = circle(1.0), y = circle(1.5);
    auto cat = categoricalProductBarcode(x, y, 2), ten = tensorProductBarcode(x, y, 2);
    auto report = logScaleComparisonReport(cat, ten, 1);
    EXPECT_LE(report.logBottleneck, std::log(2.0) + 1e-9);
    EXPECT_TRUE(report.passes());
}
