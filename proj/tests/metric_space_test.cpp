#include <gtest/gtest.h>

#include <sstream>

#include "kunneth/metric_space.hpp"
#include "support.hpp"

using namespace kunneth;

namespace {

FiniteMetricSpace line4() { return FiniteMetricSpace::euclidean(PointCloud(1, {0, 1, 2, 3})); }

FiniteMetricSpace twoPoints(double d) { return FiniteMetricSpace::fromMatrix({{0, d}, {d, 0}}); }

}  // namespace

TEST(MetricSpace, Validation) {
    EXPECT_THROW(FiniteMetricSpace::fromMatrix({{0, 1}, {2, 0}}), DomainError);
    EXPECT_THROW(FiniteMetricSpace::fromMatrix({{1, 1}, {1, 0}}), DomainError);
    EXPECT_THROW(FiniteMetricSpace::fromMatrix({{0, -1}, {-1, 0}}), DomainError);
    EXPECT_THROW(FiniteMetricSpace::fromMatrix({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), DomainError);
    EXPECT_THROW(FiniteMetricSpace::fromMatrix({{0, 1}}), DomainError);
    EXPECT_NO_THROW(FiniteMetricSpace::fromMatrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
}

TEST(MaxProduct, Examples) {
    auto p = maxProduct(twoPoints(1), twoPoints(1));
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(p(0, 3), 1.0);

    FiniteMetricSpace point = FiniteMetricSpace::fromMatrix({{0}});
    auto copy = maxProduct(line4(), point);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(copy(i, j), line4()(i, j));
    }

    auto q = maxProduct(twoPoints(2), twoPoints(3));
    EXPECT_EQ(q(0, 3), 3.0);  // (0,0) to (1,1)
    EXPECT_EQ(q(0, 2), 2.0);  // (0,0) to (1,0)
    EXPECT_EQ(q(0, 1), 3.0);  // (0,0) to (0,1)
}

TEST(MaxProduct, IsMetric) {
    testutil::Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = maxProduct(testutil::randomPlanarMetric(rng, 5), testutil::randomPlanarMetric(rng, 5));
        EXPECT_NO_THROW(p.validate());
    }
}

TEST(Maxmin, Line) {
    auto sel = maxminLandmarks(line4(), 3, 0);
    EXPECT_EQ(sel.indices, (std::vector<std::size_t>{0, 3, 1}));
    EXPECT_EQ(sel.coveringRadius, 1.0);

    auto all = maxminLandmarks(line4(), 4, 0);
    EXPECT_EQ(all.coveringRadius, 0.0);

    auto one = maxminLandmarks(line4(), 1, 0);
    EXPECT_EQ(one.indices, (std::vector<std::size_t>{0}));
    EXPECT_EQ(one.coveringRadius, 3.0);

    EXPECT_THROW(maxminLandmarks(line4(), 0, 0), DomainError);
    EXPECT_THROW(maxminLandmarks(line4(), 5, 0), DomainError);
    EXPECT_THROW(maxminLandmarks(line4(), 2, 4), DomainError);
}

TEST(Maxmin, DistinctIndicesWithDuplicatePoints) {
    auto x = FiniteMetricSpace::euclidean(PointCloud(1, {0, 0, 0, 1}));
    auto sel = maxminLandmarks(x, 4, 0);
    std::vector<std::size_t> sorted = sel.indices;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Maxmin, PointCloudAgreesWithMatrix) {
    testutil::Rng rng(4);
    std::vector<double> coords;
    for (int i = 0; i < 60; ++i) coords.push_back(testutil::uniformReal(rng, -1, 1));
    PointCloud pts(3, coords);
    auto a = maxminLandmarks(pts, 7, 2);
    auto b = maxminLandmarks(FiniteMetricSpace::euclidean(pts), 7, 2);
    EXPECT_EQ(a.indices, b.indices);
    EXPECT_EQ(a.coveringRadius, b.coveringRadius);
}

TEST(CoveringRadius, Examples) {
    std::vector<std::size_t> all{0, 1, 2, 3}, first{0}, ends{0, 3};
    EXPECT_EQ(coveringRadius(all, line4()), 0.0);
    EXPECT_EQ(coveringRadius(first, line4()), 3.0);
    EXPECT_EQ(coveringRadius(ends, line4()), 1.0);
    EXPECT_EQ(coveringRadius(ends, line4()), maxminLandmarks(line4(), 2, 0).coveringRadius);
}

TEST(CoveringRadius, NonincreasingInCount) {
    testutil::Rng rng(6);
    std::vector<double> coords;
    for (int i = 0; i < 80; ++i) coords.push_back(testutil::uniformReal(rng, 0, 1));
    auto x = FiniteMetricSpace::euclidean(PointCloud(2, coords));
    double previous = kInfinity;
    for (std::size_t k = 1; k <= x.size(); ++k) {
        auto sel = maxminLandmarks(x, k, 0);
        EXPECT_LE(sel.coveringRadius, previous);
        EXPECT_EQ(sel.coveringRadius, coveringRadius(sel.indices, x));
        previous = sel.coveringRadius;
    }
}

// The covering radius of a product of landmark sets under the max metric is
// the larger of the factor covering radii.
TEST(CoveringRadius, FactorsUnderMaxProduct) {
    testutil::Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = testutil::randomPlanarMetric(rng, 7);
        auto y = testutil::randomPlanarMetric(rng, 7);
        auto lx = maxminLandmarks(x, testutil::uniformInt(rng, 1, static_cast<int>(x.size())), 0);
        auto ly = maxminLandmarks(y, testutil::uniformInt(rng, 1, static_cast<int>(y.size())), 0);
        std::vector<std::size_t> grid;
        for (auto a : lx.indices) {
            for (auto b : ly.indices) grid.push_back(a * y.size() + b);
        }
        EXPECT_EQ(coveringRadius(grid, maxProduct(x, y)), std::max(lx.coveringRadius, ly.coveringRadius));
    }
}

TEST(Io, PointCloudCsv) {
    std::istringstream in("0,0\n1, 0\n# comment\n\n0.5,0.8660254037844386\n");
    auto pts = readPointCloudCsv(in);
    EXPECT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts.dimension(), 2u);
    EXPECT_EQ(pts[1][0], 1.0);

    std::istringstream empty("");
    EXPECT_THROW(readPointCloudCsv(empty), ParseError);
    std::istringstream ragged("0,0\n1\n");
    EXPECT_THROW(readPointCloudCsv(ragged), ParseError);
    std::istringstream junk("0,zero\n");
    EXPECT_THROW(readPointCloudCsv(junk), ParseError);
}

TEST(Io, LowerDistanceMatrix) {
    std::istringstream in("\n1\n2 1\n");
    auto m = readLowerDistanceMatrix(in);
    EXPECT_EQ(m.size(), 3u);
    EXPECT_EQ(m(2, 0), 2.0);
    EXPECT_EQ(m(0, 2), 2.0);
    EXPECT_EQ(m(1, 2), 1.0);

    std::istringstream notTriangular("1\n2\n");
    EXPECT_THROW(readLowerDistanceMatrix(notTriangular), ParseError);
    std::istringstream violates("1\n5,1\n");
    EXPECT_THROW(readLowerDistanceMatrix(violates), ParseError);
}
