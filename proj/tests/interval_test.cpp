#include <gtest/gtest.h>

#include <vector>

#include "kunneth/interval.hpp"

using namespace kunneth;

TEST(Interval, RejectsEmptyAndInfiniteBirth) {
    EXPECT_THROW(Interval(2, 2), std::invalid_argument);
    EXPECT_THROW(Interval(3, 1), std::invalid_argument);
    EXPECT_THROW(Interval(kInfinity, kInfinity), std::invalid_argument);
    EXPECT_NO_THROW(Interval(0, kInfinity));
    EXPECT_FALSE(makeInterval(4, 4).has_value());
}

TEST(Interval, Intersect) {
    EXPECT_EQ(intersect(Interval(2, 4), Interval(1, 3)), Interval(2, 3));
    EXPECT_EQ(intersect(Interval(0, kInfinity), Interval(0, kInfinity)), Interval(0, kInfinity));
    EXPECT_FALSE(intersect(Interval(1, 2), Interval(2, 5)).has_value());
}

TEST(Interval, Shift) {
    EXPECT_EQ(shift(Interval(2, 4), 3), Interval(5, 7));
    EXPECT_EQ(shift(Interval(0, kInfinity), 5), Interval(5, kInfinity));
    EXPECT_EQ(shift(Interval(1.5, 2.25), 0), Interval(1.5, 2.25));
    EXPECT_THROW(shift(Interval(0, 1), kInfinity), std::invalid_argument);
    EXPECT_FALSE(shiftOrEmpty(Interval(0, 1), kInfinity).has_value());
}

TEST(Interval, Length) {
    EXPECT_EQ(barLength(Interval(1, 3)), 2);
    EXPECT_TRUE(isInfinite(barLength(Interval(5, kInfinity))));
    EXPECT_EQ(barLength(Interval(4, 6)), 2);
}

TEST(IntervalModule, Tensor) {
    EXPECT_EQ(tensorIntervalModule({1, 2}, {2, 3}), IntervalModuleShape(3, 2));
    EXPECT_EQ(tensorIntervalModule({1, 2}, {2, 3}).toInterval(), Interval(3, 5));
    EXPECT_EQ(tensorIntervalModule({0, kInfinity}, {4, 3}), IntervalModuleShape(4, 3));
    EXPECT_EQ(tensorIntervalModule({5, kInfinity}, {0, kInfinity}), IntervalModuleShape(5, kInfinity));
}

TEST(IntervalModule, Tor) {
    EXPECT_EQ(torIntervalModule({2, 2}, {2, 2}), IntervalModuleShape(6, 2));
    EXPECT_EQ(torIntervalModule({1, 2}, {1, 2})->toInterval(), Interval(4, 6));
    EXPECT_FALSE(torIntervalModule({3, kInfinity}, {1, 2}).has_value());
    EXPECT_FALSE(torIntervalModule({1, 2}, {3, kInfinity}).has_value());
}

namespace {

std::vector<double> lengths() {
    std::vector<double> out;
    for (int k = 1; k <= 8; ++k) out.push_back(k);
    out.push_back(kInfinity);
    return out;
}

}  // namespace

// Closed forms for I_{m,k} tensor and Tor against the shift-and-intersect formulas.
TEST(IntervalModule, ClosedFormsMatchShiftIntersect) {
    for (int m = 0; m <= 8; ++m) {
        for (int n = 0; n <= 8; ++n) {
            for (double k : lengths()) {
                for (double l : lengths()) {
                    IntervalModuleShape a(m, k), b(n, l);
                    Interval i = a.toInterval(), j = b.toInterval();
                    auto viaBars = tensorBar(i, j);
                    ASSERT_TRUE(viaBars.has_value());
                    EXPECT_EQ(tensorIntervalModule(a, b).toInterval(), *viaBars);
                    EXPECT_EQ(tensorIntervalModule(a, b), tensorIntervalModule(b, a));

                    auto tor = torIntervalModule(a, b);
                    auto torViaBars = torBar(i, j);
                    ASSERT_EQ(tor.has_value(), torViaBars.has_value()) << m << ' ' << k << ' ' << n << ' ' << l;
                    if (tor) {
                        EXPECT_EQ(tor->toInterval(), *torViaBars);
                        EXPECT_EQ(tor->length, std::min(k, l));
                    }
                    EXPECT_EQ(torIntervalModule(b, a).has_value(), tor.has_value());
                }
            }
        }
    }
}

TEST(Interval, IntersectionLaws) {
    std::vector<Interval> sample;
    for (int b = 0; b <= 4; ++b) {
        for (int d = b + 1; d <= 5; ++d) sample.emplace_back(b, d);
        sample.emplace_back(b, kInfinity);
    }
    for (const auto& a : sample) {
        EXPECT_EQ(intersect(a, a), a);
        for (const auto& b : sample) {
            EXPECT_EQ(intersect(a, b), intersect(b, a));
            for (double c : {0.0, 1.0, 2.5}) {
                auto lhs = intersect(a, b);
                auto rhs = intersect(shift(a, c), shift(b, c));
                ASSERT_EQ(lhs.has_value(), rhs.has_value());
                if (lhs) {
                    EXPECT_EQ(shift(*lhs, c), *rhs);
                }
            }
            for (const auto& e : sample) {
                EXPECT_EQ(intersect(intersect(a, b), std::optional<Interval>(e)),
                          intersect(std::optional<Interval>(a), intersect(b, e)));
            }
        }
    }
}

TEST(GradedBarcode, MultisetEquality) {
    GradedBarcode a{{0, {Interval(0, 1), Interval(0, kInfinity), Interval(0, 1)}}};
    GradedBarcode b{{0, {Interval(0, kInfinity), Interval(0, 1), Interval(0, 1)}}, {3, {}}};
    GradedBarcode c{{0, {Interval(0, kInfinity), Interval(0, 1)}}};
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    EXPECT_EQ(b.topDimension(), 0);
    EXPECT_EQ(a.totalBars(), 3u);
    EXPECT_TRUE(GradedBarcode{}[7].empty());
}
