#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kunneth/interval.hpp"

namespace kunneth {

/// bcd_n(X x Y) = { I cap J : I in bcd_i(X), J in bcd_j(Y), i + j = n }.
inline GradedBarcode categoricalProductBarcode(const GradedBarcode& x, const GradedBarcode& y,
                                               int maxDim) {
    GradedBarcode out;
    for (int n = 0; n <= maxDim; ++n) {
        for (int i = 0; i <= n; ++i) {
            for (const auto& a : x[i]) {
                for (const auto& b : y[n - i]) out.add(n, intersect(a, b));
            }
        }
    }
    return out;
}

/// Tensor (sum) filtration barcode: shifted intersections in degree i+j plus
/// Tor bars of finite pairs in degree i+j+1.
inline GradedBarcode tensorProductBarcode(const GradedBarcode& x, const GradedBarcode& y,
                                          int maxDim) {
    GradedBarcode out;
    for (int n = 0; n <= maxDim; ++n) {
        for (int i = 0; i <= n; ++i) {
            for (const auto& a : x[i]) {
                for (const auto& b : y[n - i]) out.add(n, tensorBar(a, b));
            }
        }
        for (int i = 0; i <= n - 1; ++i) {
            for (const auto& a : x[i]) {
                for (const auto& b : y[n - 1 - i]) out.add(n, torBar(a, b));
            }
        }
    }
    return out;
}

/// Element of {0, 1, 2, ...} U {inf} with inf * 0 = 0.
class ExtendedCount {
public:
    constexpr ExtendedCount() = default;
    constexpr ExtendedCount(std::uint64_t v) : value_(v) {}

    static constexpr ExtendedCount infinity() {
        ExtendedCount c;
        c.infinite_ = true;
        return c;
    }

    constexpr bool isInfinite() const { return infinite_; }
    constexpr std::uint64_t value() const {
        if (infinite_) throw std::logic_error("infinite count has no finite value");
        return value_;
    }

    friend constexpr ExtendedCount operator+(ExtendedCount a, ExtendedCount b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return a.value_ + b.value_;
    }

    friend constexpr ExtendedCount operator*(ExtendedCount a, ExtendedCount b) {
        if (a.isZero() || b.isZero()) return 0;
        if (a.infinite_ || b.infinite_) return infinity();
        return a.value_ * b.value_;
    }

    friend constexpr bool operator==(const ExtendedCount&, const ExtendedCount&) = default;

    constexpr bool isZero() const { return !infinite_ && value_ == 0; }

private:
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

/// Rank invariant values rho_n(r -> r') keyed by homological dimension.
using RankFunction = std::map<int, ExtendedCount>;

/// sum_{i+j=n} rX(i) * rY(j).
inline ExtendedCount rankProduct(const RankFunction& rx, const RankFunction& ry, int n) {
    auto lookup = [](const RankFunction& r, int d) {
        auto it = r.find(d);
        return it == r.end() ? ExtendedCount{} : it->second;
    };
    ExtendedCount total;
    for (int i = 0; i <= n; ++i) total = total + lookup(rx, i) * lookup(ry, n - i);
    return total;
}

/// Rank of M(from -> to), from <= to: the number of bars alive on all of [from, to].
inline std::uint64_t rankFromBars(const Bars& bars, double from, double to) {
    if (from > to) throw std::invalid_argument("rank needs from <= to");
    std::uint64_t n = 0;
    for (const auto& b : bars) {
        if (b.birth() <= from && to < b.death()) ++n;
    }
    return n;
}

inline RankFunction rankFunction(const GradedBarcode& bcd, double from, double to, int maxDim) {
    RankFunction r;
    for (int n = 0; n <= maxDim; ++n) r[n] = rankFromBars(bcd[n], from, to);
    return r;
}

/// Degree-zero tensor of p factors: one bar per tuple, starting at the sum of
/// births and living as long as the shortest factor bar.
inline Bars zerothTensorMulti(const std::vector<Bars>& factors) {
    Bars acc{Interval(0.0, kInfinity)};
    for (const auto& factor : factors) {
        Bars next;
        next.reserve(acc.size() * factor.size());
        for (const auto& a : acc) {
            for (const auto& b : factor) {
                double start = a.birth() + b.birth();
                next.emplace_back(start, start + std::min(a.length(), b.length()));
            }
        }
        acc = std::move(next);
    }
    return acc;
}

/// Number of bars of length >= eps in degree n of the tensor barcode, by
/// full expansion. The closed form sum c_i * c_j over-counts Tor terms coming
/// from essential bars, which vanish.
inline std::size_t countLongBars(const GradedBarcode& x, const GradedBarcode& y, int n,
                                 double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    const auto bars = tensorProductBarcode(x, y, n)[n];
    return static_cast<std::size_t>(std::count_if(
        bars.begin(), bars.end(), [eps](const Interval& b) { return b.length() >= eps; }));
}

struct CircleSpec {
    double radius;

    explicit CircleSpec(double r) : radius(r) {
        if (!(r > 0.0) || std::isinf(r)) throw std::invalid_argument("circle radius must be positive");
    }
};

/// First homotopy regime of a circle's Rips barcode: {[0,inf)_0, [0, sqrt(3) r)_1}.
inline GradedBarcode circleBarcode(const CircleSpec& c) {
    return GradedBarcode{{0, {Interval(0.0, kInfinity)}},
                         {1, {Interval(0.0, std::sqrt(3.0) * c.radius)}}};
}

inline GradedBarcode torusBarcode(const std::vector<CircleSpec>& circles, int maxDim) {
    if (maxDim < 0 || maxDim > static_cast<int>(circles.size())) {
        throw std::invalid_argument("torus barcode needs 0 <= maxDim <= number of circles");
    }
    GradedBarcode acc = pointBarcode();
    for (const auto& c : circles) acc = categoricalProductBarcode(acc, circleBarcode(c), maxDim);
    return acc;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// chi_n(eps) = 1 iff eps lies in [0, sqrt(3) r_n].
inline bool circleAlive(const CircleSpec& c, double eps) {
    return eps >= 0.0 && eps <= std::sqrt(3.0) * c.radius;
}

/// #bcd_p^eps = C(sum_n chi_n(eps), p).
inline std::uint64_t torusCount(const std::vector<CircleSpec>& circles, double eps, int p) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (p < 0 || p > static_cast<int>(circles.size())) {
        throw std::invalid_argument("torus count needs 0 <= p <= number of circles");
    }
    std::uint64_t alive = 0;
    for (const auto& c : circles) alive += circleAlive(c, eps) ? 1 : 0;
    return binomial(alive, static_cast<std::uint64_t>(p));
}

/// Bars starting at 0 that are still alive at eps. The death of a circle bar is
/// sqrt(3) r, and chi treats that endpoint as alive, so the comparison is >=.
inline std::size_t countBarsFromZero(const Bars& bars, double eps) {
    return static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(), [eps](const Interval& b) {
        return b.birth() == 0.0 && b.death() >= eps;
    }));
}

}  // namespace kunneth
