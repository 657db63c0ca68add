#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace kunneth {

/// Filtration index. Finite values are nonnegative reals; `kInfinity` marks a
/// bar that never dies. IEEE arithmetic already gives inf + x = inf.
using Endpoint = double;

inline constexpr Endpoint kInfinity = std::numeric_limits<double>::infinity();

inline bool isInfinite(Endpoint e) { return std::isinf(e); }

/// Half-open bar [birth, death). Never empty: construction rejects birth >= death.
/// Births are finite; they are nonnegative everywhere except log-scale images.
class Interval {
public:
    Interval(Endpoint birth, Endpoint death) : birth_(birth), death_(death) {
        if (!std::isfinite(birth)) {
            throw std::invalid_argument("interval birth must be finite");
        }
        if (!(birth < death)) {
            throw std::invalid_argument("interval must satisfy birth < death");
        }
    }

    Endpoint birth() const { return birth_; }
    Endpoint death() const { return death_; }
    bool isFinite() const { return !isInfinite(death_); }

    /// rho - ell; infinite for essential bars.
    double length() const { return death_ - birth_; }

    bool contains(double t) const { return birth_ <= t && t < death_; }

    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval& a, const Interval& b) {
        if (auto c = a.birth_ <=> b.birth_; c != 0) return c;
        return a.death_ <=> b.death_;
    }

private:
    Endpoint birth_;
    Endpoint death_;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& i) {
    os << '[' << i.birth() << ',';
    if (i.isFinite()) {
        os << i.death();
    } else {
        os << "inf";
    }
    return os << ')';
}

/// Builds [birth, death) or nothing when the range is empty.
inline std::optional<Interval> makeInterval(Endpoint birth, Endpoint death) {
    if (birth < death) return Interval(birth, death);
    return std::nullopt;
}

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    return makeInterval(std::max(a.birth(), b.birth()), std::min(a.death(), b.death()));
}

inline std::optional<Interval> intersect(const std::optional<Interval>& a,
                                         const std::optional<Interval>& b) {
    if (!a || !b) return std::nullopt;
    return intersect(*a, *b);
}

/// c + I. The shift must be finite; shifting by an infinite amount is the
/// empty interval (t^inf = 0), which callers express via `shiftOrEmpty`.
inline Interval shift(const Interval& i, double c) {
    if (!(c >= 0.0) || isInfinite(c)) {
        throw std::invalid_argument("shift amount must be finite and nonnegative");
    }
    return Interval(i.birth() + c, i.death() + c);
}

inline std::optional<Interval> shiftOrEmpty(const Interval& i, double c) {
    if (isInfinite(c)) return std::nullopt;
    return shift(i, c);
}

inline double barLength(const Interval& i) { return i.length(); }

/// Graded interval module I_{m,k} = t^m F[t] / (t^{m+k}); k may be infinite.
struct IntervalModuleShape {
    double start = 0.0;
    double length = kInfinity;

    IntervalModuleShape(double m, double k) : start(m), length(k) {
        if (!(m >= 0.0) || isInfinite(m) || !(k > 0.0)) {
            throw std::invalid_argument("interval module needs finite m >= 0 and k > 0");
        }
    }

    explicit IntervalModuleShape(const Interval& i) : IntervalModuleShape(i.birth(), i.length()) {}

    Interval toInterval() const { return Interval(start, start + length); }

    friend bool operator==(const IntervalModuleShape&, const IntervalModuleShape&) = default;
};

/// I_{m,k} (x) I_{n,l} = I_{m+n, min(k,l)}.
inline IntervalModuleShape tensorIntervalModule(const IntervalModuleShape& a,
                                                const IntervalModuleShape& b) {
    return {a.start + b.start, std::min(a.length, b.length)};
}

/// Tor(I_{m,k}, I_{n,l}) = I_{m+n+max(k,l), min(k,l)}, zero when either factor is free.
inline std::optional<IntervalModuleShape> torIntervalModule(const IntervalModuleShape& a,
                                                            const IntervalModuleShape& b) {
    if (isInfinite(a.length) || isInfinite(b.length)) return std::nullopt;
    return IntervalModuleShape(a.start + b.start + std::max(a.length, b.length),
                               std::min(a.length, b.length));
}

/// (l_J + I) cap (l_I + J): the bar contributed by the tensor of two bars.
inline std::optional<Interval> tensorBar(const Interval& i, const Interval& j) {
    return intersect(shift(i, j.birth()), shift(j, i.birth()));
}

/// (rho_J + I) cap (rho_I + J): the Tor bar, empty whenever either bar is infinite.
inline std::optional<Interval> torBar(const Interval& i, const Interval& j) {
    return intersect(shiftOrEmpty(i, j.death()), shiftOrEmpty(j, i.death()));
}

using Bars = std::vector<Interval>;

inline void sortBars(Bars& bars) { std::sort(bars.begin(), bars.end()); }

inline Bars sortedBars(Bars bars) {
    sortBars(bars);
    return bars;
}

inline bool sameMultiset(Bars a, Bars b) {
    sortBars(a);
    sortBars(b);
    return a == b;
}

/// Per-dimension multisets of bars. Dimensions with no bars may be absent or
/// present-but-empty; equality treats both the same.
class GradedBarcode {
public:
    GradedBarcode() = default;
    GradedBarcode(std::initializer_list<std::pair<const int, Bars>> init) : bars_(init) {}

    void add(int dim, const Interval& bar) { bars_[dim].push_back(bar); }
    void add(int dim, const std::optional<Interval>& bar) {
        if (bar) add(dim, *bar);
    }

    /// Bars in `dim`, unsorted.
    const Bars& operator[](int dim) const {
        static const Bars empty;
        auto it = bars_.find(dim);
        return it == bars_.end() ? empty : it->second;
    }

    Bars& at(int dim) { return bars_[dim]; }

    /// Highest dimension holding at least one bar, or -1.
    int topDimension() const {
        for (auto it = bars_.rbegin(); it != bars_.rend(); ++it) {
            if (!it->second.empty()) return it->first;
        }
        return -1;
    }

    std::size_t totalBars() const {
        std::size_t n = 0;
        for (const auto& [dim, bars] : bars_) n += bars.size();
        return n;
    }

    const std::map<int, Bars>& dimensions() const { return bars_; }

    /// Canonical form: bars sorted by (birth, death), empty dimensions dropped.
    GradedBarcode normalized() const {
        GradedBarcode out;
        for (const auto& [dim, bars] : bars_) {
            if (!bars.empty()) out.bars_[dim] = sortedBars(bars);
        }
        return out;
    }

    /// Keeps dimensions 0..maxDim only.
    GradedBarcode truncated(int maxDim) const {
        GradedBarcode out;
        for (const auto& [dim, bars] : bars_) {
            if (dim <= maxDim) out.bars_[dim] = bars;
        }
        return out;
    }

    void normalize() { *this = normalized(); }

    friend bool operator==(const GradedBarcode& a, const GradedBarcode& b) {
        return a.normalized().bars_ == b.normalized().bars_;
    }

private:
    std::map<int, Bars> bars_;
};

inline std::ostream& operator<<(std::ostream& os, const GradedBarcode& g) {
    const auto sorted = g.normalized();
    for (const auto& [dim, bars] : sorted.dimensions()) {
        os << "dim" << dim << ": {";
        for (std::size_t i = 0; i < bars.size(); ++i) {
            os << (i ? ", " : "") << bars[i];
        }
        os << "}\n";
    }
    return os;
}

/// The barcode of a point: one essential class in degree zero.
inline GradedBarcode pointBarcode() { return GradedBarcode{{0, {Interval(0.0, kInfinity)}}}; }

}  // namespace kunneth
