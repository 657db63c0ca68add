#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "kunneth/errors.hpp"

namespace kunneth {

/// Points in R^dim, stored row-major.
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
        if (dim_ == 0 || coords_.size() % dim_ != 0) {
            throw DomainError("point cloud coordinates do not divide into points");
        }
    }

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dimension() const { return dim_; }

    std::span<const double> operator[](std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }

    void push_back(std::span<const double> p) {
        if (dim_ == 0) dim_ = p.size();
        if (p.size() != dim_) throw DomainError("point dimension mismatch");
        coords_.insert(coords_.end(), p.begin(), p.end());
    }

    PointCloud subset(std::span<const std::size_t> indices) const {
        PointCloud out;
        out.dim_ = dim_;
        out.coords_.reserve(indices.size() * dim_);
        for (auto i : indices) {
            auto p = (*this)[i];
            out.coords_.insert(out.coords_.end(), p.begin(), p.end());
        }
        return out;
    }

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

inline double euclideanDistance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Finite metric space as a dense symmetric distance matrix.
class FiniteMetricSpace {
public:
    static constexpr double kTolerance = 1e-9;

    FiniteMetricSpace() = default;

    /// Validates symmetry, zero diagonal, nonnegativity and the triangle
    /// inequality (within kTolerance).
    static FiniteMetricSpace fromMatrix(std::vector<std::vector<double>> rows) {
        const std::size_t n = rows.size();
        FiniteMetricSpace m(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw DomainError("distance matrix is not square");
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
        }
        m.validate();
        return m;
    }

    /// Euclidean metric on a point cloud; no validation needed.
    static FiniteMetricSpace euclidean(const PointCloud& pts) {
        FiniteMetricSpace m(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                double d = euclideanDistance(pts[i], pts[j]);
                m.at(i, j) = d;
                m.at(j, i) = d;
            }
        }
        return m;
    }

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    void validate() const {
        for (std::size_t i = 0; i < n_; ++i) {
            if ((*this)(i, i) != 0.0) throw DomainError("distance matrix diagonal must be zero");
            for (std::size_t j = 0; j < n_; ++j) {
                double d = (*this)(i, j);
                if (!(d >= 0.0) || !std::isfinite(d)) {
                    throw DomainError("distances must be finite and nonnegative");
                }
                if (d != (*this)(j, i)) throw DomainError("distance matrix is not symmetric");
            }
        }
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                for (std::size_t k = 0; k < n_; ++k) {
                    if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + kTolerance) {
                        throw DomainError("triangle inequality violated at (" + std::to_string(i) +
                                          "," + std::to_string(j) + "," + std::to_string(k) + ")");
                    }
                }
            }
        }
    }

    FiniteMetricSpace subspace(std::span<const std::size_t> indices) const {
        FiniteMetricSpace m(indices.size());
        for (std::size_t a = 0; a < indices.size(); ++a) {
            for (std::size_t b = 0; b < indices.size(); ++b) {
                m.at(a, b) = (*this)(indices[a], indices[b]);
            }
        }
        return m;
    }

    friend FiniteMetricSpace maxProduct(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

private:
    explicit FiniteMetricSpace(std::size_t n) : n_(n), d_(n * n, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }

    std::size_t n_ = 0;
    std::vector<double> d_;
};

/// d((x,y),(x',y')) = max(d_X(x,x'), d_Y(y,y')); point (u,v) has index u*|Y| + v.
inline FiniteMetricSpace maxProduct(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    const std::size_t ny = y.size();
    FiniteMetricSpace m(x.size() * ny);
    for (std::size_t a = 0; a < m.n_; ++a) {
        for (std::size_t b = 0; b < m.n_; ++b) {
            m.at(a, b) = std::max(x(a / ny, b / ny), y(a % ny, b % ny));
        }
    }
    return m;
}

struct LandmarkSelection {
    std::vector<std::size_t> indices;
    double coveringRadius = 0.0;
};

/// max over x in X of min over l in L of d(x, l).
inline double coveringRadius(std::span<const std::size_t> landmarks, const FiniteMetricSpace& x) {
    if (landmarks.empty()) throw DomainError("covering radius needs a nonempty landmark set");
    double worst = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) {
        double best = std::numeric_limits<double>::infinity();
        for (auto l : landmarks) best = std::min(best, x(p, l));
        worst = std::max(worst, best);
    }
    return worst;
}

namespace detail {

template <class Dist>
LandmarkSelection maxmin(std::size_t n, std::size_t count, std::size_t seed, Dist&& dist) {
    if (count < 1 || count > n) throw DomainError("landmark count must lie in [1, |X|]");
    if (seed >= n) throw DomainError("maxmin seed index out of range");
    LandmarkSelection sel;
    sel.indices.reserve(count);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    std::vector<bool> taken(n, false);
    std::size_t next = seed;
    for (;;) {
        sel.indices.push_back(next);
        taken[next] = true;
        for (std::size_t p = 0; p < n; ++p) nearest[p] = std::min(nearest[p], dist(p, next));
        double radius = *std::max_element(nearest.begin(), nearest.end());
        if (sel.indices.size() == count) {
            sel.coveringRadius = radius;
            return sel;
        }
        // Strict comparison keeps the lowest index on ties; duplicates of chosen
        // points (distance 0) still yield distinct indices.
        std::size_t far = n;
        for (std::size_t p = 0; p < n; ++p) {
            if (!taken[p] && (far == n || nearest[p] > nearest[far])) far = p;
        }
        next = far;
    }
}

}  // namespace detail

/// Greedy farthest-point sampling starting at `seedIndex`.
inline LandmarkSelection maxminLandmarks(const FiniteMetricSpace& x, std::size_t count,
                                         std::size_t seedIndex = 0) {
    return detail::maxmin(x.size(), count, seedIndex,
                          [&](std::size_t a, std::size_t b) { return x(a, b); });
}

/// Same selection rule on a Euclidean point cloud without materializing the matrix.
inline LandmarkSelection maxminLandmarks(const PointCloud& pts, std::size_t count,
                                         std::size_t seedIndex = 0) {
    return detail::maxmin(pts.size(), count, seedIndex, [&](std::size_t a, std::size_t b) {
        return euclideanDistance(pts[a], pts[b]);
    });
}

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

inline std::vector<double> parseNumbers(const std::string& line, std::size_t lineNo) {
    std::vector<double> out;
    std::string token;
    std::size_t i = 0;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) {
            throw ParseError("line " + std::to_string(lineNo) + ": not a number: '" + token + "'");
        }
        out.push_back(v);
        token.clear();
    };
    for (; i < line.size(); ++i) {
        char c = line[i];
        if (c == '#') break;
        if (c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';') {
            flush();
        } else {
            token.push_back(c);
        }
    }
    flush();
    return out;
}

}  // namespace detail

/// One point per line, comma separated coordinates.
inline PointCloud readPointCloudCsv(std::istream& in) {
    PointCloud pts;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto values = detail::parseNumbers(line, lineNo);
        if (values.empty()) continue;
        if (pts.size() > 0 && values.size() != pts.dimension()) {
            throw ParseError("line " + std::to_string(lineNo) + ": expected " +
                             std::to_string(pts.dimension()) + " coordinates");
        }
        for (double v : values) {
            if (!std::isfinite(v)) throw ParseError("line " + std::to_string(lineNo) + ": non-finite coordinate");
        }
        pts.push_back(values);
    }
    if (pts.size() == 0) throw ParseError("point cloud is empty");
    return pts;
}

/// Row-by-row strict lower triangle, whitespace or comma separated. Row 0 is
/// empty, so only the entry count matters.
inline FiniteMetricSpace readLowerDistanceMatrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineNo = 0;
    std::vector<double> all;
    while (std::getline(in, line)) {
        ++lineNo;
        auto values = detail::parseNumbers(line, lineNo);
        all.insert(all.end(), values.begin(), values.end());
    }
    // Strict lower triangle of an n x n matrix holds n(n-1)/2 entries.
    std::size_t n = 1;
    while (n * (n - 1) / 2 < all.size()) ++n;
    if (all.empty() || n * (n - 1) / 2 != all.size()) {
        throw ParseError("lower distance matrix entry count " + std::to_string(all.size()) +
                         " is not triangular");
    }
    rows.assign(n, std::vector<double>(n, 0.0));
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            rows[i][j] = rows[j][i] = all[k++];
        }
    }
    try {
        return FiniteMetricSpace::fromMatrix(std::move(rows));
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid distance matrix: ") + e.what());
    }
}

}  // namespace kunneth
