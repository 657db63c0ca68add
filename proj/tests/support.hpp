#pragma once

// Random instance generators and brute-force reference implementations shared
// by the unit tests and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "kunneth.hpp"

namespace kunneth::testutil {

using Rng = std::mt19937_64;

inline int uniformInt(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double uniformReal(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Random closed complex with integer values in [0, maxValue] and simplices of
/// dimension <= 2. Every face enters no later than its cofacets.
inline FilteredComplex randomComplex(Rng& rng, int maxVertices = 6, int maxValue = 5, double edgeP = 0.6,
                                     double triangleP = 0.5) {
    const int n = uniformInt(rng, 1, maxVertices);
    FilteredComplex k;
    std::vector<int> vertexValue(n);
    for (int v = 0; v < n; ++v) {
        vertexValue[v] = uniformInt(rng, 0, maxValue);
        k.add(Simplex{static_cast<Vertex>(v)}, vertexValue[v]);
    }
    std::vector<std::vector<int>> edge(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (!coin(rng, edgeP)) continue;
            edge[a][b] = uniformInt(rng, std::max(vertexValue[a], vertexValue[b]), maxValue);
            k.add(Simplex{static_cast<Vertex>(a), static_cast<Vertex>(b)}, edge[a][b]);
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                if (edge[a][b] < 0 || edge[a][c] < 0 || edge[b][c] < 0 || !coin(rng, triangleP)) continue;
                int lo = std::max({edge[a][b], edge[a][c], edge[b][c]});
                k.add(Simplex{static_cast<Vertex>(a), static_cast<Vertex>(b), static_cast<Vertex>(c)},
                      uniformInt(rng, lo, maxValue));
            }
        }
    }
    return k;
}

/// Between 1 and maxPoints uniform points in the unit square.
inline FiniteMetricSpace randomPlanarMetric(Rng& rng, int maxPoints = 8) {
    const int n = uniformInt(rng, 1, maxPoints);
    std::vector<double> coords;
    for (int i = 0; i < 2 * n; ++i) coords.push_back(uniformReal(rng, 0.0, 1.0));
    return FiniteMetricSpace::euclidean(PointCloud(2, std::move(coords)));
}

/// Up to maxBars bars; each is infinite with probability infiniteP.
inline Bars randomDiagram(Rng& rng, int maxBars = 6, double infiniteP = 0.15) {
    const int n = uniformInt(rng, 0, maxBars);
    Bars out;
    for (int i = 0; i < n; ++i) {
        double b = uniformReal(rng, 0.0, 5.0);
        out.emplace_back(b, coin(rng, infiniteP) ? kInfinity : b + uniformReal(rng, 0.01, 3.0));
    }
    return out;
}

/// min over all partial matchings of the largest endpoint move or half-length discard.
inline double bruteForceBottleneck(const Bars& a, const Bars& b) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<char> usedB(b.size(), 0);
    auto recurse = [&](auto&& self, std::size_t i, double cost) -> void {
        if (cost >= best) return;
        if (i == a.size()) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (!usedB[j]) cost = std::max(cost, discardCost(b[j]));
            }
            best = std::min(best, cost);
            return;
        }
        self(self, i + 1, std::max(cost, discardCost(a[i])));
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (usedB[j]) continue;
            usedB[j] = 1;
            self(self, i + 1, std::max(cost, matchCost(a[i], b[j])));
            usedB[j] = 0;
        }
    };
    recurse(recurse, 0, 0.0);
    return best;
}

/// Every distinct filtration value of a complex, plus one past the last.
inline std::vector<double> criticalValues(const FilteredComplex& k) {
    std::vector<double> v;
    for (const auto& s : k.simplices()) v.push_back(s.value);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    v.push_back(v.empty() ? 0.0 : v.back() + 1.0);
    return v;
}

}  // namespace kunneth::testutil
