#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "kunneth/errors.hpp"
#include "kunneth/interval.hpp"

namespace kunneth {

/// Partial multiset bijection between two diagrams of a fixed dimension.
struct Matching {
    std::vector<std::pair<Interval, Interval>> pairs;
    Bars unmatchedA;
    Bars unmatchedB;
};

/// |x - y| on the extended line with inf - inf = 0.
inline double endpointDistance(double x, double y) {
    if (std::isinf(x) && std::isinf(y)) return 0.0;
    return std::abs(x - y);
}

/// Smallest delta for which matching a with b is allowed.
inline double matchCost(const Interval& a, const Interval& b) {
    return std::max(endpointDistance(a.birth(), b.birth()), endpointDistance(a.death(), b.death()));
}

/// Smallest delta for which leaving a unmatched is allowed.
inline double discardCost(const Interval& a) { return a.length() / 2.0; }

inline bool isDeltaMatching(const Matching& m, double delta) {
    for (const auto& [a, b] : m.pairs) {
        if (!(matchCost(a, b) <= delta)) return false;
    }
    for (const auto& a : m.unmatchedA) {
        if (!(a.length() <= 2.0 * delta)) return false;
    }
    for (const auto& b : m.unmatchedB) {
        if (!(b.length() <= 2.0 * delta)) return false;
    }
    return true;
}

/// True iff the matching accounts for every bar of a and b exactly once.
inline bool partitions(const Matching& m, const Bars& a, const Bars& b) {
    Bars left = m.unmatchedA, right = m.unmatchedB;
    for (const auto& [x, y] : m.pairs) {
        left.push_back(x);
        right.push_back(y);
    }
    return sameMultiset(left, a) && sameMultiset(right, b);
}

struct BottleneckResult {
    double distance = 0.0;
    Matching matching;
};

namespace detail {

/// Perfect matching test on the diagonal-augmented bipartite graph at `delta`.
/// Left nodes: bars of a, then one diagonal slot per bar of b.
/// Right nodes: bars of b, then one diagonal slot per bar of a.
inline std::optional<Matching> matchAt(const Bars& a, const Bars& b, double delta) {
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            if (matchCost(a[i], b[j]) <= delta) adj[i].push_back(j);
        }
        if (discardCost(a[i]) <= delta) adj[i].push_back(nb + i);
    }
    for (std::size_t j = 0; j < nb; ++j) {
        if (discardCost(b[j]) <= delta) adj[na + j].push_back(j);
        for (std::size_t i = 0; i < na; ++i) adj[na + j].push_back(nb + i);
    }

    constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> matchOfRight(n, kFree);
    std::vector<char> seen;
    // Kuhn's augmenting paths.
    auto augment = [&](auto&& self, std::size_t u) -> bool {
        for (auto v : adj[u]) {
            if (seen[v]) continue;
            seen[v] = 1;
            if (matchOfRight[v] == kFree || self(self, matchOfRight[v])) {
                matchOfRight[v] = u;
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < n; ++u) {
        seen.assign(n, 0);
        if (!augment(augment, u)) return std::nullopt;
    }

    Matching m;
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t u = matchOfRight[v];
        if (v < nb) {
            if (u < na) {
                m.pairs.emplace_back(a[u], b[v]);
            } else {
                m.unmatchedB.push_back(b[v]);
            }
        } else if (u < na) {
            m.unmatchedA.push_back(a[u]);
        }
    }
    return m;
}

}  // namespace detail

/// Exact bottleneck distance: the least critical value (a match cost or a
/// half-length) admitting a delta-matching, found by binary search.
inline BottleneckResult bottleneckMatching(const Bars& a, const Bars& b) {
    std::vector<double> candidates{0.0};
    for (const auto& x : a) {
        candidates.push_back(discardCost(x));
        for (const auto& y : b) candidates.push_back(matchCost(x, y));
    }
    for (const auto& y : b) candidates.push_back(discardCost(y));
    std::erase_if(candidates, [](double c) { return std::isinf(c); });
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size();
    std::optional<Matching> best;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (auto m = detail::matchAt(a, b, candidates[mid])) {
            best = std::move(m);
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (lo == candidates.size()) {
        // Essential bars cannot be paired up: no finite delta works.
        Matching m;
        m.unmatchedA = a;
        m.unmatchedB = b;
        return {std::numeric_limits<double>::infinity(), std::move(m)};
    }
    // hi only ever moves onto feasible candidates, so `best` belongs to candidates[lo].
    return {candidates[lo], std::move(*best)};
}

inline double bottleneck(const Bars& a, const Bars& b) { return bottleneckMatching(a, b).distance; }

// ---------------------------------------------------------------------------
// Log-scale comparison of categorical and tensor product barcodes

struct RatioCheck {
    Interval categorical;
    Interval tensor;
    double birthRatio;
    double deathRatio;
    bool withinFactorTwo;
};

struct UnmatchedCheck {
    Interval bar;
    bool fromCategorical;
    double deathOverBirth;
    bool withinFactorFour;
};

struct LogComparisonReport {
    int dimension = 0;
    std::size_t filteredCategorical = 0;  // bars dropped for birth == 0
    std::size_t filteredTensor = 0;
    double logBottleneck = 0.0;
    double bound = std::log(2.0);
    std::vector<RatioCheck> pairs;
    std::vector<UnmatchedCheck> unmatched;

    bool passes(double tol = 1e-9) const {
        if (logBottleneck > bound + tol) return false;
        for (const auto& p : pairs) {
            if (p.birthRatio < 0.5 - tol || p.birthRatio > 2.0 + tol) return false;
            if (p.deathRatio < 0.5 - tol || p.deathRatio > 2.0 + tol) return false;
        }
        for (const auto& u : unmatched) {
            if (u.deathOverBirth > 4.0 + tol) return false;
        }
        return true;
    }
};

class EmptyAfterFilter : public DomainError {
public:
    EmptyAfterFilter() : DomainError("no bars with positive birth remain for log-scale comparison") {}
};

namespace detail {

inline double ratio(double x, double y) {
    if (std::isinf(x) && std::isinf(y)) return 1.0;
    return x / y;
}

}  // namespace detail

/// Optimal bottleneck matching of the log-transformed degree-n diagrams, with
/// per-pair ratio checks against [1/2, 2] and the ln 2 bound.
inline LogComparisonReport logScaleComparisonReport(const GradedBarcode& categorical,
                                                    const GradedBarcode& tensor, int n) {
    LogComparisonReport report;
    report.dimension = n;
    auto toLog = [](const Bars& bars, std::size_t& dropped, Bars& kept) {
        Bars logs;
        for (const auto& b : bars) {
            if (b.birth() <= 0.0) {
                ++dropped;
                continue;
            }
            kept.push_back(b);
            logs.emplace_back(std::log(b.birth()), b.isFinite() ? std::log(b.death()) : kInfinity);
        }
        return logs;
    };
    Bars keptCat, keptTen;
    Bars logCat = toLog(categorical[n], report.filteredCategorical, keptCat);
    Bars logTen = toLog(tensor[n], report.filteredTensor, keptTen);
    if (logCat.empty() && logTen.empty()) throw EmptyAfterFilter();

    auto result = bottleneckMatching(logCat, logTen);
    report.logBottleneck = result.distance;
    // Map log bars back to the originals through exp.
    auto original = [](const Interval& logBar) {
        return Interval(std::exp(logBar.birth()), logBar.isFinite() ? std::exp(logBar.death()) : kInfinity);
    };
    auto findKept = [&](const Bars& logs, const Bars& kept, const Interval& logBar) {
        for (std::size_t i = 0; i < logs.size(); ++i) {
            if (logs[i] == logBar) return kept[i];
        }
        return original(logBar);
    };
    for (const auto& [c, t] : result.matching.pairs) {
        RatioCheck check{findKept(logCat, keptCat, c), findKept(logTen, keptTen, t), 0.0, 0.0, false};
        check.birthRatio = detail::ratio(check.categorical.birth(), check.tensor.birth());
        check.deathRatio = detail::ratio(check.categorical.death(), check.tensor.death());
        check.withinFactorTwo = check.birthRatio >= 0.5 && check.birthRatio <= 2.0 &&
                                check.deathRatio >= 0.5 && check.deathRatio <= 2.0;
        report.pairs.push_back(check);
    }
    auto addUnmatched = [&](const Bars& logs, const Bars& kept, const Bars& bars, bool fromCat) {
        for (const auto& lb : bars) {
            Interval b = findKept(logs, kept, lb);
            double q = b.death() / b.birth();
            report.unmatched.push_back({b, fromCat, q, q <= 4.0});
        }
    };
    addUnmatched(logCat, keptCat, result.matching.unmatchedA, true);
    addUnmatched(logTen, keptTen, result.matching.unmatchedB, false);
    return report;
}

}  // namespace kunneth
