#pragma once

#include <algorithm>
#include <compare>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "kunneth/errors.hpp"
#include "kunneth/metric_space.hpp"

namespace kunneth {

using Vertex = std::uint32_t;

/// Strictly increasing vertex list. The vertex order is the total order that
/// makes the complex ordered.
class Simplex {
public:
    using Storage = boost::container::small_vector<Vertex, 4>;

    Simplex() = default;
    Simplex(std::initializer_list<Vertex> v) : Simplex(std::span<const Vertex>(v.begin(), v.size())) {}
    explicit Simplex(std::span<const Vertex> v) : vertices_(v.begin(), v.end()) { check(); }
    explicit Simplex(const std::vector<Vertex>& v) : Simplex(std::span<const Vertex>(v)) {}

    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    std::size_t size() const { return vertices_.size(); }
    std::span<const Vertex> vertices() const { return {vertices_.data(), vertices_.size()}; }
    Vertex operator[](std::size_t i) const { return vertices_[i]; }

    /// Face with the i-th vertex removed.
    Simplex facet(std::size_t i) const {
        Simplex f;
        f.vertices_.reserve(vertices_.size() - 1);
        for (std::size_t k = 0; k < vertices_.size(); ++k) {
            if (k != i) f.vertices_.push_back(vertices_[k]);
        }
        return f;
    }

    friend bool operator==(const Simplex& a, const Simplex& b) {
        return std::ranges::equal(a.vertices_, b.vertices_);
    }
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
        return std::lexicographical_compare_three_way(a.vertices_.begin(), a.vertices_.end(), b.vertices_.begin(),
                                                      b.vertices_.end());
    }

private:
    void check() const {
        if (vertices_.empty()) throw DomainError("simplex must have at least one vertex");
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            if (vertices_[i - 1] >= vertices_[i]) {
                throw DomainError("simplex vertices must be strictly increasing");
            }
        }
    }

    Storage vertices_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : s.vertices()) {
            h ^= v + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

struct FilteredSimplex {
    Simplex simplex;
    double value = 0.0;

    friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

/// Filtration order used everywhere: (value, dimension, lexicographic vertices).
inline bool canonicalLess(const FilteredSimplex& a, const FilteredSimplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.simplex.dimension() != b.simplex.dimension()) {
        return a.simplex.dimension() < b.simplex.dimension();
    }
    return a.simplex < b.simplex;
}

inline constexpr std::size_t kDefaultSimplexBudget = 5'000'000;

/// Simplicial complex with a filtration value per simplex. Simplices are kept
/// in insertion order until `sortCanonical` is called.
class FilteredComplex {
public:
    FilteredComplex() = default;

    void add(Simplex s, double value) {
        if (!(value >= 0.0) || !std::isfinite(value)) {
            throw DomainError("filtration values must be finite and nonnegative");
        }
        vertexCount_ = std::max<std::size_t>(vertexCount_, s.vertices().back() + std::size_t{1});
        index_.reset();
        simplices_.push_back({std::move(s), value});
    }

    /// Declares vertex ids 0..n-1 even if some are never added.
    void reserveVertices(std::size_t n) { vertexCount_ = std::max(vertexCount_, n); }

    std::size_t vertexCount() const { return vertexCount_; }
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    const std::vector<FilteredSimplex>& simplices() const { return simplices_; }
    const FilteredSimplex& operator[](std::size_t i) const { return simplices_[i]; }

    int maxDimension() const {
        int d = -1;
        for (const auto& s : simplices_) d = std::max(d, s.simplex.dimension());
        return d;
    }

    void sortCanonical() {
        std::sort(simplices_.begin(), simplices_.end(), canonicalLess);
        index_.reset();
    }

    FilteredComplex canonical() const {
        FilteredComplex c = *this;
        c.sortCanonical();
        return c;
    }

    /// Position of `s` in the simplex list, if present.
    std::optional<std::size_t> find(const Simplex& s) const {
        const auto& idx = index();
        auto it = idx.find(s);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    std::optional<double> valueOf(const Simplex& s) const {
        auto i = find(s);
        if (!i) return std::nullopt;
        return simplices_[*i].value;
    }

    /// Replaces every value v by ceil(v / step) * step.
    FilteredComplex snapped(double step) const {
        if (!(step > 0.0)) throw DomainError("snap step must be positive");
        FilteredComplex out;
        out.vertexCount_ = vertexCount_;
        out.simplices_.reserve(simplices_.size());
        for (const auto& s : simplices_) {
            out.simplices_.push_back({s.simplex, std::ceil(s.value / step) * step});
        }
        return out;
    }

    /// Vertex set equality and identical values, independent of order.
    friend bool operator==(const FilteredComplex& a, const FilteredComplex& b) {
        return a.vertexCount_ == b.vertexCount_ && a.canonical().simplices_ == b.canonical().simplices_;
    }

private:
    using Index = std::unordered_map<Simplex, std::size_t, SimplexHash>;

    const Index& index() const {
        if (!index_) {
            index_ = std::make_shared<Index>();
            index_->reserve(simplices_.size());
            for (std::size_t i = 0; i < simplices_.size(); ++i) index_->emplace(simplices_[i].simplex, i);
        }
        return *index_;
    }

    std::size_t vertexCount_ = 0;
    std::vector<FilteredSimplex> simplices_;
    mutable std::shared_ptr<Index> index_;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { MissingFace, NonMonotoneValue, DuplicateSimplex };

struct Violation {
    ViolationKind kind;
    Simplex simplex;
    Simplex face;

    std::string describe() const {
        auto fmt = [](const Simplex& s) {
            std::string out = "{";
            for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
            return out + "}";
        };
        switch (kind) {
            case ViolationKind::MissingFace:
                return "missing face " + fmt(face) + " of " + fmt(simplex);
            case ViolationKind::NonMonotoneValue:
                return "face " + fmt(face) + " enters after its cofacet " + fmt(simplex);
            case ViolationKind::DuplicateSimplex:
                return "duplicate simplex " + fmt(simplex);
        }
        return "unknown violation";
    }
};

/// Checks closure under faces and monotone values; returns the first violation.
inline std::optional<Violation> validate(const FilteredComplex& k) {
    std::unordered_map<Simplex, double, SimplexHash> values;
    values.reserve(k.size());
    for (const auto& s : k.simplices()) {
        if (!values.emplace(s.simplex, s.value).second) {
            return Violation{ViolationKind::DuplicateSimplex, s.simplex, s.simplex};
        }
    }
    for (const auto& s : k.simplices()) {
        if (s.simplex.dimension() == 0) continue;
        for (std::size_t i = 0; i < s.simplex.size(); ++i) {
            Simplex f = s.simplex.facet(i);
            auto it = values.find(f);
            if (it == values.end()) return Violation{ViolationKind::MissingFace, s.simplex, f};
            if (it->second > s.value) return Violation{ViolationKind::NonMonotoneValue, s.simplex, f};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rips filtration

/// All simplices of dimension <= maxDim with diameter <= threshold, valued by
/// diameter (closed sublevel convention). Output is canonically sorted.
inline FilteredComplex ripsFiltration(const FiniteMetricSpace& x, int maxDim,
                                      double threshold = std::numeric_limits<double>::infinity(),
                                      std::size_t budget = kDefaultSimplexBudget) {
    if (maxDim < 0) throw DomainError("maxDim must be nonnegative");
    if (!(threshold >= 0.0)) throw DomainError("threshold must be nonnegative");
    const std::size_t n = x.size();
    FilteredComplex k;
    k.reserveVertices(n);
    std::vector<std::vector<Vertex>> above(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (x(i, j) <= threshold) above[i].push_back(static_cast<Vertex>(j));
        }
    }
    std::vector<Vertex> current;
    // candidates[depth] holds the common neighbours above the last vertex of
    // `current` when current.size() == depth + 1.
    std::vector<std::vector<Vertex>> candidates(static_cast<std::size_t>(maxDim) + 1);
    auto grow = [&](auto&& self, std::size_t depth, double diameter) -> void {
        k.add(Simplex(current), diameter);
        if (k.size() > budget) throw BudgetExceeded(budget);
        if (depth == static_cast<std::size_t>(maxDim)) return;
        const auto& here = candidates[depth];
        auto& next = candidates[depth + 1];
        for (std::size_t c = 0; c < here.size(); ++c) {
            const Vertex v = here[c];
            double d = diameter;
            for (auto u : current) d = std::max(d, x(u, v));
            next.clear();
            for (std::size_t c2 = c + 1; c2 < here.size(); ++c2) {
                if (x(v, here[c2]) <= threshold) next.push_back(here[c2]);
            }
            current.push_back(v);
            self(self, depth + 1, d);
            current.pop_back();
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        current.assign(1, static_cast<Vertex>(v));
        candidates[0] = above[v];
        grow(grow, 0, 0.0);
    }
    k.sortCanonical();
    return k;
}

// ---------------------------------------------------------------------------
// Products in ordered simplicial complexes

enum class ProductValueRule { Max, Sum };

/// Simplices of the ordered product are chains (u0,v0) < ... < (uk,vk) in the
/// product order whose projections are simplices of the factors. Each chain is
/// generated exactly once by extending in increasing order, so no dedup pass
/// is needed.
inline FilteredComplex orderedProductComplex(const FilteredComplex& k, const FilteredComplex& l,
                                             int maxDim, ProductValueRule rule,
                                             std::size_t budget = kDefaultSimplexBudget) {
    if (maxDim < 0) throw DomainError("maxDim must be nonnegative");
    const std::size_t nk = k.vertexCount();
    const std::size_t nl = l.vertexCount();
    FilteredComplex out;
    out.reserveVertices(nk * nl);

    struct Chain {
        std::vector<Vertex> left, right;  // projections, strictly increasing
        std::vector<Vertex> product;     // linearized product vertices
    };
    Chain chain;

    auto combine = [rule](double a, double b) { return rule == ProductValueRule::Max ? std::max(a, b) : a + b; };

    std::function<void(double, double)> extend = [&](double valueLeft, double valueRight) {
        out.add(Simplex(chain.product), combine(valueLeft, valueRight));
        if (out.size() > budget) throw BudgetExceeded(budget);
        if (static_cast<int>(chain.product.size()) > maxDim) return;
        const Vertex lastU = chain.left.back();
        const Vertex lastV = chain.right.back();
        // Candidate next first-coordinates: stay at lastU or move to a larger
        // u whose addition keeps the projection a simplex.
        for (std::size_t u = lastU; u < nk; ++u) {
            double vl = valueLeft;
            bool moveU = u != lastU;
            if (moveU) {
                chain.left.push_back(static_cast<Vertex>(u));
                auto val = k.valueOf(Simplex(chain.left));
                chain.left.pop_back();
                if (!val) continue;
                vl = *val;
            }
            for (std::size_t v = lastV; v < nl; ++v) {
                bool moveV = v != lastV;
                if (!moveU && !moveV) continue;
                double vr = valueRight;
                if (moveV) {
                    chain.right.push_back(static_cast<Vertex>(v));
                    auto val = l.valueOf(Simplex(chain.right));
                    chain.right.pop_back();
                    if (!val) continue;
                    vr = *val;
                }
                if (moveU) chain.left.push_back(static_cast<Vertex>(u));
                if (moveV) chain.right.push_back(static_cast<Vertex>(v));
                chain.product.push_back(static_cast<Vertex>(u * nl + v));
                extend(vl, vr);
                chain.product.pop_back();
                if (moveV) chain.right.pop_back();
                if (moveU) chain.left.pop_back();
            }
        }
    };

    for (const auto& a : k.simplices()) {
        if (a.simplex.dimension() != 0) continue;
        for (const auto& b : l.simplices()) {
            if (b.simplex.dimension() != 0) continue;
            chain.left = {a.simplex[0]};
            chain.right = {b.simplex[0]};
            chain.product = {static_cast<Vertex>(a.simplex[0] * nl + b.simplex[0])};
            extend(a.value, b.value);
        }
    }
    out.sortCanonical();
    return out;
}

/// (K x L)_t = K_t x L_t: a product simplex enters at the max of its projections' values.
inline FilteredComplex categoricalProductComplex(const FilteredComplex& k, const FilteredComplex& l,
                                                 int maxDim, std::size_t budget = kDefaultSimplexBudget) {
    return orderedProductComplex(k, l, maxDim, ProductValueRule::Max, budget);
}

/// (K (x) L)_t = union over a + b = t of K_a x L_b: value is the sum of the projections' values.
inline FilteredComplex tensorProductComplex(const FilteredComplex& k, const FilteredComplex& l,
                                            int maxDim, std::size_t budget = kDefaultSimplexBudget) {
    return orderedProductComplex(k, l, maxDim, ProductValueRule::Sum, budget);
}

/// Projections of a simplex on the vertex set V_K x V_L onto the two factors.
inline std::pair<Simplex, Simplex> projectProductSimplex(const Simplex& s, std::size_t rightVertexCount) {
    std::vector<Vertex> left, right;
    for (auto p : s.vertices()) {
        left.push_back(static_cast<Vertex>(p / rightVertexCount));
        right.push_back(static_cast<Vertex>(p % rightVertexCount));
    }
    for (auto* side : {&left, &right}) {
        std::sort(side->begin(), side->end());
        side->erase(std::unique(side->begin(), side->end()), side->end());
    }
    return {Simplex(left), Simplex(right)};
}

// ---------------------------------------------------------------------------
// Text format: one simplex per line, `<value> <v0> <v1> ... <vk>`.

inline std::string formatValue(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline FilteredComplex readFilteredComplex(std::istream& in) {
    FilteredComplex k;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        std::string token;
        std::vector<std::string> tokens;
        while (row >> token) tokens.push_back(token);
        if (tokens.empty()) continue;
        auto where = [&] { return "line " + std::to_string(lineNo) + ": "; };
        if (tokens.size() < 2) throw ParseError(where() + "expected a value and at least one vertex");
        double value = 0.0;
        auto [p, ec] = std::from_chars(tokens[0].data(), tokens[0].data() + tokens[0].size(), value);
        if (ec != std::errc{} || p != tokens[0].data() + tokens[0].size() || !std::isfinite(value) || value < 0.0) {
            throw ParseError(where() + "bad filtration value '" + tokens[0] + "'");
        }
        std::vector<Vertex> verts;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            unsigned long long v = 0;
            auto [q, ec2] = std::from_chars(tokens[i].data(), tokens[i].data() + tokens[i].size(), v);
            if (ec2 != std::errc{} || q != tokens[i].data() + tokens[i].size() ||
                v > std::numeric_limits<Vertex>::max()) {
                throw ParseError(where() + "bad vertex id '" + tokens[i] + "'");
            }
            verts.push_back(static_cast<Vertex>(v));
        }
        try {
            k.add(Simplex(verts), value);
        } catch (const DomainError& e) {
            throw ParseError(where() + e.what());
        }
    }
    if (k.empty()) throw ParseError("filtered complex is empty");
    return k;
}

inline void writeFilteredComplex(std::ostream& out, const FilteredComplex& k) {
    for (const auto& s : k.simplices()) {
        out << formatValue(s.value);
        for (auto v : s.simplex.vertices()) out << ' ' << v;
        out << '\n';
    }
}

}  // namespace kunneth
