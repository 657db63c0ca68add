#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kunneth/combinators.hpp"
#include "kunneth/errors.hpp"
#include "kunneth/filtered_complex.hpp"
#include "kunneth/interval.hpp"
#include "kunneth/metric_space.hpp"
#include "kunneth/persistence.hpp"

namespace kunneth {

using Complex = std::complex<double>;

/// Arithmetic progression start, start + step, ..., count terms.
struct SampleTimes {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    std::vector<double> values() const {
        std::vector<double> t(count);
        for (std::size_t i = 0; i < count; ++i) t[i] = start + step * static_cast<double>(i);
        return t;
    }
};

/// f(t) = c1 e^{it} + c2 e^{i omega t} with |c1|^2 + |c2|^2 = 1.
struct SignalSpec {
    Complex c1;
    Complex c2;
    double omega;
    SampleTimes times;

    SignalSpec(Complex a, Complex b, double w, SampleTimes t) : c1(a), c2(b), omega(w), times(t) {
        if (std::abs(std::norm(c1) + std::norm(c2) - 1.0) > 1e-9) {
            throw DomainError("signal amplitudes must satisfy |c1|^2 + |c2|^2 = 1");
        }
    }

    Complex operator()(double t) const {
        return c1 * std::exp(Complex(0.0, t)) + c2 * std::exp(Complex(0.0, omega * t));
    }
};

/// tau = 2 pi / ((d + 1) |omega - 1|), the delay making Omega's columns orthonormal.
inline double tauStar(int d, double omega) {
    if (d < 1) throw DomainError("window dimension d must be at least 1");
    if (omega == 1.0) throw DomainError("omega must differ from 1");
    return 2.0 * std::numbers::pi / ((d + 1) * std::abs(omega - 1.0));
}

/// (d+1) x 2 matrix with rows [e^{i k tau}, e^{i k omega tau}] / sqrt(d+1).
inline std::vector<std::array<Complex, 2>> omegaMatrix(int d, double tau, double omega) {
    std::vector<std::array<Complex, 2>> m(static_cast<std::size_t>(d) + 1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d + 1));
    for (int k = 0; k <= d; ++k) {
        m[k] = {scale * std::exp(Complex(0.0, k * tau)), scale * std::exp(Complex(0.0, k * omega * tau))};
    }
    return m;
}

/// max |(Omega^* Omega - Id)_{ab}|.
inline double omegaOrthonormalityError(int d, double tau, double omega) {
    const auto m = omegaMatrix(d, tau, omega);
    double worst = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Complex s = 0.0;
            for (const auto& row : m) s += std::conj(row[a]) * row[b];
            worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

/// SW_{d,tau} f(t) = [f(t), f(t+tau), ..., f(t+d tau)], flattened to
/// (Re, Im) pairs in R^{2(d+1)}.
inline PointCloud swEmbed(const SignalSpec& spec, int d, double tau) {
    if (d < 0) throw DomainError("window dimension must be nonnegative");
    if (!(tau > 0.0)) throw DomainError("delay tau must be positive");
    std::vector<double> coords;
    const auto times = spec.times.values();
    coords.reserve(times.size() * 2 * (d + 1));
    for (double t : times) {
        for (int k = 0; k <= d; ++k) {
            Complex z = spec(t + k * tau);
            coords.push_back(z.real());
            coords.push_back(z.imag());
        }
    }
    return PointCloud(2 * static_cast<std::size_t>(d + 1), std::move(coords));
}

struct FactorClouds {
    PointCloud first;   // sqrt(d+1) c1 e^{it}
    PointCloud second;  // sqrt(d+1) c2 e^{i omega t}
};

/// The two planar factors of phi(t); phi(T) under the max norm is the diagonal
/// of their max-product.
inline FactorClouds factorEmbed(const SignalSpec& spec, int d) {
    const double scale = std::sqrt(static_cast<double>(d + 1));
    std::vector<double> x, y;
    for (double t : spec.times.values()) {
        Complex a = scale * spec.c1 * std::exp(Complex(0.0, t));
        Complex b = scale * spec.c2 * std::exp(Complex(0.0, spec.omega * t));
        x.insert(x.end(), {a.real(), a.imag()});
        y.insert(y.end(), {b.real(), b.imag()});
    }
    return {PointCloud(2, std::move(x)), PointCloud(2, std::move(y))};
}

// ---------------------------------------------------------------------------
// Confidence regions

enum class RegionMethod { Landmark, Kunneth };

inline const char* toString(RegionMethod m) { return m == RegionMethod::Landmark ? "landmark" : "kunneth"; }

/// Closed rectangle [birthLow, birthHigh] x [deathLow, deathHigh].
struct ConfidenceRegion {
    double birthLow;
    double birthHigh;
    double deathLow;
    double deathHigh;
    Interval sourceBar;
    RegionMethod method;

    double area() const { return (birthHigh - birthLow) * (deathHigh - deathLow); }

    bool contains(const Interval& bar) const {
        return birthLow <= bar.birth() && bar.birth() <= birthHigh && deathLow <= bar.death() &&
               bar.death() <= deathHigh;
    }

    bool intersects(const ConfidenceRegion& o) const {
        return birthLow <= o.birthHigh && o.birthLow <= birthHigh && deathLow <= o.deathHigh &&
               o.deathLow <= deathHigh;
    }
};

/// Stability box around a landmark bar; significant iff length > 4r.
inline std::optional<ConfidenceRegion> landmarkRegion(const Interval& bar, double r) {
    if (!(r >= 0.0)) throw DomainError("landmark radius must be nonnegative");
    if (!(bar.length() > 4.0 * r)) return std::nullopt;
    return ConfidenceRegion{std::max(0.0, bar.birth() - 2.0 * r), bar.birth() + 2.0 * r,
                            std::max(0.0, bar.death() - 2.0 * r), bar.death() + 2.0 * r, bar,
                            RegionMethod::Landmark};
}

/// Box for a max-metric product bar mapped to the Euclidean window cloud;
/// significant iff rho / sqrt2 - sqrt2 ell > 4 lambda.
inline std::optional<ConfidenceRegion> kunnethRegion(const Interval& bar, double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
    const double s2 = std::numbers::sqrt2;
    if (!(bar.death() / s2 - s2 * bar.birth() > 4.0 * lambda)) return std::nullopt;
    return ConfidenceRegion{std::max(0.0, (bar.birth() - 2.0 * lambda) / s2), s2 * (bar.birth() + 2.0 * lambda),
                            std::max(0.0, (bar.death() - 2.0 * lambda) / s2), s2 * (bar.death() + 2.0 * lambda),
                            bar, RegionMethod::Kunneth};
}

// ---------------------------------------------------------------------------
// Hausdorff bounds

/// max(||a_xy - b_xy||, ||a_zw - b_zw||) for points of C^2 stored as (x, y, z, w).
inline double maxNormC2(std::span<const double> a, std::span<const double> b) {
    return std::max(std::hypot(a[0] - b[0], a[1] - b[1]), std::hypot(a[2] - b[2], a[3] - b[3]));
}

/// Hausdorff distance in (C^2, max norm) between X_L x Y_L and the diagonal
/// samples {(x_t, y_t)}: an upper bound for their Gromov-Hausdorff distance.
inline double productLandmarkHausdorff(const FactorClouds& clouds, std::span<const std::size_t> landmarksX,
                                       std::span<const std::size_t> landmarksY) {
    const auto& x = clouds.first;
    const auto& y = clouds.second;
    const std::size_t n = x.size();
    // Samples to the landmark grid: the nearest grid point splits per coordinate.
    double toGrid = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        double bx = kInfinity, by = kInfinity;
        for (auto l : landmarksX) bx = std::min(bx, euclideanDistance(x[t], x[l]));
        for (auto l : landmarksY) by = std::min(by, euclideanDistance(y[t], y[l]));
        toGrid = std::max(toGrid, std::max(bx, by));
    }
    // Grid to the samples.
    double toSamples = 0.0;
    std::vector<double> dx(n), dy(n);
    for (auto lx : landmarksX) {
        for (std::size_t t = 0; t < n; ++t) dx[t] = euclideanDistance(x[t], x[lx]);
        for (auto ly : landmarksY) {
            double best = kInfinity;
            for (std::size_t t = 0; t < n; ++t) {
                double d = std::max(dx[t], euclideanDistance(y[t], y[ly]));
                if (d < best) best = d;
                if (best <= toSamples) break;  // cannot raise the max
            }
            toSamples = std::max(toSamples, best);
        }
    }
    return std::max(toGrid, toSamples);
}

// ---------------------------------------------------------------------------
// Experiment

struct ExperimentConfig {
    int windowDim = 1;
    /// Delay; defaults to tauStar(windowDim, omega) when unset.
    std::optional<double> tau;
    std::size_t jointLandmarks = 200;
    std::size_t factorLandmarks = 60;
    int maxDim = 2;
    double jointThreshold = kInfinity;
    double factorThreshold = kInfinity;
    std::size_t seedIndex = 0;
    PrimeField field{2};
    ReductionAlgorithm algorithm = ReductionAlgorithm::Homology;
    std::size_t budget = kDefaultSimplexBudget;
};

/// Desk-scale run: omega = sqrt3, c1 = c2 = 1/sqrt2, d = 1, t = 0..1999,
/// 200 joint vs 60 + 60 factor landmarks. Both Rips filtrations stop at 2, the
/// max-metric diameter of phi(T), so the factor complexes are complete.
struct DeskScaleExperiment {
    SignalSpec spec{Complex(1.0 / std::numbers::sqrt2), Complex(1.0 / std::numbers::sqrt2), std::numbers::sqrt3,
                    SampleTimes{0.0, 1.0, 2000}};
    ExperimentConfig config = [] {
        ExperimentConfig c;
        c.jointThreshold = 2.0;
        c.factorThreshold = 2.0;
        return c;
    }();
};

struct PathResult {
    GradedBarcode barcode;
    /// r for the landmark path, lambda for the Kunneth path.
    double radius = 0.0;
    std::vector<std::size_t> landmarkCounts;
    std::size_t simplexCount = 0;
    double millis = 0.0;
    /// Significant regions per dimension 1..maxDim.
    std::map<int, std::vector<ConfidenceRegion>> regions;
};

struct ExperimentResult {
    double tau = 0.0;
    PathResult landmark;
    PathResult kunneth;
};

/// The `count` longest bars, longest first.
inline Bars dominantBars(const Bars& bars, std::size_t count) {
    Bars sorted = bars;
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) { return a.length() > b.length(); });
    if (sorted.size() > count) sorted.erase(sorted.begin() + static_cast<std::ptrdiff_t>(count), sorted.end());
    return sorted;
}

/// Landmark path vs Kunneth path. The paths run one after the other and each
/// timing covers landmark selection, Rips construction, reduction and bounds.
inline ExperimentResult runExperiment(const SignalSpec& spec, const ExperimentConfig& cfg) {
    using Clock = std::chrono::steady_clock;
    const int d = cfg.windowDim;
    ExperimentResult res;
    res.tau = cfg.tau ? *cfg.tau : tauStar(d, spec.omega);
    const std::size_t samples = spec.times.count;
    if (cfg.jointLandmarks > samples || cfg.factorLandmarks > samples) {
        throw DomainError("landmark counts must not exceed the sample count");
    }
    const PointCloud window = swEmbed(spec, d, res.tau);
    const FactorClouds factors = factorEmbed(spec, d);
    PersistenceOptions opts{cfg.field, cfg.maxDim, cfg.algorithm, true};

    {
        auto t0 = Clock::now();
        auto sel = maxminLandmarks(window, cfg.jointLandmarks, cfg.seedIndex);
        auto metric = FiniteMetricSpace::euclidean(window.subset(sel.indices));
        auto rips = ripsFiltration(metric, cfg.maxDim + 1, cfg.jointThreshold, cfg.budget);
        res.landmark.simplexCount = rips.size();
        res.landmark.barcode = computeBarcode(rips, opts);
        res.landmark.radius = sel.coveringRadius;
        res.landmark.landmarkCounts = {sel.indices.size()};
        for (int n = 1; n <= cfg.maxDim; ++n) {
            auto& out = res.landmark.regions[n];
            for (const auto& bar : res.landmark.barcode[n]) {
                if (auto r = landmarkRegion(bar, res.landmark.radius)) out.push_back(*r);
            }
        }
        res.landmark.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }
    {
        auto t0 = Clock::now();
        auto selX = maxminLandmarks(factors.first, cfg.factorLandmarks, cfg.seedIndex);
        auto selY = maxminLandmarks(factors.second, cfg.factorLandmarks, cfg.seedIndex);
        auto ripsX = ripsFiltration(FiniteMetricSpace::euclidean(factors.first.subset(selX.indices)),
                                    cfg.maxDim + 1, cfg.factorThreshold, cfg.budget);
        auto ripsY = ripsFiltration(FiniteMetricSpace::euclidean(factors.second.subset(selY.indices)),
                                    cfg.maxDim + 1, cfg.factorThreshold, cfg.budget);
        res.kunneth.simplexCount = ripsX.size() + ripsY.size();
        auto bx = computeBarcode(ripsX, opts);
        auto by = computeBarcode(ripsY, opts);
        res.kunneth.barcode = categoricalProductBarcode(bx, by, cfg.maxDim);
        res.kunneth.radius = productLandmarkHausdorff(factors, selX.indices, selY.indices);
        res.kunneth.landmarkCounts = {selX.indices.size(), selY.indices.size()};
        for (int n = 1; n <= cfg.maxDim; ++n) {
            auto& out = res.kunneth.regions[n];
            for (const auto& bar : res.kunneth.barcode[n]) {
                if (auto r = kunnethRegion(bar, res.kunneth.radius)) out.push_back(*r);
            }
        }
        res.kunneth.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }
    return res;
}

}  // namespace kunneth
