// kunneth: persistent homology of products from the command line.
//
//   compute   barcode of a Rips filtration or a filtered complex file
//   kunneth   categorical or tensor product of two barcode JSON files
//   verify    combinator output against the product-complex oracle
//   swdemo    landmark vs Kunneth approximation of a sliding-window torus
//   torus     closed-form Rips barcodes and bar counts of a product of circles
//
// Exit codes: 0 ok, 1 verification mismatch, 2 parse or usage error,
// 3 simplex budget exceeded, 4 tensor mode on unsnapped real endpoints.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kunneth.hpp"

namespace {

using namespace kunneth;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kParse = 2;
constexpr int kBudget = 3;
constexpr int kModeGuard = 4;

struct ModeGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string input;
    std::string left;
    std::string right;
    std::string metric = "euclidean";
    int maxDim = 1;
    double threshold = kInfinity;
    std::uint32_t field = 2;
    std::optional<double> snap;
    std::string mode = "categorical";
    std::string out;
    std::uint64_t seed = 0;
    std::size_t budget = kDefaultSimplexBudget;
    bool allowReal = false;
    std::string algorithm = "homology";
};

std::ifstream openInput(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

void emit(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

void writeText(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
}

PersistenceOptions persistenceOptions(const CommonOptions& o, int maxDim) {
    PersistenceOptions p;
    p.field = PrimeField(o.field);
    p.maxDim = maxDim;
    if (o.algorithm == "cohomology") p.algorithm = ReductionAlgorithm::Cohomology;
    return p;
}

FiniteMetricSpace readMetric(const std::string& path, const std::string& kind) {
    auto in = openInput(path);
    if (kind == "euclidean") return FiniteMetricSpace::euclidean(readPointCloudCsv(in));
    if (kind == "lower-distance") return readLowerDistanceMatrix(in);
    throw ParseError("metric '" + kind + "' cannot be read from a single file");
}

/// A filtered complex from a complex file or the Rips filtration of a metric file.
FilteredComplex readFactor(const std::string& path, const CommonOptions& o, int simplexDim) {
    if (o.metric == "complex") {
        auto in = openInput(path);
        auto k = readFilteredComplex(in);
        if (auto v = validate(k)) throw ParseError(path + ": " + v->describe());
        return k;
    }
    return ripsFiltration(readMetric(path, o.metric), simplexDim, o.threshold, o.budget);
}

bool onGrid(double v, double step) {
    if (std::isinf(v)) return true;
    double q = v / step;
    return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, std::abs(q));
}

double snapValue(double v, double step) { return std::isinf(v) ? v : std::ceil(v / step) * step; }

GradedBarcode snapBarcode(const GradedBarcode& b, double step) {
    GradedBarcode out;
    for (const auto& [dim, bars] : b.dimensions()) {
        for (const auto& bar : bars) {
            // Bars shorter than a grid cell can vanish.
            if (auto b = makeInterval(snapValue(bar.birth(), step), snapValue(bar.death(), step))) out.add(dim, *b);
        }
    }
    return out;
}

/// Tensor mode needs integer endpoints (after snapping) unless real values are allowed.
void guardTensor(const CommonOptions& o, const std::vector<double>& values) {
    if (o.mode != "tensor" || o.allowReal || o.snap) return;
    for (double v : values) {
        if (!onGrid(v, 1.0)) {
            throw ModeGuardError("tensor mode needs integer endpoints; pass --snap <step> or --allow-real (found " +
                                 formatValue(v) + ")");
        }
    }
}

std::vector<double> endpoints(const GradedBarcode& b) {
    std::vector<double> v;
    for (const auto& [dim, bars] : b.dimensions()) {
        for (const auto& bar : bars) {
            v.push_back(bar.birth());
            v.push_back(bar.death());
        }
    }
    return v;
}

std::vector<double> values(const FilteredComplex& k) {
    std::vector<double> v;
    for (const auto& s : k.simplices()) v.push_back(s.value);
    return v;
}

GradedBarcode combine(const GradedBarcode& x, const GradedBarcode& y, const std::string& mode, int maxDim) {
    return mode == "tensor" ? tensorProductBarcode(x, y, maxDim) : categoricalProductBarcode(x, y, maxDim);
}

// ---------------------------------------------------------------------------

int cmdCompute(const CommonOptions& o) {
    FilteredComplex k;
    if (o.metric == "max-product") {
        if (o.left.empty() || o.right.empty()) throw ParseError("max-product needs --left and --right");
        auto x = readMetric(o.left, "euclidean"), y = readMetric(o.right, "euclidean");
        k = ripsFiltration(maxProduct(x, y), o.maxDim + 1, o.threshold, o.budget);
    } else {
        if (o.input.empty()) throw ParseError("compute needs --input");
        k = readFactor(o.input, o, o.maxDim + 1);
    }
    if (o.snap) k = k.snapped(*o.snap);
    auto j = barcodeToJson(computeBarcode(k, persistenceOptions(o, o.maxDim)), o.field);
    j["seed"] = o.seed;
    emit(j, o.out);
    return kOk;
}

int cmdKunneth(const CommonOptions& o, bool maxDimGiven) {
    if (o.left.empty() || o.right.empty()) throw ParseError("kunneth needs --left and --right barcode files");
    auto inL = openInput(o.left);
    auto inR = openInput(o.right);
    auto l = readBarcodeJson(inL), r = readBarcodeJson(inR);
    if (l.field != r.field) throw ParseError("inputs use different coefficient fields");
    GradedBarcode x = l.barcode, y = r.barcode;
    if (o.snap) {
        x = snapBarcode(x, *o.snap);
        y = snapBarcode(y, *o.snap);
    }
    auto ex = endpoints(x), ey = endpoints(y);
    ex.insert(ex.end(), ey.begin(), ey.end());
    guardTensor(o, ex);
    int maxDim = maxDimGiven ? o.maxDim : std::max(0, x.topDimension()) + std::max(0, y.topDimension()) + (o.mode == "tensor");
    auto j = barcodeToJson(combine(x, y, o.mode, maxDim), l.field);
    j["mode"] = o.mode;
    j["seed"] = o.seed;
    emit(j, o.out);
    return kOk;
}

struct VerifyExtras {
    std::string expected;
    int randomVertices = 0;
};

int cmdVerify(const CommonOptions& o, const VerifyExtras& extra) {
    const int simplexDim = o.maxDim + 1;
    FilteredComplex k, l, oracleComplex;
    if (extra.randomVertices > 0) {
        // Random integer-valued complexes drawn from --seed.
        std::mt19937_64 rng(o.seed);
        auto random = [&] {
            FilteredComplex c;
            std::uniform_int_distribution<int> count(1, extra.randomVertices), value(0, 5);
            std::bernoulli_distribution edge(0.6), triangle(0.5);
            const int n = count(rng);
            std::vector<int> vv(n);
            for (int v = 0; v < n; ++v) c.add({static_cast<Vertex>(v)}, vv[v] = value(rng));
            std::vector<std::vector<int>> ev(n, std::vector<int>(n, -1));
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    if (!edge(rng)) continue;
                    ev[a][b] = std::max({vv[a], vv[b], value(rng)});
                    c.add({static_cast<Vertex>(a), static_cast<Vertex>(b)}, ev[a][b]);
                }
            }
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    for (int d = b + 1; d < n; ++d) {
                        if (ev[a][b] < 0 || ev[a][d] < 0 || ev[b][d] < 0 || !triangle(rng)) continue;
                        c.add({static_cast<Vertex>(a), static_cast<Vertex>(b), static_cast<Vertex>(d)},
                              std::max({ev[a][b], ev[a][d], ev[b][d], value(rng)}));
                    }
                }
            }
            return c;
        };
        k = random();
        l = random();
    } else {
        if (o.left.empty() || o.right.empty()) throw ParseError("verify needs --left and --right (or --random)");
        k = readFactor(o.left, o, simplexDim);
        l = readFactor(o.right, o, simplexDim);
    }
    if (o.snap) {
        k = k.snapped(*o.snap);
        l = l.snapped(*o.snap);
    }
    auto vk = values(k), vl = values(l);
    vk.insert(vk.end(), vl.begin(), vl.end());
    guardTensor(o, vk);

    const auto popts = persistenceOptions(o, o.maxDim);
    GradedBarcode claimed;
    if (!extra.expected.empty()) {
        auto in = openInput(extra.expected);
        claimed = readBarcodeJson(in).barcode;
    } else {
        claimed = combine(computeBarcode(k, popts), computeBarcode(l, popts), o.mode, o.maxDim);
    }
    auto rule = o.mode == "tensor" ? ProductValueRule::Sum : ProductValueRule::Max;
    auto oracle = computeBarcode(orderedProductComplex(k, l, simplexDim, rule, o.budget), popts);

    json diff = barcodeDiff(oracle, claimed, o.maxDim);
    json report{{"mode", o.mode},
                {"max_dim", o.maxDim},
                {"coefficient_field", o.field},
                {"match", diff.empty()},
                {"diff", diff},
                {"oracle", barcodeToJson(oracle, o.field)["barcodes"]},
                {"seed", o.seed}};
    emit(report, o.out);
    return diff.empty() ? kOk : kMismatch;
}

struct SwdemoOptions {
    double omega = std::numbers::sqrt3;
    int windowDim = 1;
    double start = 0.0;
    double step = 1.0;
    std::size_t samples = 2000;
    std::size_t jointLandmarks = 200;
    std::size_t factorLandmarks = 60;
    std::size_t landmarkStart = 0;
    double threshold = 2.0;
    std::string svg;
};

json regionJson(const ConfidenceRegion& r, int dim) {
    auto bound = [](double v) { return std::isinf(v) ? json(nullptr) : json(v); };
    return {{"dim", dim},
            {"birth", {r.birthLow, r.birthHigh}},
            {"death", {r.deathLow, bound(r.deathHigh)}},
            {"source_bar", {r.sourceBar.birth(), bound(r.sourceBar.death())}},
            {"area", bound(r.area())}};
}

json pathJson(const PathResult& p, const char* radiusName, std::uint32_t field) {
    json regions = json::array();
    json areas = json::object();
    for (const auto& [dim, list] : p.regions) {
        json a = json::array();
        for (const auto& r : list) {
            regions.push_back(regionJson(r, dim));
            a.push_back(std::isinf(r.area()) ? json(nullptr) : json(r.area()));
        }
        areas[std::to_string(dim)] = a;
    }
    return {{"time_ms", p.millis},
            {radiusName, p.radius},
            {"bound", "Hausdorff upper bound"},
            {"landmarks", p.landmarkCounts},
            {"simplices", p.simplexCount},
            {"barcode", barcodeToJson(p.barcode, field)["barcodes"]},
            {"regions", regions},
            {"areas", areas}};
}

int cmdSwdemo(const CommonOptions& o, const SwdemoOptions& s, bool maxDimGiven) {
    const double h = 1.0 / std::numbers::sqrt2;
    SignalSpec spec(h, h, s.omega, SampleTimes{s.start, s.step, s.samples});
    ExperimentConfig cfg;
    cfg.windowDim = s.windowDim;
    cfg.jointLandmarks = s.jointLandmarks;
    cfg.factorLandmarks = s.factorLandmarks;
    cfg.maxDim = maxDimGiven ? o.maxDim : 2;
    cfg.jointThreshold = s.threshold;
    cfg.factorThreshold = s.threshold;
    cfg.seedIndex = s.landmarkStart;
    cfg.field = PrimeField(o.field);
    cfg.algorithm = o.algorithm == "cohomology" ? ReductionAlgorithm::Cohomology : ReductionAlgorithm::Homology;
    cfg.budget = o.budget;
    auto res = runExperiment(spec, cfg);

    json j{{"parameters",
            {{"omega", s.omega},
             {"c1", h},
             {"c2", h},
             {"window_dim", s.windowDim},
             {"tau", res.tau},
             {"sample_times", {{"start", s.start}, {"step", s.step}, {"count", s.samples}}},
             {"joint_landmarks", s.jointLandmarks},
             {"factor_landmarks", s.factorLandmarks},
             {"landmark_start", s.landmarkStart},
             {"max_dim", cfg.maxDim},
             {"threshold", s.threshold},
             {"coefficient_field", o.field}}},
           {"landmark", pathJson(res.landmark, "r", o.field)},
           {"kunneth", pathJson(res.kunneth, "lambda", o.field)},
           {"speedup", res.kunneth.millis > 0 ? res.landmark.millis / res.kunneth.millis : 0.0},
           {"seed", o.seed}};
    emit(j, o.out);

    std::string svgPath = s.svg;
    if (svgPath.empty()) {
        svgPath = o.out.empty() || o.out == "-" ? "swdemo.svg" : o.out + ".svg";
    }
    std::vector<ConfidenceRegion> regions;
    Bars landmarkBars, kunnethBars;
    for (int d = 1; d <= cfg.maxDim; ++d) {
        for (const auto& r : res.landmark.regions[d]) regions.push_back(r);
        for (const auto& r : res.kunneth.regions[d]) regions.push_back(r);
        for (const auto& b : res.landmark.barcode[d]) landmarkBars.push_back(b);
        for (const auto& b : res.kunneth.barcode[d]) kunnethBars.push_back(b);
    }
    writeText(diagramSvg({{landmarkBars, "blue"}, {kunnethBars, "red"}}, regions,
                         "landmark (blue) vs Kunneth (red), dims 1.." + std::to_string(cfg.maxDim)),
              svgPath);
    return kOk;
}

struct TorusOptions {
    std::vector<double> radii;
    std::optional<double> eps;
    std::optional<int> p;
};

int cmdTorus(const CommonOptions& o, const TorusOptions& t) {
    if (t.radii.empty()) throw ParseError("torus needs --radii");
    std::vector<CircleSpec> circles;
    for (double r : t.radii) circles.emplace_back(r);
    const int n = static_cast<int>(circles.size());
    auto bcd = torusBarcode(circles, n);

    std::vector<double> grid;
    if (t.eps) {
        grid.push_back(*t.eps);
    } else {
        double top = 1.1 * std::sqrt(3.0) * *std::max_element(t.radii.begin(), t.radii.end());
        for (int i = 1; i <= 20; ++i) grid.push_back(top * i / 20.0);
    }
    std::vector<int> degrees;
    if (t.p) {
        if (*t.p < 0 || *t.p > n) throw DomainError("--p must lie in [0, number of circles]");
        degrees.push_back(*t.p);
    } else {
        for (int p = 0; p <= n; ++p) degrees.push_back(p);
    }
    json counts = json::array();
    bool pass = true;
    for (double eps : grid) {
        for (int p : degrees) {
            auto closed = torusCount(circles, eps, p);
            auto expanded = countBarsFromZero(bcd[p], eps);
            bool ok = closed == expanded;
            pass = pass && ok;
            counts.push_back({{"eps", eps}, {"p", p}, {"count", closed}, {"barcode_count", expanded}, {"match", ok}});
        }
    }
    json j{{"radii", t.radii},
           {"barcode", barcodeToJson(bcd, o.field)["barcodes"]},
           {"counts", counts},
           {"cross_check", pass ? "pass" : "fail"},
           {"seed", o.seed}};
    emit(j, o.out);
    return pass ? kOk : kMismatch;
}

void addCommon(CLI::App* cmd, CommonOptions& o, bool withInputs) {
    if (withInputs) {
        cmd->add_option("--input", o.input, "Input file");
        cmd->add_option("--left", o.left, "Left factor file");
        cmd->add_option("--right", o.right, "Right factor file");
        cmd->add_option("--metric", o.metric, "Input kind")
            ->check(CLI::IsMember({"euclidean", "lower-distance", "max-product", "complex"}));
        cmd->add_option("--threshold", o.threshold, "Rips threshold")->check(CLI::NonNegativeNumber);
        cmd->add_option("--snap", o.snap, "Grid step; values become ceil(v/s)*s")->check(CLI::PositiveNumber);
        cmd->add_option("--mode", o.mode, "Product mode")->check(CLI::IsMember({"categorical", "tensor"}));
        cmd->add_flag("--allow-real", o.allowReal, "Allow tensor mode on real endpoints");
    }
    cmd->add_option("--max-dim", o.maxDim, "Highest homology dimension")->check(CLI::NonNegativeNumber);
    cmd->add_option("--field", o.field, "Prime characteristic of the coefficient field");
    cmd->add_option("--out", o.out, "Output file (default stdout)");
    cmd->add_option("--seed", o.seed, "Seed, echoed in every JSON output");
    cmd->add_option("--budget", o.budget, "Simplex budget")->check(CLI::PositiveNumber);
    cmd->add_option("--algorithm", o.algorithm, "Reduction algorithm")
        ->check(CLI::IsMember({"homology", "cohomology"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistent homology of products"};
    app.require_subcommand(1);

    CommonOptions computeOpts, kunnethOpts, verifyOpts, swOpts, torusOpts;
    verifyOpts.maxDim = 2;
    auto* compute = app.add_subcommand("compute", "Barcode of a point cloud, distance matrix or filtered complex");
    addCommon(compute, computeOpts, true);

    auto* kun = app.add_subcommand("kunneth", "Product barcode of two barcode JSON files");
    addCommon(kun, kunnethOpts, true);

    VerifyExtras verifyExtras;
    auto* verify = app.add_subcommand("verify", "Check the product formula against the product-complex oracle");
    addCommon(verify, verifyOpts, true);
    verify->add_option("--barcode", verifyExtras.expected, "Claimed product barcode to check instead");
    verify->add_option("--random", verifyExtras.randomVertices, "Use two random complexes with up to N vertices")
        ->check(CLI::PositiveNumber);

    SwdemoOptions sw;
    auto* swdemo = app.add_subcommand("swdemo", "Sliding-window landmark vs Kunneth experiment");
    addCommon(swdemo, swOpts, false);
    swdemo->add_option("--omega", sw.omega, "Second frequency");
    swdemo->add_option("--window-dim", sw.windowDim, "Window dimension d")->check(CLI::PositiveNumber);
    swdemo->add_option("--samples", sw.samples, "Number of sample times")->check(CLI::PositiveNumber);
    swdemo->add_option("--start", sw.start, "First sample time");
    swdemo->add_option("--step", sw.step, "Sample time step")->check(CLI::PositiveNumber);
    swdemo->add_option("--joint-landmarks", sw.jointLandmarks, "Landmarks on the window cloud");
    swdemo->add_option("--factor-landmarks", sw.factorLandmarks, "Landmarks per factor circle");
    swdemo->add_option("--landmark-start", sw.landmarkStart, "Index of the first maxmin landmark");
    swdemo->add_option("--threshold", sw.threshold, "Rips threshold for both paths")->check(CLI::PositiveNumber);
    swdemo->add_option("--svg", sw.svg, "Diagram output path");

    TorusOptions torus;
    auto* tor = app.add_subcommand("torus", "Closed-form torus barcodes and counts");
    addCommon(tor, torusOpts, false);
    tor->add_option("--radii", torus.radii, "Circle radii")->delimiter(',')->required();
    tor->add_option("--eps", torus.eps, "Scale (default: a 20-value grid)")->check(CLI::PositiveNumber);
    tor->add_option("--p", torus.p, "Degree (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParse;
    }

    try {
        if (*compute) return cmdCompute(computeOpts);
        if (*kun) return cmdKunneth(kunnethOpts, kun->count("--max-dim") > 0);
        if (*verify) return cmdVerify(verifyOpts, verifyExtras);
        if (*swdemo) return cmdSwdemo(swOpts, sw, swdemo->count("--max-dim") > 0);
        if (*tor) return cmdTorus(torusOpts, torus);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const ModeGuardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kModeGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    }
    return kParse;
}
