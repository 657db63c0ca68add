#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>

#include <json.hpp>

#include "kunneth/errors.hpp"
#include "kunneth/interval.hpp"

namespace kunneth {

using nlohmann::json;

/// {"coefficient_field": p, "barcodes": [{"dim": n, "bars": [[b, d|null], ...]}]}
/// Bars are written sorted by (birth, death); null encodes an infinite death.
inline json barcodeToJson(const GradedBarcode& bcd, std::uint32_t field = 2) {
    json out;
    out["coefficient_field"] = field;
    out["barcodes"] = json::array();
    const auto sorted = bcd.normalized();
    for (const auto& [dim, bars] : sorted.dimensions()) {
        json entry;
        entry["dim"] = dim;
        entry["bars"] = json::array();
        for (const auto& b : bars) {
            entry["bars"].push_back(json::array({b.birth(), b.isFinite() ? json(b.death()) : json(nullptr)}));
        }
        out["barcodes"].push_back(std::move(entry));
    }
    return out;
}

struct ParsedBarcode {
    GradedBarcode barcode;
    std::uint32_t field = 2;
};

/// Accepts bars in any order and ignores unknown top-level keys (such as "seed").
inline ParsedBarcode barcodeFromJson(const json& j) {
    auto fail = [](const std::string& what) { throw ParseError("barcode JSON: " + what); };
    if (!j.is_object()) fail("top level must be an object");
    ParsedBarcode out;
    if (j.contains("coefficient_field")) {
        const auto& f = j["coefficient_field"];
        if (!f.is_number_unsigned()) fail("coefficient_field must be a positive integer");
        out.field = f.get<std::uint32_t>();
    }
    if (!j.contains("barcodes") || !j["barcodes"].is_array()) fail("missing 'barcodes' array");
    for (const auto& entry : j["barcodes"]) {
        if (!entry.is_object() || !entry.contains("dim") || !entry["dim"].is_number_integer()) {
            fail("each barcode entry needs an integer 'dim'");
        }
        const int dim = entry["dim"].get<int>();
        if (dim < 0) fail("negative dimension");
        if (!entry.contains("bars") || !entry["bars"].is_array()) fail("each barcode entry needs 'bars'");
        auto& bars = out.barcode.at(dim);
        for (const auto& bar : entry["bars"]) {
            if (!bar.is_array() || bar.size() != 2 || !bar[0].is_number()) fail("bar must be [birth, death-or-null]");
            const double birth = bar[0].get<double>();
            double death = kInfinity;
            if (!bar[1].is_null()) {
                if (!bar[1].is_number()) fail("death must be a number or null");
                death = bar[1].get<double>();
            }
            if (!(birth >= 0.0) || !std::isfinite(birth) || !(birth < death)) {
                fail("bar needs 0 <= birth < death");
            }
            bars.emplace_back(birth, death);
        }
    }
    return out;
}

inline ParsedBarcode readBarcodeJson(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("barcode JSON: ") + e.what());
    }
    return barcodeFromJson(j);
}

/// Per-dimension multiset difference: bars only in `expected` and only in `actual`.
inline json barcodeDiff(const GradedBarcode& expected, const GradedBarcode& actual, int maxDim) {
    json out = json::array();
    auto encode = [](const Interval& b) {
        return json::array({b.birth(), b.isFinite() ? json(b.death()) : json(nullptr)});
    };
    for (int d = 0; d <= maxDim; ++d) {
        Bars e = sortedBars(expected[d]), a = sortedBars(actual[d]);
        Bars onlyE, onlyA;
        std::set_difference(e.begin(), e.end(), a.begin(), a.end(), std::back_inserter(onlyE));
        std::set_difference(a.begin(), a.end(), e.begin(), e.end(), std::back_inserter(onlyA));
        if (onlyE.empty() && onlyA.empty()) continue;
        json entry{{"dim", d}, {"missing", json::array()}, {"unexpected", json::array()}};
        for (const auto& b : onlyE) entry["missing"].push_back(encode(b));
        for (const auto& b : onlyA) entry["unexpected"].push_back(encode(b));
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace kunneth
