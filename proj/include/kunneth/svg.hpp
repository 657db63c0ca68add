#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "kunneth/interval.hpp"
#include "kunneth/sliding_window.hpp"

namespace kunneth {

struct DiagramLayer {
    Bars bars;
    std::string color;
};

/// Static persistence diagram: birth on x, death on y, infinite deaths drawn on
/// the top edge. Landmark regions are blue, Kunneth regions red.
inline std::string diagramSvg(const std::vector<DiagramLayer>& layers,
                              const std::vector<ConfidenceRegion>& regions, const std::string& title = "") {
    double top = 0.0;
    for (const auto& l : layers) {
        for (const auto& b : l.bars) top = std::max(top, b.isFinite() ? b.death() : b.birth());
    }
    for (const auto& r : regions) {
        top = std::max(top, std::isfinite(r.deathHigh) ? r.deathHigh : r.deathLow);
        top = std::max(top, r.birthHigh);
    }
    if (!(top > 0.0)) top = 1.0;
    top *= 1.05;

    constexpr double size = 480.0, margin = 40.0;
    auto px = [&](double v) { return margin + v / top * size; };
    auto py = [&](double v) { return margin + size - std::min(v, top) / top * size; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
        << size + 2 * margin << "\">\n";
    if (!title.empty()) {
        out << "  <text x=\"" << margin << "\" y=\"" << margin / 2 << "\" font-size=\"14\">" << title << "</text>\n";
    }
    out << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(top) << "\" y2=\"" << py(top)
        << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    for (const auto& r : regions) {
        const char* color = r.method == RegionMethod::Landmark ? "blue" : "red";
        const double hi = std::isfinite(r.deathHigh) ? r.deathHigh : top;
        out << "  <rect class=\"" << toString(r.method) << "\" x=\"" << px(r.birthLow) << "\" y=\"" << py(hi)
            << "\" width=\"" << px(r.birthHigh) - px(r.birthLow) << "\" height=\"" << py(r.deathLow) - py(hi)
            << "\" fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"" << color << "\"/>\n";
    }
    for (const auto& l : layers) {
        for (const auto& b : l.bars) {
            out << "  <circle cx=\"" << px(b.birth()) << "\" cy=\"" << py(b.isFinite() ? b.death() : top)
                << "\" r=\"3\" fill=\"" << l.color << "\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace kunneth
