#include "sos/svg.hpp"

#include <cstdio>

namespace sos {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
constexpr int kPaletteSize = 8;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string loops_svg(const std::vector<ContourLoop>& loops, int side,
                      long min_length) {
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
           std::to_string(side) + " " + std::to_string(side) +
           "\" preserveAspectRatio=\"xMidYMid meet\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(side) +
           "\" height=\"" + std::to_string(side) +
           "\" fill=\"white\" stroke=\"black\" stroke-width=\"" +
           num(side / 512.0) + "\"/>\n";
    for (const ContourLoop& loop : loops) {
        if (loop.length < min_length) continue;
        const int c = ((loop.level % kPaletteSize) + kPaletteSize) % kPaletteSize;
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += kPalette[c];
        svg += "\" stroke-width=\"" + num(side / 1024.0 + 0.25) + "\" points=\"";
        for (const DualVertex& v : loop.vertices) {
            // dual vertex (i, j) at plane point (i - 1/2, j - 1/2); flip y so
            // the SVG reads with the origin at the bottom-left
            svg += num(v.x - 0.5);
            svg += ',';
            svg += num(side - (v.y - 0.5));
            svg += ' ';
        }
        svg += "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string shapes_svg(const std::vector<LimitShape>& shapes) {
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.05 -0.05 1.1 1.1\" "
           "preserveAspectRatio=\"xMidYMid meet\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"none\" "
           "stroke=\"black\" stroke-width=\"0.003\"/>\n";
    int idx = 0;
    for (const LimitShape& sh : shapes) {
        svg += "<polygon fill=\"none\" stroke=\"";
        svg += kPalette[idx++ % kPaletteSize];
        svg += "\" stroke-width=\"0.0025\" points=\"";
        for (const Vec2& p : sh.boundary) {
            svg += num(p.x);
            svg += ',';
            svg += num(1.0 - p.y);
            svg += ' ';
        }
        svg += "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace sos
