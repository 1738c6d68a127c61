#include "dhsort/svg_plot.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <vector>

namespace dhsort {
namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 710.0;  // legend lives to the right of this edge
constexpr double kTop = 40.0;
constexpr double kBottom = 530.0;

constexpr const char* kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
};

void appendf(std::string& out, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    const int len = std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    if (len > 0) out.append(buf, static_cast<size_t>(len));
}

double map_linear(std::uint64_t v, std::uint64_t lo, std::uint64_t span, double p0, double p1) {
    const double t = static_cast<double>(v - lo) / static_cast<double>(span);
    return p0 + t * (p1 - p0);
}

}  // namespace

std::string render_ops_scatter(std::span<const BenchmarkRecord> rows) {
    // Series in order of first appearance.
    std::vector<Algorithm> series;
    for (const auto& r : rows) {
        if (std::find(series.begin(), series.end(), r.algorithm) == series.end())
            series.push_back(r.algorithm);
    }
    const auto ops_of = [](const BenchmarkRecord& r) { return r.comparisons + r.moves; };

    std::uint64_t x_min = 0, x_max = 1, y_max = 1;
    if (!rows.empty()) {
        x_min = x_max = rows.front().n;
        y_max = 0;
        for (const auto& r : rows) {
            x_min = std::min(x_min, r.n);
            x_max = std::max(x_max, r.n);
            y_max = std::max(y_max, ops_of(r));
        }
        if (y_max == 0) y_max = 1;
    }
    const std::uint64_t x_span = x_max > x_min ? x_max - x_min : 1;

    std::string svg;
    svg.reserve(4096 + rows.size() * 64);
    appendf(svg, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    appendf(svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
            "width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
            kWidth, kHeight, kWidth, kHeight);
    appendf(svg, "<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" fill=\"#ffffff\"/>\n",
            kWidth, kHeight);

    // Axes.
    appendf(svg,
            "<g class=\"axes\" stroke=\"#333333\" stroke-width=\"1\">\n"
            "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>\n"
            "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>\n"
            "</g>\n",
            kLeft, kBottom, kRight, kBottom, kLeft, kTop, kLeft, kBottom);

    // Ticks and numeric labels, five per axis at quarter intervals.
    appendf(svg, "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n");
    for (int i = 0; i <= 4; ++i) {
        const std::uint64_t xv = x_min + x_span * static_cast<std::uint64_t>(i) / 4;
        const double px = map_linear(xv, x_min, x_span, kLeft, kRight);
        appendf(svg,
                "<line x1=\"%.2f\" y1=\"%.1f\" x2=\"%.2f\" y2=\"%.1f\" stroke=\"#333333\"/>\n",
                px, kBottom, px, kBottom + 6.0);
        appendf(svg, "<text x=\"%.2f\" y=\"%.1f\" text-anchor=\"middle\">%llu</text>\n", px,
                kBottom + 22.0, static_cast<unsigned long long>(xv));
        const std::uint64_t yv = y_max * static_cast<std::uint64_t>(i) / 4;
        const double py = map_linear(yv, 0, y_max, kBottom, kTop);
        appendf(svg,
                "<line x1=\"%.1f\" y1=\"%.2f\" x2=\"%.1f\" y2=\"%.2f\" stroke=\"#333333\"/>\n",
                kLeft - 6.0, py, kLeft, py);
        appendf(svg, "<text x=\"%.1f\" y=\"%.2f\" text-anchor=\"end\">%llu</text>\n", kLeft - 10.0,
                py + 4.0, static_cast<unsigned long long>(yv));
    }
    appendf(svg, "</g>\n");

    // Axis titles.
    appendf(svg,
            "<g class=\"axis-labels\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#000000\">\n"
            "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">n</text>\n"
            "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
            "transform=\"rotate(-90 %.1f %.1f)\">comparisons + moves</text>\n"
            "</g>\n",
            (kLeft + kRight) / 2.0, kBottom + 50.0, 30.0, (kTop + kBottom) / 2.0, 30.0,
            (kTop + kBottom) / 2.0);

    // Data marks.
    appendf(svg, "<g class=\"marks\">\n");
    for (const auto& r : rows) {
        size_t idx = 0;
        while (series[idx] != r.algorithm) ++idx;
        const double cx = map_linear(r.n, x_min, x_span, kLeft, kRight);
        const double cy = map_linear(ops_of(r), 0, y_max, kBottom, kTop);
        appendf(svg, "<circle class=\"mark\" cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" fill=\"%s\"/>\n",
                cx, cy, kPalette[idx % std::size(kPalette)]);
    }
    appendf(svg, "</g>\n");

    // Legend, one entry per series.
    appendf(svg, "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#000000\">\n");
    for (size_t i = 0; i < series.size(); ++i) {
        const double y = kTop + 20.0 + 24.0 * static_cast<double>(i);
        appendf(svg,
                "<g class=\"legend-entry\">"
                "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"5\" fill=\"%s\"/>"
                "<text x=\"%.1f\" y=\"%.1f\">%s</text></g>\n",
                kRight + 24.0, y, kPalette[i % std::size(kPalette)], kRight + 38.0, y + 4.5,
                std::string(algorithm_name(series[i])).c_str());
    }
    appendf(svg, "</g>\n</svg>\n");
    return svg;
}

}  // namespace dhsort
