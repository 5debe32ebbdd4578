// svg.hpp: Minimal line plots (polylines and a framed axis box). Nothing in
// the numerical headers includes this file.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "bhdimer/errors.hpp"

namespace bhdimer::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
    std::string colour{"#1f77b4"};
    bool dashed{false};
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    int width{800};
    int height{450};
};

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace detail

inline std::string render(const Plot& p) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : p.series) {
        for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            x0 = std::min(x0, s.x[k]);
            x1 = std::max(x1, s.x[k]);
            y0 = std::min(y0, s.y[k]);
            y1 = std::max(y1, s.y[k]);
        }
    }
    if (!(x1 > x0)) { x0 = 0.0; x1 = 1.0; }
    if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    const double L = 70, R = 20, T = 40, B = 50;
    const double W = p.width - L - R, H = p.height - T - B;
    auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * W; };
    auto sy = [&](double y) { return T + (y1 - y) / (y1 - y0) * H; };
    using detail::num;

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(p.width) +
                      "\" height=\"" + std::to_string(p.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<rect x=\"" + num(L) + "\" y=\"" + num(T) + "\" width=\"" + num(W) + "\" height=\"" + num(H) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
        out += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(T + H + 16) + "\" text-anchor=\"middle\">" + num(xv) + "</text>\n";
        out += "<text x=\"" + num(L - 6) + "\" y=\"" + num(sy(yv) + 4) + "\" text-anchor=\"end\">" + num(yv) + "</text>\n";
    }
    if (y0 < 0.0 && y1 > 0.0) {
        out += "<line x1=\"" + num(L) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(L + W) + "\" y2=\"" + num(sy(0)) +
               "\" stroke=\"#bbbbbb\"/>\n";
    }
    out += "<text x=\"" + num(L + W / 2) + "\" y=\"" + num(T - 14) + "\" text-anchor=\"middle\" font-size=\"14\">" +
           detail::escape(p.title) + "</text>\n";
    out += "<text x=\"" + num(L + W / 2) + "\" y=\"" + num(p.height - 10.0) + "\" text-anchor=\"middle\">" +
           detail::escape(p.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + num(T + H / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num(T + H / 2) + ")\">" + detail::escape(p.y_label) + "</text>\n";

    double ly = T + 14;
    for (const auto& s : p.series) {
        out += "<polyline fill=\"none\" stroke=\"" + s.colour + "\" stroke-width=\"1.2\"";
        if (s.dashed) out += " stroke-dasharray=\"5,3\"";
        out += " points=\"";
        for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            out += num(sx(s.x[k])) + "," + num(sy(s.y[k])) + " ";
        }
        out += "\"/>\n";
        if (!s.label.empty()) {
            out += "<line x1=\"" + num(L + W - 130) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(L + W - 105) +
                   "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + s.colour + "\"" +
                   (s.dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
            out += "<text x=\"" + num(L + W - 100) + "\" y=\"" + num(ly) + "\">" + detail::escape(s.label) + "</text>\n";
            ly += 16;
        }
    }
    out += "</svg>\n";
    return out;
}

inline void write(const std::filesystem::path& path, const Plot& p) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    out << render(p);
}

} // namespace bhdimer::svg
