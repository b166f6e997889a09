#pragma once

#include "flexarm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace flexarm {

struct SvgSeries {
    std::string label;
    std::vector<double> y;
};

// Minimal static line chart: shared x vector, one polyline per series,
// framed axes with min/max tick labels and a small legend.
inline void write_line_chart(const std::string& path, const std::string& title,
                             const std::string& xlabel, const std::string& ylabel,
                             const std::vector<double>& x,
                             const std::vector<SvgSeries>& series) {
    if (x.empty() || series.empty())
        throw ValidationError("svg: nothing to plot");
    for (const auto& s : series)
        if (s.y.size() != x.size())
            throw ValidationError("svg: series '" + s.label + "' length mismatch");

    double ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series) {
        for (double v : s.y) {
            if (!std::isfinite(v)) continue;
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!std::isfinite(ymin)) { ymin = 0.0; ymax = 1.0; }
    if (ymax - ymin < 1e-12) { ymax += 0.5; ymin -= 0.5; }
    const double xmin = x.front(), xmax = x.back();
    const double xspan = (xmax - xmin) > 1e-300 ? xmax - xmin : 1.0;

    constexpr int W = 720, H = 420, L = 70, R = 20, T = 40, B = 50;
    auto px = [&](double v) { return L + (v - xmin) / xspan * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - T - B); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
       << title << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
       << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
    os.precision(5);
    os << "<text x=\"" << L << "\" y=\"" << H - B + 18 << "\" font-size=\"11\">" << xmin
       << "</text>\n";
    os << "<text x=\"" << W - R << "\" y=\"" << H - B + 18
       << "\" text-anchor=\"end\" font-size=\"11\">" << xmax << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << H - B
       << "\" text-anchor=\"end\" font-size=\"11\">" << ymin << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << T + 10
       << "\" text-anchor=\"end\" font-size=\"11\">" << ymax << "</text>\n";
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel << "</text>\n";
    os << "<text x=\"16\" y=\"" << (T + H - B) / 2
       << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
       << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";

    os.precision(8);
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = palette[si % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.3\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(series[si].y[i])) continue;
            os << px(x[i]) << ',' << py(series[si].y[i]) << ' ';
        }
        os << "\"/>\n";
        const int ly = T + 16 + static_cast<int>(si) * 16;
        os << "<line x1=\"" << W - R - 110 << "\" y1=\"" << ly << "\" x2=\"" << W - R - 90
           << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - R - 84 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
           << series[si].label << "</text>\n";
    }
    os << "</svg>\n";

    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << os.str();
    if (!f.good()) throw IoError("write failed: " + path);
}

} // namespace flexarm
