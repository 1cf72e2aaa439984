#include "internal/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "codim1/errors.hpp"

namespace codim1::detail {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void LinePlot::write(const std::string& path) const {
    const double width = 640, height = 420;
    const double ml = 70, mr = 20, mt = 36, mb = 52;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    const double ypad = 0.06 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) {
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

    // Axes box and ticks.
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
        << "\" height=\"" << height - mt - mb
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = xmin + (xmax - xmin) * i / 5.0;
        const double y = ymin + (ymax - ymin) * i / 5.0;
        out << "<line x1=\"" << px(x) << "\" y1=\"" << height - mb << "\" x2=\"" << px(x)
            << "\" y2=\"" << height - mb + 5 << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << px(x) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(x) << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << ml
            << "\" y2=\"" << py(y) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(y) << "</text>\n";
    }
    out << "<text x=\"" << ml + (width - ml - mr) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << mt + (height - mt - mb) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << mt + (height - mt - mb) / 2 << ")\">" << ylabel
        << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        const char* color = kColors[s % 7];
        if (ser.x.size() >= 2) {
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < ser.x.size(); ++i) {
                out << fmt(px(ser.x[i])) << "," << fmt(py(ser.y[i])) << " ";
            }
            out << "\"/>\n";
        }
        if (ser.markers) {
            for (std::size_t i = 0; i < ser.x.size(); ++i) {
                out << "<circle cx=\"" << fmt(px(ser.x[i])) << "\" cy=\"" << fmt(py(ser.y[i]))
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            }
        }
        out << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 16 + 16 * s
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
            << color << "\">" << ser.name << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace codim1::detail
