#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace slitwave::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb4";
    bool markers = false;
};

// Minimal static line plot: axes box, tick labels, polylines. Enough for
// profile and scan figures without an external plotting dependency.
inline void write_plot(std::ostream& out, const std::vector<Series>& series,
                       const std::string& x_label, const std::string& y_label,
                       bool log_x = false, bool log_y = false) {
    constexpr double width = 720, height = 480;
    constexpr double ml = 70, mr = 20, mt = 20, mb = 50;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double xv = log_x ? std::log10(s.x[i]) : s.x[i];
            const double yv = log_y ? std::log10(std::max(s.y[i], 1e-300)) : s.y[i];
            xmin = std::min(xmin, xv); xmax = std::max(xmax, xv);
            ymin = std::min(ymin, yv); ymax = std::max(ymax, yv);
        }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    const double yspan = ymax - ymin;
    ymin -= 0.05 * yspan;
    ymax += 0.05 * yspan;

    auto px = [&](double v) {
        const double t = ((log_x ? std::log10(v) : v) - xmin) / (xmax - xmin);
        return ml + t * (width - ml - mr);
    };
    auto py = [&](double v) {
        const double t = ((log_y ? std::log10(std::max(v, 1e-300)) : v) - ymin) / (ymax - ymin);
        return height - mb - t * (height - mb - mt);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
        << "\" height=\"" << height - mt - mb << "\" fill=\"none\" stroke=\"#333\"/>\n";

    auto tick_text = [&](double v, bool is_log) {
        std::ostringstream os;
        os.precision(4);
        os << (is_log ? std::pow(10.0, v) : v);
        return os.str();
    };
    for (int i = 0; i <= 5; ++i) {
        const double tx = xmin + (xmax - xmin) * i / 5.0;
        const double ty = ymin + (ymax - ymin) * i / 5.0;
        const double sx = ml + (width - ml - mr) * i / 5.0;
        const double sy = height - mb - (height - mb - mt) * i / 5.0;
        out << "<text x=\"" << sx << "\" y=\"" << height - mb + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_text(tx, log_x) << "</text>\n"
            << "<text x=\"" << ml - 6 << "\" y=\"" << sy + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << tick_text(ty, log_y) << "</text>\n";
    }
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
        << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n"
        << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (mt + height - mb) / 2 << ")\">" << y_label << "</text>\n";

    for (const auto& s : series) {
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i)
                out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
                    << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                out << px(s.x[i]) << "," << py(s.y[i]) << " ";
            out << "\"/>\n";
        }
    }
    out << "</svg>\n";
}

}  // namespace slitwave::svg
