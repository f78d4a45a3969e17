#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "slitwave/analysis.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/profile.hpp"
#include "slitwave/scan.hpp"

namespace slitwave::csv {

namespace detail {

inline std::string format(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline std::vector<double> parse_row(const std::string& line, const std::string& path,
                                     std::size_t lineno) {
    std::vector<double> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
        auto end = line.find(',', start);
        if (end == std::string::npos) end = line.size();
        std::string cell = line.substr(start, end - start);
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cell = b == std::string::npos ? std::string() : cell.substr(b, e - b + 1);
        if (!cell.empty()) {
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw ParseError(path + ":" + std::to_string(lineno) + ": malformed number '" +
                                 cell + "'");
            fields.push_back(value);
        }
        start = end + 1;
    }
    return fields;
}

}  // namespace detail

inline void write_profile(std::ostream& out, const Profile& profile, const std::string& header) {
    out << header << "x_um,intensity\n";
    for (std::size_t i = 0; i < profile.size(); ++i)
        out << detail::format(profile.x(i) * 1e6) << "," << detail::format(profile.intensity[i])
            << "\n";
}

inline void write_scan(std::ostream& out, const std::vector<ScanRow>& rows,
                       const std::string& header) {
    out << header
        << "dx_um,fwhm_wave_um,fwhm_classical_um,fwhm_wave_detected_um,"
           "fwhm_classical_detected_um,error\n";
    for (const auto& r : rows) {
        out << detail::format(r.slit_width * 1e6) << ",";
        if (r.error.empty()) {
            out << detail::format(r.fwhm_wave * 1e6) << ","
                << detail::format(r.fwhm_classical * 1e6) << ","
                << detail::format(r.fwhm_wave_detected * 1e6) << ","
                << detail::format(r.fwhm_classical_detected * 1e6) << ",";
        } else {
            std::string msg = r.error;
            for (char& c : msg)
                if (c == ',' || c == '\n') c = ';';
            out << ",,,," << msg;
        }
        out << "\n";
    }
}

inline void write_uncertainty(std::ostream& out, const std::vector<UncertaintyPoint>& points,
                              const std::string& header) {
    out << header << "dx_um,dx_err_um,dp_SI,dp_err_SI,product_over_h,flag\n";
    for (const auto& p : points) {
        out << detail::format(p.slit_width * 1e6) << "," << detail::format(p.slit_width_err * 1e6)
            << ",";
        if (p.flag == RegimeFlag::ok || p.flag == RegimeFlag::near_field ||
            p.flag == RegimeFlag::classical_dominated)
            out << detail::format(p.dp) << "," << detail::format(p.dp_err) << ","
                << detail::format(p.product_over_h) << ",";
        else
            out << ",,,";
        out << to_string(p.flag) << "\n";
    }
}

// Two-column numeric CSV (x in um, intensity), '#' comments skipped, strictly
// increasing x required; resampled onto a uniform grid by linear interpolation.
inline Profile read_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<double> xs, ys;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (!std::isdigit(static_cast<unsigned char>(line[first])) && line[first] != '-' &&
            line[first] != '+' && line[first] != '.')
            continue;  // column-name row
        auto fields = detail::parse_row(line, path, lineno);
        if (fields.empty()) continue;
        if (fields.size() != 2)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected two columns");
        if (!xs.empty() && fields[0] <= xs.back())
            throw ParseError(path + ":" + std::to_string(lineno) + ": x values must be strictly increasing");
        xs.push_back(fields[0]);
        ys.push_back(fields[1]);
    }
    if (xs.size() < 8) throw ParseError(path + ": need at least 8 data rows");

    const std::size_t n = xs.size();
    const double x0 = xs.front() * 1e-6;
    const double pitch = (xs.back() - xs.front()) * 1e-6 / static_cast<double>(n - 1);
    std::vector<double> values(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (x0 + pitch * static_cast<double>(i)) * 1e6;
        while (seg + 2 < n && xs[seg + 1] <= x) ++seg;
        const double t = (x - xs[seg]) / (xs[seg + 1] - xs[seg]);
        values[i] = ys[seg] + std::clamp(t, 0.0, 1.0) * (ys[seg + 1] - ys[seg]);
    }
    return Profile(x0, pitch, std::move(values));
}

// Width-scan CSV for the analysis pipeline: columns dx_um, fwhm_detected_um
// [, fwhm_err_um]; '#' comments skipped.
inline std::vector<MeasuredWidth> read_measured_widths(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<MeasuredWidth> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto first = line.find_first_not_of(" \t");
        if (first != std::string::npos && !std::isdigit(static_cast<unsigned char>(line[first])) &&
            line[first] != '-' && line[first] != '+' && line[first] != '.')
            continue;  // column-name row
        auto fields = detail::parse_row(line, path, lineno);
        if (fields.empty()) continue;
        if (fields.size() < 2 || fields.size() > 3)
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected dx_um, fwhm_um [, fwhm_err_um]");
        MeasuredWidth row{fields[0] * 1e-6, fields[1] * 1e-6,
                          fields.size() == 3 ? fields[2] * 1e-6 : 0.0};
        rows.push_back(row);
    }
    return rows;
}

}  // namespace slitwave::csv
