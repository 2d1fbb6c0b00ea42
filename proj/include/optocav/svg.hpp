// svg.hpp — deterministic self-contained SVG line charts from CSV columns

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "optocav/csv.hpp"

namespace optocav::svg {

namespace detail {

inline constexpr double kWidth = 800.0;
inline constexpr double kHeight = 500.0;
inline constexpr double kLeft = 80.0;
inline constexpr double kRight = 20.0;
inline constexpr double kTop = 30.0;
inline constexpr double kBottom = 50.0;

inline constexpr std::array<const char*, 8> kPalette{
    "#000000", "#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#7f8c8d", "#b7950b"};

inline std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string label(double v) {
    if (std::abs(v) < 1e-12) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void widen_if_flat() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        } else if (hi - lo <= 0.0) {
            const double pad = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
            lo -= pad;
            hi += pad;
        }
    }
};

// Tick positions at 1/2/5·10^k spacing covering the range.
inline std::vector<double> nice_ticks(Range& r, int target = 6) {
    const double raw = (r.hi - r.lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    r.lo = std::floor(r.lo / step) * step;
    r.hi = std::ceil(r.hi / step) * step;
    std::vector<double> ticks;
    const auto count = static_cast<long>(std::llround((r.hi - r.lo) / step));
    for (long i = 0; i <= count; ++i) ticks.push_back(r.lo + static_cast<double>(i) * step);
    return ticks;
}

} // namespace detail

/// Renders `columns` against the first CSV column. Empty cells are skipped.
inline std::string render_svg(const csv::Table& table, const std::vector<std::string>& columns) {
    using namespace detail;
    if (table.header.empty()) throw csv::MalformedCSV("CSV has no columns");
    if (columns.empty()) throw csv::MissingColumn("(none requested)");
    std::vector<std::size_t> idx;
    for (const auto& c : columns) idx.push_back(table.column_index(c));

    Range xr;
    Range yr;
    for (const auto& row : table.rows) {
        if (!row[0]) continue;
        xr.add(*row[0]);
        for (auto i : idx)
            if (row[i]) yr.add(*row[i]);
    }
    xr.widen_if_flat();
    yr.widen_if_flat();
    const auto xticks = nice_ticks(xr);
    const auto yticks = nice_ticks(yr);

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"500\" "
          "viewBox=\"0 0 800 500\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n"
       << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">\n";

    for (double t : xticks) {
        const auto x = fixed(px(t));
        os << "<line x1=\"" << x << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << x << "\" y2=\""
           << fixed(kTop + ph) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
           << "<text x=\"" << x << "\" y=\"" << fixed(kTop + ph + 18) << "\" text-anchor=\"middle\">"
           << label(t) << "</text>\n";
    }
    for (double t : yticks) {
        const auto y = fixed(py(t));
        os << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << y << "\" x2=\"" << fixed(kLeft + pw)
           << "\" y2=\"" << y << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
           << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(py(t) + 4) << "\" text-anchor=\"end\">"
           << label(t) << "</text>\n";
    }
    os << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw)
       << "\" height=\"" << fixed(ph) << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n"
       << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 10)
       << "\" text-anchor=\"middle\">" << xml_escape(table.header[0]) << "</text>\n"
       << "</g>\n";

    for (std::size_t k = 0; k < idx.size(); ++k) {
        os << "<polyline fill=\"none\" stroke=\"" << kPalette[k % kPalette.size()]
           << "\" stroke-width=\"1.2\" points=\"";
        bool first = true;
        for (const auto& row : table.rows) {
            if (!row[0] || !row[idx[k]]) continue;
            if (!first) os << ' ';
            os << fixed(px(*row[0])) << ',' << fixed(py(*row[idx[k]]));
            first = false;
        }
        os << "\"/>\n";
    }

    os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const double y = kTop + 16.0 + 16.0 * static_cast<double>(k);
        const double x = kLeft + pw - 150.0;
        os << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(y - 4) << "\" x2=\"" << fixed(x + 24)
           << "\" y2=\"" << fixed(y - 4) << "\" stroke=\"" << kPalette[k % kPalette.size()]
           << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << fixed(x + 30) << "\" y=\"" << fixed(y) << "\">" << xml_escape(columns[k])
           << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace optocav::svg
