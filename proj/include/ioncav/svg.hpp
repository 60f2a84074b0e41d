// svg.hpp — standalone SVG rendering of result tables: line plot for 1-axis
// sweeps, heatmap for spectrum maps.  Output is a pure function of the table
// (fixed formatting, no timestamps), so regeneration is byte-identical.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ioncav/error.hpp"
#include "ioncav/sweep.hpp"

namespace ioncav {

namespace detail {

inline std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string heat_color(double t) {
    // dark blue -> cyan -> yellow ramp
    t = std::clamp(t, 0.0, 1.0);
    const auto lerp = [](double a, double b, double u) { return a + (b - a) * u; };
    double r, g, b;
    if (t < 0.5) {
        const double u = t / 0.5;
        r = lerp(13, 32, u); g = lerp(8, 178, u); b = lerp(135, 170, u);
    } else {
        const double u = (t - 0.5) / 0.5;
        r = lerp(32, 250, u); g = lerp(178, 233, u); b = lerp(170, 60, u);
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(r), int(g), int(b));
    return buf;
}

inline const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % 8];
}

}  // namespace detail

/// `kind` picks the rendering: spectrum tables become heatmaps (rows x
/// omega-columns), everything else a line plot of each numeric column
/// against the first column.
inline std::string emit_plot(const ResultTable& table, SweepKind kind) {
    if (table.rows.empty() || table.columns.empty())
        throw Error(errc::invalid_argument, "emit_plot: empty table");

    const int width = 720, height = 480;
    const int ml = 70, mr = 20, mt = 20, mb = 50;  // margins
    const double pw = width - ml - mr, ph = height - mt - mb;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    const auto cell_num = [](const Cell& c) -> double {
        if (const double* d = std::get_if<double>(&c)) return *d;
        return std::numeric_limits<double>::quiet_NaN();
    };

    if (kind == SweepKind::spectrum) {
        const std::size_t nrows = table.rows.size();
        const std::size_t ncols = table.columns.size() - 1;
        double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
        for (const auto& row : table.rows)
            for (std::size_t j = 1; j < row.size(); ++j) {
                const double v = cell_num(row[j]);
                if (std::isfinite(v)) { vmin = std::min(vmin, v); vmax = std::max(vmax, v); }
            }
        if (!std::isfinite(vmin)) { vmin = 0.0; vmax = 1.0; }
        if (vmax == vmin) vmax = vmin + 1.0;
        // cap the raster so dense maps stay a reasonable file size
        const std::size_t col_stride = std::max<std::size_t>(1, (ncols + 399) / 400);
        const std::size_t row_stride = std::max<std::size_t>(1, (nrows + 299) / 300);
        const std::size_t n_out_cols = (ncols + col_stride - 1) / col_stride;
        const std::size_t n_out_rows = (nrows + row_stride - 1) / row_stride;
        const double cw = pw / double(n_out_cols), ch = ph / double(n_out_rows);
        for (std::size_t oi = 0; oi < n_out_rows; ++oi) {
            const std::size_t i = oi * row_stride;
            // merge runs of equally colored cells within the row
            std::size_t run_start = 0;
            std::string run_color;
            const auto flush = [&](std::size_t end) {
                if (run_color.empty()) return;
                os << "<rect x=\"" << detail::fmt6(ml + run_start * cw) << "\" y=\""
                   << detail::fmt6(mt + (n_out_rows - 1 - oi) * ch) << "\" width=\""
                   << detail::fmt6((end - run_start) * cw + 0.5) << "\" height=\""
                   << detail::fmt6(ch + 0.5) << "\" fill=\"" << run_color << "\"/>\n";
            };
            for (std::size_t oj = 0; oj < n_out_cols; ++oj) {
                const std::size_t j = 1 + oj * col_stride;
                const double v =
                    j < table.rows[i].size() ? cell_num(table.rows[i][j])
                                             : std::numeric_limits<double>::quiet_NaN();
                const std::string color =
                    std::isfinite(v) ? detail::heat_color((v - vmin) / (vmax - vmin)) : "#cccccc";
                if (color != run_color) {
                    flush(oj);
                    run_start = oj;
                    run_color = color;
                }
            }
            flush(n_out_cols);
        }
        os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
           << "\" text-anchor=\"middle\" font-size=\"14\">omega_over_gamma</text>\n";
        os << "<text x=\"16\" y=\"" << height / 2
           << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 "
           << height / 2 << ")\">" << table.columns.front() << "</text>\n";
        // axis extents
        os << "<text x=\"" << ml << "\" y=\"" << height - 30
           << "\" font-size=\"12\">" << table.columns[1] << "</text>\n";
        os << "<text x=\"" << width - mr << "\" y=\"" << height - 30
           << "\" text-anchor=\"end\" font-size=\"12\">" << table.columns.back() << "</text>\n";
    } else {
        // numeric series vs first column
        std::vector<std::size_t> series;
        for (std::size_t j = 1; j < table.columns.size(); ++j) {
            bool numeric = false;
            for (const auto& row : table.rows)
                if (j < row.size() && std::holds_alternative<double>(row[j])) { numeric = true; break; }
            if (numeric) series.push_back(j);
        }
        if (series.empty())
            throw Error(errc::invalid_argument, "emit_plot: no numeric columns");

        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
        double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
        for (const auto& row : table.rows) {
            const double x = cell_num(row[0]);
            if (!std::isfinite(x)) continue;
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            for (std::size_t j : series) {
                const double y = j < row.size() ? cell_num(row[j]) : std::numeric_limits<double>::quiet_NaN();
                if (std::isfinite(y)) { ymin = std::min(ymin, y); ymax = std::max(ymax, y); }
            }
        }
        if (!std::isfinite(xmin) || !std::isfinite(ymin))
            throw Error(errc::invalid_argument, "emit_plot: no finite data");
        if (xmax == xmin) xmax = xmin + 1.0;
        if (ymax == ymin) ymax = ymin + 1.0;

        const auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
        const auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

        os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << detail::fmt6(pw)
           << "\" height=\"" << detail::fmt6(ph)
           << "\" fill=\"none\" stroke=\"#333333\"/>\n";
        for (std::size_t s = 0; s < series.size(); ++s) {
            const std::size_t j = series[s];
            std::string points;
            bool open = false;
            for (const auto& row : table.rows) {
                const double x = cell_num(row[0]);
                const double y = j < row.size() ? cell_num(row[j]) : std::numeric_limits<double>::quiet_NaN();
                if (std::isfinite(x) && std::isfinite(y)) {
                    points += detail::fmt6(X(x)) + "," + detail::fmt6(Y(y)) + " ";
                    open = true;
                } else if (open) {
                    os << "<polyline fill=\"none\" stroke=\"" << detail::series_color(s)
                       << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
                    points.clear();
                    open = false;
                }
            }
            if (open)
                os << "<polyline fill=\"none\" stroke=\"" << detail::series_color(s)
                   << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
            os << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 18 + 16 * int(s)
               << "\" font-size=\"12\" fill=\"" << detail::series_color(s) << "\">"
               << table.columns[j] << "</text>\n";
        }
        os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
           << "\" text-anchor=\"middle\" font-size=\"14\">" << table.columns.front()
           << "</text>\n";
        os << "<text x=\"" << ml << "\" y=\"" << height - 30 << "\" font-size=\"12\">"
           << detail::fmt6(xmin) << "</text>\n";
        os << "<text x=\"" << width - mr << "\" y=\"" << height - 30
           << "\" text-anchor=\"end\" font-size=\"12\">" << detail::fmt6(xmax) << "</text>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 12
           << "\" text-anchor=\"end\" font-size=\"12\">" << detail::fmt6(ymax) << "</text>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + int(ph)
           << "\" text-anchor=\"end\" font-size=\"12\">" << detail::fmt6(ymin) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace ioncav
