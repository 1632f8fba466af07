#include "gpslab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gpslab {

namespace {

constexpr int kWidth = 860;
constexpr int kChartHeight = 340;
constexpr int kMarginLeft = 72;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 34;
constexpr int kMarginBottom = 42;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render_svg(const std::vector<SvgChart>& charts) {
    const int total_h = kChartHeight * static_cast<int>(charts.size());
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << total_h << "\" viewBox=\"0 0 " << kWidth << ' ' << total_h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (size_t ci = 0; ci < charts.size(); ++ci) {
        const SvgChart& chart = charts[ci];
        const double top = static_cast<double>(kChartHeight * static_cast<int>(ci));
        const double x0 = kMarginLeft;
        const double x1 = kWidth - kMarginRight;
        const double y0 = top + kChartHeight - kMarginBottom;
        const double y1 = top + kMarginTop;

        double lo = 0.0, hi = 1.0;
        size_t npoints = 0;
        bool first = true;
        for (const auto& s : chart.series) {
            npoints = std::max(npoints, s.values.size());
            for (double v : s.values) {
                if (first) {
                    lo = hi = v;
                    first = false;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
        }
        if (hi <= lo) hi = lo + 1.0;

        out << "<text x=\"" << kMarginLeft << "\" y=\"" << top + 20
            << "\" font-family=\"sans-serif\" font-size=\"14\">" << chart.title
            << "</text>\n";
        // axes
        out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
            << "\" stroke=\"#333\"/>\n";
        out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
            << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(lo)
            << "</text>\n";
        out << "<text x=\"" << x0 - 6 << "\" y=\"" << y1 + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(hi)
            << "</text>\n";
        out << "<text x=\"" << x1 << "\" y=\"" << y0 + 16
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">step "
            << (npoints == 0 ? 0 : npoints - 1) << "</text>\n";
        out << "<text x=\"" << x0 << "\" y=\"" << y0 + 16
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << chart.y_label
            << "</text>\n";

        for (size_t si = 0; si < chart.series.size(); ++si) {
            const auto& s = chart.series[si];
            const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
            if (s.values.size() >= 2) {
                out << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.5\" points=\"";
                const double denom = static_cast<double>(s.values.size() - 1);
                for (size_t i = 0; i < s.values.size(); ++i) {
                    const double px = x0 + (x1 - x0) * static_cast<double>(i) / denom;
                    const double py = y0 - (y0 - y1) * (s.values[i] - lo) / (hi - lo);
                    char buf[48];
                    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px, py);
                    out << buf;
                }
                out << "\"/>\n";
            }
            // legend entry
            const double ly = y1 + 14.0 * static_cast<double>(si);
            out << "<rect x=\"" << x1 - 150 << "\" y=\"" << ly - 9
                << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
            out << "<text x=\"" << x1 - 136 << "\" y=\"" << ly
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name
                << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace gpslab
