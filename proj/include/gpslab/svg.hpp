#pragma once

#include <string>
#include <vector>

namespace gpslab {

struct SvgSeries {
    std::string name;
    std::vector<double> values;  // y values; x is the sample index
};

struct SvgChart {
    std::string title;
    std::string y_label;
    std::vector<SvgSeries> series;
};

// Render stacked line charts as a standalone SVG document (pure text, no
// external renderer). One polyline per series.
std::string render_svg(const std::vector<SvgChart>& charts);

}  // namespace gpslab
