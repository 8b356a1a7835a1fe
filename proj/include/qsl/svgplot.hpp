#pragma once

#include <string>
#include <vector>

namespace qsl {

struct SvgSeries {
    std::string label;
    std::string color;  // CSS color
    std::vector<double> x, y;
};

struct SvgAxes {
    std::string title, xlabel, ylabel;
    bool log_x = false;
    bool log_y = false;
};

// Self-contained static SVG line plot; convenience layer only, the CSV files
// are authoritative.
void write_svg_plot(const std::string& path, const SvgAxes& axes,
                    const std::vector<SvgSeries>& series);

} // namespace qsl
