#pragma once

#include <string>
#include <vector>

namespace jsccplan::experiments::detail {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  ///< NaN-free, x ascending
};

/// Minimal deterministic line chart: fixed canvas, linear axes, five-color
/// palette, legend on the right. No timestamps or external resources, so the
/// byte stream depends only on the inputs.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<SvgSeries>& series);

}  // namespace jsccplan::experiments::detail
