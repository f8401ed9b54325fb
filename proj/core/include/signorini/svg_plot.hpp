#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "signorini/adapt.hpp"

namespace signorini {

struct PlotSeries {
    std::string label;
    std::vector<ConvergenceRecord> records;
    std::string color;  // empty picks a default per series index
};

struct PlotSpec {
    std::vector<double> guide_slopes = {-0.75, -1.0};
    int width = 720;
    int height = 540;
    int fit_tail = 4;  // records used for the slopes printed in the legend
};

/// Self-contained log-log SVG of eta+S against N: one polyline per series,
/// dashed guide lines at the reference slopes, and a legend box with the
/// fitted slope of each series. Throws std::invalid_argument for fewer than
/// two records per series or nonpositive data.
void write_convergence_plot(std::ostream& out, std::span<const PlotSeries> series,
                            const PlotSpec& spec = {});

}  // namespace signorini
