#pragma once

#include <filesystem>
#include <vector>

#include "diknn/experiment.hpp"

namespace diknn {

// Line chart of summary means versus the sweep value, one polyline per
// (method, direction) with a translucent +/- one-stddev band.  No external
// plotting dependency; plain hand-written SVG.
void write_sweep_svg(const std::filesystem::path& path,
                     const std::vector<SummaryRow>& summary,
                     const std::string& title);

}  // namespace diknn
