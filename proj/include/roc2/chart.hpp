#pragma once

#include <string>

#include "roc2/sseq.hpp"

namespace roc2 {

/* Adams-convention chart: a class of bidegree (V, s) is drawn in column
 * stem(V) = a + b and row s; a d_r arrow moves one column left and r rows up.
 * Rendering is deterministic: equal spec and page give identical bytes. */
struct ChartSpec {
    long long stem_min = 0, stem_max = 0;
    long long s_min = 0, s_max = 0;
    enum class Mode { IntegerStems, RhoBand } mode = Mode::IntegerStems;
    bool arrows = true;
    int arrow_r = 3;       // differential length drawn when arrows are on
    std::string title;
};

std::string render_chart(const ChartSpec& spec, const Page& page);

/* Chart of slice data given as (stem, s) -> counts; reuses the same grid. */
struct SliceChartCell {
    long long stem = 0, s = 0;
    long long boxes = 0;  // Z[1/3]-type entries
    long long dots = 0;   // Z/2-type entries
};
std::string render_slice_chart(const ChartSpec& spec, const std::vector<SliceChartCell>& cells);

}  // namespace roc2
