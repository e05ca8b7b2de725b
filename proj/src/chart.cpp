#include "roc2/chart.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace roc2 {

namespace {

constexpr long long kCell = 28;   // grid pitch in user units
constexpr long long kMargin = 46;

struct Grid {
    long long stem_min, stem_max, s_min, s_max;
    long long width() const { return (stem_max - stem_min + 1) * kCell + 2 * kMargin; }
    long long height() const { return (s_max - s_min + 1) * kCell + 2 * kMargin; }
    long long x(long long stem) const { return kMargin + (stem - stem_min) * kCell + kCell / 2; }
    long long y(long long s) const { return height() - kMargin - (s - s_min) * kCell - kCell / 2; }
};

void grid_header(std::ostringstream& os, const Grid& g, const std::string& title)
{
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g.width() << "\" height=\""
       << g.height() << "\" viewBox=\"0 0 " << g.width() << " " << g.height() << "\">\n";
    os << "<rect width=\"" << g.width() << "\" height=\"" << g.height()
       << "\" fill=\"white\"/>\n";
    if (!title.empty())
        os << "<text x=\"" << kMargin << "\" y=\"24\" font-size=\"14\" "
           << "font-family=\"monospace\">" << title << "</text>\n";
    // grid lines
    for (long long stem = g.stem_min; stem <= g.stem_max + 1; ++stem) {
        long long x = kMargin + (stem - g.stem_min) * kCell;
        os << "<line x1=\"" << x << "\" y1=\"" << kMargin << "\" x2=\"" << x << "\" y2=\""
           << g.height() - kMargin << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    }
    for (long long s = g.s_min; s <= g.s_max + 1; ++s) {
        long long y = g.height() - kMargin - (s - g.s_min) * kCell;
        os << "<line x1=\"" << kMargin << "\" y1=\"" << y << "\" x2=\"" << g.width() - kMargin
           << "\" y2=\"" << y << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    }
    // axis labels every 4 columns/rows
    for (long long stem = g.stem_min; stem <= g.stem_max; ++stem)
        if (stem % 4 == 0)
            os << "<text x=\"" << g.x(stem) << "\" y=\"" << g.height() - kMargin / 3
               << "\" font-size=\"10\" font-family=\"monospace\" text-anchor=\"middle\">" << stem
               << "</text>\n";
    for (long long s = g.s_min; s <= g.s_max; ++s)
        if (s % 4 == 0)
            os << "<text x=\"" << kMargin / 3 << "\" y=\"" << g.y(s) + 3
               << "\" font-size=\"10\" font-family=\"monospace\" text-anchor=\"middle\">" << s
               << "</text>\n";
}

}  // namespace

std::string render_chart(const ChartSpec& spec, const Page& page)
{
    if (spec.stem_min < page.enum_window.a_min + page.enum_window.b_min ||
        spec.s_max > page.enum_window.s_max)
        throw std::invalid_argument("chart range exceeds the computed window");
    Grid g{spec.stem_min, spec.stem_max, spec.s_min, spec.s_max};
    std::ostringstream os;
    grid_header(os, g, spec.title);

    // collect classes per spot
    struct Spot {
        long long free_count = 0, torsion_count = 0;
        std::vector<std::string> labels;
    };
    std::map<std::pair<long long, long long>, Spot> spots;
    for (const auto& [key, piece] : page.pieces) {
        long long stem = spec.mode == ChartSpec::Mode::IntegerStems
                             ? key.a + key.b
                             : (key.a == key.b ? key.a : (long long)1 << 60);
        if (stem < spec.stem_min || stem > spec.stem_max || key.s < spec.s_min ||
            key.s > spec.s_max)
            continue;
        auto& spot = spots[{stem, key.s}];
        for (size_t i = 0; i < piece.class_reps.size(); ++i) {
            if (piece.class_orders[i] == 0)
                ++spot.free_count;
            else
                ++spot.torsion_count;
            if (spot.labels.size() < 3)
                spot.labels.push_back(page.class_label(key, i));
        }
    }

    for (const auto& [pos, spot] : spots) {
        long long cx = g.x(pos.first), cy = g.y(pos.second);
        long long total = spot.free_count + spot.torsion_count;
        if (total == 0)
            continue;
        if (total > 3) {
            os << "<circle cx=\"" << cx << "\" cy=\"" << cy
               << "\" r=\"8\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
            os << "<text x=\"" << cx << "\" y=\"" << cy + 3
               << "\" font-size=\"9\" font-family=\"monospace\" text-anchor=\"middle\">" << total
               << "</text>\n";
        }
        else {
            // boxes for free classes, dots for torsion
            long long drawn = 0;
            for (long long i = 0; i < spot.free_count; ++i, ++drawn) {
                long long off = (long long)(drawn * 8) - (total - 1) * 4;
                os << "<rect x=\"" << cx + off - 3 << "\" y=\"" << cy - 3
                   << "\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"black\" "
                      "stroke-width=\"1\"/>\n";
            }
            for (long long i = 0; i < spot.torsion_count; ++i, ++drawn) {
                long long off = (long long)(drawn * 8) - (total - 1) * 4;
                os << "<circle cx=\"" << cx + off << "\" cy=\"" << cy
                   << "\" r=\"2.5\" fill=\"black\"/>\n";
            }
        }
    }

    if (spec.arrows) {
        for (const auto& [pos, spot] : spots) {
            auto tgt = spots.find({pos.first - 1, pos.second + spec.arrow_r});
            if (tgt == spots.end())
                continue;
            os << "<line x1=\"" << g.x(pos.first) << "\" y1=\"" << g.y(pos.second) - 4
               << "\" x2=\"" << g.x(pos.first - 1) << "\" y2=\""
               << g.y(pos.second + spec.arrow_r) + 4
               << "\" stroke=\"#666666\" stroke-width=\"1\"/>\n";
        }
    }

    // legend with the first labels, deterministic order
    long long ly = 36;
    for (const auto& [pos, spot] : spots) {
        if (spot.labels.empty() || ly > g.height() - kMargin)
            continue;
        if (pos.second != 1 && pos.second != 3)
            continue;  // keep the legend short: name the low-filtration classes
        os << "<text x=\"" << g.width() - kMargin * 5 << "\" y=\"" << ly
           << "\" font-size=\"9\" font-family=\"monospace\">(" << pos.first << "," << pos.second
           << ") " << spot.labels.front() << "</text>\n";
        ly += 12;
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_slice_chart(const ChartSpec& spec, const std::vector<SliceChartCell>& cells)
{
    Grid g{spec.stem_min, spec.stem_max, spec.s_min, spec.s_max};
    std::ostringstream os;
    grid_header(os, g, spec.title);
    std::map<std::pair<long long, long long>, std::pair<long long, long long>> spots;
    for (const auto& c : cells) {
        if (c.stem < spec.stem_min || c.stem > spec.stem_max || c.s < spec.s_min ||
            c.s > spec.s_max)
            continue;
        auto& s = spots[{c.stem, c.s}];
        s.first += c.boxes;
        s.second += c.dots;
    }
    for (const auto& [pos, counts] : spots) {
        long long cx = g.x(pos.first), cy = g.y(pos.second);
        auto [boxes, dots] = counts;
        if (boxes + dots == 0)
            continue;
        if (boxes > 0) {
            os << "<rect x=\"" << cx - 4 << "\" y=\"" << cy - 4
               << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"black\" "
                  "stroke-width=\"1\"/>\n";
            if (boxes > 1)
                os << "<text x=\"" << cx << "\" y=\"" << cy + 3
                   << "\" font-size=\"8\" font-family=\"monospace\" text-anchor=\"middle\">"
                   << boxes << "</text>\n";
        }
        if (dots > 0) {
            if (dots == 1)
                os << "<circle cx=\"" << cx + (boxes ? 8 : 0) << "\" cy=\"" << cy
                   << "\" r=\"2.5\" fill=\"black\"/>\n";
            else
                os << "<text x=\"" << cx + (boxes ? 10 : 0) << "\" y=\"" << cy + 3
                   << "\" font-size=\"9\" font-family=\"monospace\" text-anchor=\"middle\">"
                   << dots << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace roc2
