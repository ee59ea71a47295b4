#pragma once

#include <string>
#include <vector>

#include "stroketext/atlas.hpp"
#include "stroketext/lm.hpp"
#include "stroketext/regions.hpp"

namespace stroketext {

struct CharHypothesis {
    Region region;
    char32_t label = 0;
    double cost = 0.0;  // -ln p from the glyph classifier
};

// Nodes sorted by x-interval; every edge goes to a strictly larger x, so
// topological order is the node order. Transition costs charge horizontal
// span the path leaves uncovered: an edge costs gap_penalty per median
// width of gap, and the virtual start/end edges charge the distance from
// the line extremes the same way. Without them a minimum-cost path over
// nonnegative node costs would simply skip as many characters as the edge
// rule allows.
struct RecognitionGraph {
    std::vector<CharHypothesis> nodes;
    std::vector<std::vector<int>> edges;
    std::vector<std::vector<double>> edge_cost;
    std::vector<uint8_t> from_start;
    std::vector<uint8_t> to_end;
    std::vector<double> start_cost;
    std::vector<double> end_cost;
    double median_width = 0.0;
};

// Aspect-ratio splitting for joined characters: regions wider than
// 1.2 * atlas_max_aspect (relative to their height) are cut at the sparsest
// column in the middle 60% of their width, recursively; every intermediate
// piece is kept as a hypothesis.
std::vector<Region> chop(const Region& region, double atlas_max_aspect);

// u precedes v when v starts at or after u's right edge minus 20% of u's
// width and the gap is at most 1.5 median widths. Start feeds nodes whose
// interval begins within 1.5 median widths of the leftmost node; end
// mirrors that on the right.
RecognitionGraph build_graph(std::vector<CharHypothesis> hypotheses,
                             double gap_penalty = 2.0);

struct PathResult {
    bool found = false;
    std::u32string text;
    double cost = 0.0;
    std::vector<int> nodes;
    // Per character: node cost + transition cost + lambda * language-model
    // cost. The end transition is folded into the last step.
    std::vector<double> step_costs;
};

// Minimum-cost start-to-end path; each step pays the node cost plus the
// incoming transition cost plus lambda * -ln p(c | prev two). Equal costs
// break toward the lexicographically smaller text.
PathResult best_path(const RecognitionGraph& g, const LanguageModel& lm, double lambda);

struct WordBox {
    int x = 0, y = 0, w = 0, h = 0;
    std::u32string text;
    double cost = 0.0;
};

// Splits the chosen path into words at gaps wider than half the median
// character width along the path. Word cost is the sum of its step costs.
std::vector<WordBox> split_words(const RecognitionGraph& g, const PathResult& path);

// Keeps words greedily by ascending cost, dropping any whose bbox IoU with
// an already-kept word reaches 0.5.
std::vector<WordBox> merge_scales(std::vector<WordBox> words);

double box_iou(int ax, int ay, int aw, int ah, int bx, int by, int bw, int bh);

}  // namespace stroketext
