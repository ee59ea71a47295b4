#include "stroketext/evalmetrics.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "stroketext/utf8.hpp"

namespace stroketext {

namespace {

struct Pair {
    double iou;
    int det;
    int gt;
};

// All pairs at or above the threshold, best IoU first; index order breaks ties
// so the result is independent of floating point quirks in the sort.
std::vector<Pair> candidate_pairs(const std::vector<WordBox>& dets,
                                  const std::vector<GroundTruthWord>& gts, double iou_thr) {
    std::vector<Pair> pairs;
    for (size_t d = 0; d < dets.size(); ++d)
        for (size_t g = 0; g < gts.size(); ++g) {
            double iou = box_iou(dets[d].x, dets[d].y, dets[d].w, dets[d].h, gts[g].x, gts[g].y,
                                 gts[g].w, gts[g].h);
            if (iou >= iou_thr) pairs.push_back({iou, int(d), int(g)});
        }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        return std::tie(a.det, a.gt) < std::tie(b.det, b.gt);
    });
    return pairs;
}

// det_match[d] = matched gt index or -1.
std::vector<int> greedy_match(const std::vector<WordBox>& dets,
                              const std::vector<GroundTruthWord>& gts, double iou_thr) {
    std::vector<int> det_match(dets.size(), -1), gt_match(gts.size(), -1);
    for (const Pair& p : candidate_pairs(dets, gts, iou_thr)) {
        if (det_match[size_t(p.det)] != -1 || gt_match[size_t(p.gt)] != -1) continue;
        det_match[size_t(p.det)] = p.gt;
        gt_match[size_t(p.gt)] = p.det;
    }
    return det_match;
}

bool overlaps_any(const WordBox& d, const std::vector<GroundTruthWord>& gts) {
    for (const GroundTruthWord& g : gts)
        if (box_iou(d.x, d.y, d.w, d.h, g.x, g.y, g.w, g.h) > 0.0) return true;
    return false;
}

}  // namespace

LocalizationScore match_localization(const std::vector<WordBox>& dets,
                                     const std::vector<GroundTruthWord>& gts, double iou_thr) {
    if (!(iou_thr > 0.0 && iou_thr < 1.0))
        throw std::invalid_argument("match_localization: iou_thr outside (0,1)");

    std::vector<int> det_match = greedy_match(dets, gts, iou_thr);

    LocalizationScore score;
    for (const GroundTruthWord& g : gts) score.gt_counted += g.ignore ? 0 : 1;
    for (size_t d = 0; d < dets.size(); ++d) {
        int g = det_match[d];
        if (g >= 0 && gts[size_t(g)].ignore) continue;  // neither counts nor penalizes
        ++score.det_counted;
        if (g >= 0) ++score.matches;
    }
    score.recall = score.gt_counted > 0 ? double(score.matches) / score.gt_counted : 1.0;
    score.precision = score.det_counted > 0 ? double(score.matches) / score.det_counted
                                            : (score.gt_counted == 0 ? 1.0 : 0.0);
    score.f = (score.recall > 0.0 && score.precision > 0.0)
                  ? 2.0 * score.recall * score.precision / (score.recall + score.precision)
                  : 0.0;
    return score;
}

EndToEndScore match_end_to_end(const std::vector<WordBox>& dets,
                               const std::vector<GroundTruthWord>& gts) {
    std::vector<GroundTruthWord> counted;
    for (const GroundTruthWord& g : gts)
        if (!g.ignore) counted.push_back(g);

    EndToEndScore score;
    score.total_gt = int(counted.size());
    std::vector<int> det_match = greedy_match(dets, counted, 0.5);
    for (size_t d = 0; d < dets.size(); ++d) {
        int g = det_match[d];
        if (g >= 0 && dets[d].text == counted[size_t(g)].transcription) ++score.correct;
        if (!overlaps_any(dets[d], gts)) ++score.hallucinated;
    }
    score.accuracy = score.total_gt > 0 ? double(score.correct) / score.total_gt : 1.0;
    return score;
}

std::vector<GroundTruthWord> load_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_ground_truth: cannot open " + path);
    std::vector<GroundTruthWord> gts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        GroundTruthWord g;
        size_t pos = 0;
        int* fields[4] = {&g.x, &g.y, &g.w, &g.h};
        bool ok = true;
        for (int f = 0; f < 4 && ok; ++f) {
            size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                ok = false;
                break;
            }
            try {
                size_t used = 0;
                *fields[f] = std::stoi(line.substr(pos, comma - pos), &used);
            } catch (const std::exception&) {
                ok = false;
            }
            pos = comma + 1;
        }
        size_t open = ok ? line.find('"', pos) : std::string::npos;
        size_t close = open == std::string::npos ? std::string::npos : line.rfind('"');
        if (!ok || open == std::string::npos || close <= open)
            throw std::runtime_error("load_ground_truth: malformed line " +
                                     std::to_string(lineno) + " in " + path);
        std::string text = line.substr(open + 1, close - open - 1);
        if (text == "###")
            g.ignore = true;
        else
            g.transcription = decode_utf8(text);
        gts.push_back(std::move(g));
    }
    return gts;
}

void save_ground_truth(const std::vector<GroundTruthWord>& gts, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_ground_truth: cannot open " + path);
    for (const GroundTruthWord& g : gts) {
        out << g.x << ',' << g.y << ',' << g.w << ',' << g.h << ",\""
            << (g.ignore ? std::string("###") : encode_utf8(g.transcription)) << "\"\n";
    }
}

}  // namespace stroketext
