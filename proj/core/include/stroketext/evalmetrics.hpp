#pragma once

#include <string>
#include <vector>

#include "stroketext/recognize.hpp"

namespace stroketext {

struct GroundTruthWord {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
    std::u32string transcription;
    bool ignore = false;
};

struct LocalizationScore {
    double recall = 0.0;
    double precision = 0.0;
    double f = 0.0;
    int matches = 0;
    int gt_counted = 0;
    int det_counted = 0;
};

struct EndToEndScore {
    int correct = 0;
    int total_gt = 0;
    int hallucinated = 0;
    double accuracy = 0.0;
};

// One-to-one greedy matching by descending IoU. Pairs under iou_thr stay
// unmatched. Detections landing on ignore-flagged ground truth are dropped
// from the precision denominator; ignored entries never count as targets.
LocalizationScore match_localization(const std::vector<WordBox>& dets,
                                     const std::vector<GroundTruthWord>& gts,
                                     double iou_thr = 0.5);

// A detection is correct when it IoU-matches a counted ground-truth word at
// >= 0.5 and the text is identical, case sensitively. Hallucinated counts
// detections whose box overlaps no ground truth at all, ignored included.
EndToEndScore match_end_to_end(const std::vector<WordBox>& dets,
                               const std::vector<GroundTruthWord>& gts);

// Lines of the form x,y,w,h,"transcription"; the transcription ### flags an
// entry to be ignored. Blank lines are skipped.
std::vector<GroundTruthWord> load_ground_truth(const std::string& path);
void save_ground_truth(const std::vector<GroundTruthWord>& gts, const std::string& path);

}  // namespace stroketext
