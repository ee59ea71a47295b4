#pragma once

#include <cstdint>
#include <vector>

#include "stroketext/gmm.hpp"
#include "stroketext/image.hpp"
#include "stroketext/lines.hpp"
#include "stroketext/regions.hpp"

namespace stroketext {

enum class TriLabel : uint8_t {
    DefiniteForeground = 0,
    ProbableForeground = 1,
    Background = 2,
    Ignored = 3,
};

// Labels live on a rectangular roi; everything outside is hard background.
// `fg` is the binary side of each pixel: derived from the label for the
// first three states, remembered across cuts for Ignored pixels so the
// smoothness term stays well defined for them.
struct TriStateLabelMap {
    int x0 = 0;
    int y0 = 0;
    int w = 0;
    int h = 0;
    std::vector<TriLabel> labels;
    std::vector<uint8_t> fg;

    size_t idx(int lx, int ly) const { return static_cast<size_t>(ly) * w + lx; }
    TriLabel label(int lx, int ly) const { return labels[idx(lx, ly)]; }
    bool foreground(int lx, int ly) const { return fg[idx(lx, ly)] != 0; }
    void set(int lx, int ly, TriLabel l) {
        labels[idx(lx, ly)] = l;
        if (l != TriLabel::Ignored)
            fg[idx(lx, ly)] = (l == TriLabel::Background) ? 0 : 1;
    }

    bool operator==(const TriStateLabelMap&) const = default;
};

struct SegmentParams {
    int gmm_components = 5;
    double gamma_s = 50.0;
    int max_iterations = 10;
    // Components whose bottom strays from the line's bottom estimate by more
    // than this fraction of the line height get ignored.
    double band_fraction = 0.25;
    // GMM fits subsample their pixel sets beyond this size (fixed stride).
    size_t max_fit_pixels = 4000;
    uint64_t seed = 1;
};

// E = U + V. U sums -ln p(z | theta) over non-ignored roi pixels, foreground
// model for DF and PF, background model for B. V sums
// gamma_s * exp(-beta * ||z_m - z_n||^2) over 8-adjacent roi pairs whose
// binary sides differ; beta = 1 / (2 * mean adjacent squared color distance),
// or 0 when the roi is constant.
double gibbs_energy(const TriStateLabelMap& labels, const Gmm& fg_model, const Gmm& bg_model,
                    const ColorImage& img, double gamma_s);

// One graph-cut sweep under fixed models. DF pixels are clamped to the
// source with capacity 1 + their other incident capacity; PF and B get the
// soft terminal links; Ignored pixels keep their label but their side is
// re-decided by the cut. Returns the relabeled map (DF stays DF, soft pixels
// become PF or B by side).
TriStateLabelMap cut_labels(const ColorImage& img, const TriStateLabelMap& labels,
                            const Gmm& fg_model, const Gmm& bg_model, double gamma_s);

struct RefineResult {
    bool accepted = false;
    // 8-connected components of the final foreground, in image coordinates.
    std::vector<Region> characters;
    TriStateLabelMap final_labels;

    struct IterationEnergy {
        double before = 0.0;
        double after = 0.0;
    };
    std::vector<IterationEnergy> energies;
    int iterations = 0;
};

// Iterative tri-state refinement of one text line: seed PF from the member
// regions, then alternate model fitting and min-cut relabeling inside a
// growing roi until the label map repeats or the iteration cap is hit.
// Rejects lines whose roi degenerates or whose labels collapse to one side.
RefineResult refine_line(const ColorImage& img, const std::vector<Region>& regions,
                         const TextLineHypothesis& line, const SegmentParams& params = {});

// Debug rendering: green DF, blue PF, red B, yellow Ignored, blended onto
// the image at half opacity; pixels outside the roi pass through.
ColorImage label_overlay(const ColorImage& img, const TriStateLabelMap& labels);

}  // namespace stroketext
