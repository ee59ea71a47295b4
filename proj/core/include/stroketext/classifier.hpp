#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "stroketext/image.hpp"
#include "stroketext/regions.hpp"
#include "stroketext/rng.hpp"
#include "stroketext/stroke.hpp"

namespace stroketext {

enum class RegionClass { Character = 0, MultiCharacter = 1, Background = 2 };

constexpr int kFeatureDim = 5;
using FeatureVec = std::array<double, kFeatureDim>;

FeatureVec feature_vector(const RegionFeatures& f);

struct TrainingSample {
    RegionFeatures features;
    RegionClass label;
};

struct DecisionFunction {
    std::vector<FeatureVec> support_vectors;  // stored in normalized space
    std::vector<double> coefficients;         // alpha_i * y_i
    double bias = 0.0;
};

struct KernelModel {
    double gamma = 1.0 / kFeatureDim;
    double cost = 10.0;
    std::array<double, 3> class_weights{1.0, 1.0, 1.0};
    FeatureVec feature_mean{};
    FeatureVec feature_scale{};
    std::array<DecisionFunction, 3> decisions;  // Character, MultiCharacter, Background
};

// Label candidate regions against per-character ground-truth masks. Regions
// mostly inside one character are Character; regions mostly inside the union
// while touching two or more characters are MultiCharacter; regions touching
// none are Background. Anything else is dropped.
std::vector<TrainingSample> label_regions(const std::vector<Region>& regions,
                                          const std::vector<BinaryMask>& gt_chars);

// weight_c = total / (3 * count_c)
std::array<double, 3> class_weights(const std::array<size_t, 3>& counts);

// One-vs-all soft-margin training with an RBF kernel; per-sample cost is
// C * weight of the sample's class. Deterministic.
KernelModel train_classifier(const std::vector<TrainingSample>& samples,
                             double cost = 10.0, double gamma = 1.0 / kFeatureDim);

std::pair<RegionClass, std::array<double, 3>> classify_features(const KernelModel& model,
                                                                const RegionFeatures& f);

void save_model(const KernelModel& model, const std::string& path);
KernelModel load_model(const std::string& path);

// Random subset without replacement; returns all samples when max_count is
// not smaller than the input.
std::vector<TrainingSample> subsample(const std::vector<TrainingSample>& samples,
                                      size_t max_count, Rng& rng);

// Caps each class independently; classes under the cap keep every sample.
// Output is grouped by class in enum order.
std::vector<TrainingSample> stratified_cap(const std::vector<TrainingSample>& samples,
                                           size_t max_per_class, Rng& rng);

// Mean accuracy over stratified folds; used by the tuning subcommand.
double cross_validate(const std::vector<TrainingSample>& samples, double cost,
                      double gamma, int folds, Rng& rng);

// Dual solution of one weighted binary problem; exposed so optimality can be
// checked directly in tests.
struct BinarySvm {
    std::vector<double> alpha;
    double bias = 0.0;
};
BinarySvm smo_solve(const std::vector<FeatureVec>& x, const std::vector<int>& y,
                    const std::vector<double>& box, double gamma);

}  // namespace stroketext
