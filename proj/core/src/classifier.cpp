#include "stroketext/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace stroketext {

FeatureVec feature_vector(const RegionFeatures& f) {
    return {f.stroke_area_ratio, f.aspect_ratio, f.compactness, f.hull_ratio,
            f.holes_ratio};
}

std::vector<TrainingSample> label_regions(const std::vector<Region>& regions,
                                          const std::vector<BinaryMask>& gt_chars) {
    int w = -1, h = -1;
    for (const BinaryMask& m : gt_chars) {
        if (w == -1) {
            w = m.width;
            h = m.height;
        } else if (m.width != w || m.height != h) {
            throw std::invalid_argument("label_regions: mask dimensions differ");
        }
    }
    std::vector<TrainingSample> out;
    for (const Region& r : regions) {
        if (w != -1 && (r.x < 0 || r.y < 0 || r.x + r.w > w || r.y + r.h > h))
            throw std::invalid_argument("label_regions: region outside mask bounds");
        size_t best_single = 0, in_union = 0;
        int touched = 0;
        for (const BinaryMask& m : gt_chars) {
            size_t inside = 0;
            for (const Pt& p : r.pixels) inside += m.get(p.x, p.y);
            best_single = std::max(best_single, inside);
            touched += inside > 0;
        }
        for (const Pt& p : r.pixels) {
            for (const BinaryMask& m : gt_chars)
                if (m.get(p.x, p.y)) {
                    ++in_union;
                    break;
                }
        }
        double area = static_cast<double>(r.area);
        RegionClass label;
        if (best_single >= 0.7 * area)
            label = RegionClass::Character;
        else if (in_union >= 0.7 * area && touched >= 2)
            label = RegionClass::MultiCharacter;
        else if (touched == 0)
            label = RegionClass::Background;
        else
            continue;  // ambiguous overlap, not used for training
        out.push_back({compute_features(r), label});
    }
    return out;
}

std::array<double, 3> class_weights(const std::array<size_t, 3>& counts) {
    double total = 0.0;
    for (size_t c : counts) {
        if (c == 0) throw std::invalid_argument("class_weights: empty class");
        total += static_cast<double>(c);
    }
    return {total / (3.0 * counts[0]), total / (3.0 * counts[1]),
            total / (3.0 * counts[2])};
}

namespace {

double rbf(const FeatureVec& a, const FeatureVec& b, double gamma) {
    double d2 = 0.0;
    for (int i = 0; i < kFeatureDim; ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return std::exp(-gamma * d2);
}

double decide(const DecisionFunction& df, const FeatureVec& z, double gamma) {
    double s = df.bias;
    for (size_t i = 0; i < df.support_vectors.size(); ++i)
        s += df.coefficients[i] * rbf(df.support_vectors[i], z, gamma);
    return s;
}

FeatureVec normalize(const KernelModel& m, const FeatureVec& v) {
    FeatureVec out;
    for (int i = 0; i < kFeatureDim; ++i)
        out[i] = (v[i] - m.feature_mean[i]) / m.feature_scale[i];
    return out;
}

}  // namespace

BinarySvm smo_solve(const std::vector<FeatureVec>& x, const std::vector<int>& y,
                    const std::vector<double>& box, double gamma) {
    int n = static_cast<int>(x.size());
    BinarySvm out;
    out.alpha.assign(n, 0.0);
    std::vector<double> grad(n, -1.0);  // gradient of the dual at alpha = 0

    // small problems keep the whole kernel; larger ones compute rows on demand
    std::vector<double> kmat;
    bool dense = n <= 3000;
    if (dense) {
        kmat.resize(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j)
                kmat[static_cast<size_t>(i) * n + j] =
                    kmat[static_cast<size_t>(j) * n + i] = rbf(x[i], x[j], gamma);
    }
    std::vector<double> row_i(n), row_j(n);
    auto kernel_row = [&](int r, std::vector<double>& buf) -> const double* {
        if (dense) return &kmat[static_cast<size_t>(r) * n];
        for (int t = 0; t < n; ++t) buf[t] = rbf(x[r], x[t], gamma);
        return buf.data();
    };

    const double tol = 1e-4;
    const int max_iter = 200000;
    double m_bound = 0.0, big_m = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        int i = -1, j = -1;
        m_bound = -std::numeric_limits<double>::infinity();
        big_m = std::numeric_limits<double>::infinity();
        for (int t = 0; t < n; ++t) {
            double v = -y[t] * grad[t];
            bool in_up = (y[t] > 0 && out.alpha[t] < box[t]) ||
                         (y[t] < 0 && out.alpha[t] > 0.0);
            bool in_low = (y[t] > 0 && out.alpha[t] > 0.0) ||
                          (y[t] < 0 && out.alpha[t] < box[t]);
            if (in_up && v > m_bound) {
                m_bound = v;
                i = t;
            }
            if (in_low && v < big_m) {
                big_m = v;
                j = t;
            }
        }
        if (i < 0 || j < 0 || m_bound - big_m < tol) break;

        const double* ki = kernel_row(i, row_i);
        const double* kj = kernel_row(j, row_j);
        double eta = ki[i] + kj[j] - 2.0 * ki[j];
        if (eta <= 0.0) eta = 1e-12;
        double step = (m_bound - big_m) / eta;
        double cap_i = y[i] > 0 ? box[i] - out.alpha[i] : out.alpha[i];
        double cap_j = y[j] > 0 ? out.alpha[j] : box[j] - out.alpha[j];
        step = std::min(step, std::min(cap_i, cap_j));
        out.alpha[i] += y[i] * step;
        out.alpha[j] -= y[j] * step;
        for (int t = 0; t < n; ++t) grad[t] += y[t] * step * (ki[t] - kj[t]);
    }

    // bias from free support vectors, else the midpoint of the final bounds
    double s = 0.0;
    int free_count = 0;
    for (int t = 0; t < n; ++t) {
        if (out.alpha[t] > 1e-12 && out.alpha[t] < box[t] - 1e-12) {
            s += -y[t] * grad[t];
            ++free_count;
        }
    }
    double mid = (m_bound + big_m) / 2.0;
    out.bias = free_count ? s / free_count : (std::isfinite(mid) ? mid : 0.0);
    return out;
}

KernelModel train_classifier(const std::vector<TrainingSample>& samples,
                             double cost, double gamma) {
    int n = static_cast<int>(samples.size());
    std::array<size_t, 3> counts{0, 0, 0};
    for (const TrainingSample& s : samples) counts[static_cast<int>(s.label)]++;
    if (counts[0] == 0 || counts[1] == 0 || counts[2] == 0)
        throw std::invalid_argument("train_classifier: need samples of every class");

    KernelModel model;
    model.gamma = gamma;
    model.cost = cost;
    model.class_weights = class_weights(counts);

    std::vector<FeatureVec> raw(n);
    for (int i = 0; i < n; ++i) raw[i] = feature_vector(samples[i].features);
    for (int d = 0; d < kFeatureDim; ++d) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += raw[i][d];
        mean /= n;
        double var = 0.0;
        for (int i = 0; i < n; ++i) var += (raw[i][d] - mean) * (raw[i][d] - mean);
        double sd = std::sqrt(var / n);
        model.feature_mean[d] = mean;
        model.feature_scale[d] = sd > 1e-12 ? sd : 1.0;
    }
    std::vector<FeatureVec> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = normalize(model, raw[i]);

    bool all_same = true;
    for (int i = 1; i < n && all_same; ++i) all_same = xs[i] == xs[0];
    if (all_same) throw std::runtime_error("train_classifier: degenerate data");

    for (int c = 0; c < 3; ++c) {
        std::vector<int> y(n);
        std::vector<double> box(n);
        for (int i = 0; i < n; ++i) {
            int cls = static_cast<int>(samples[i].label);
            y[i] = cls == c ? 1 : -1;
            box[i] = cost * model.class_weights[cls];
        }
        BinarySvm sol = smo_solve(xs, y, box, gamma);
        DecisionFunction& df = model.decisions[c];
        df.bias = sol.bias;
        for (int i = 0; i < n; ++i) {
            if (sol.alpha[i] <= 1e-12) continue;
            df.support_vectors.push_back(xs[i]);
            df.coefficients.push_back(sol.alpha[i] * y[i]);
        }
    }
    return model;
}

std::pair<RegionClass, std::array<double, 3>> classify_features(const KernelModel& model,
                                                                const RegionFeatures& f) {
    FeatureVec raw = feature_vector(f);
    for (double v : raw)
        if (!std::isfinite(v))
            throw std::invalid_argument("classify_features: non-finite feature");
    FeatureVec z = normalize(model, raw);
    std::array<double, 3> scores;
    for (int c = 0; c < 3; ++c) scores[c] = decide(model.decisions[c], z, model.gamma);
    int best = 0;
    for (int c = 1; c < 3; ++c)
        if (scores[c] > scores[best]) best = c;
    return {static_cast<RegionClass>(best), scores};
}

void save_model(const KernelModel& model, const std::string& path) {
    nlohmann::json j;
    j["gamma"] = model.gamma;
    j["cost"] = model.cost;
    j["class_weights"] = model.class_weights;
    j["feature_mean"] = model.feature_mean;
    j["feature_scale"] = model.feature_scale;
    j["decisions"] = nlohmann::json::array();
    for (const DecisionFunction& df : model.decisions) {
        nlohmann::json d;
        d["bias"] = df.bias;
        d["coefficients"] = df.coefficients;
        d["support_vectors"] = df.support_vectors;
        j["decisions"].push_back(std::move(d));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_model: cannot write " + path);
    out << j.dump(2) << "\n";
}

KernelModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_model: cannot read " + path);
    nlohmann::json j;
    in >> j;
    KernelModel m;
    m.gamma = j.at("gamma");
    m.cost = j.at("cost");
    m.class_weights = j.at("class_weights");
    m.feature_mean = j.at("feature_mean");
    m.feature_scale = j.at("feature_scale");
    for (int c = 0; c < 3; ++c) {
        const nlohmann::json& d = j.at("decisions").at(c);
        DecisionFunction& df = m.decisions[c];
        df.bias = d.at("bias");
        df.coefficients = d.at("coefficients").get<std::vector<double>>();
        df.support_vectors = d.at("support_vectors").get<std::vector<FeatureVec>>();
    }
    return m;
}

std::vector<TrainingSample> subsample(const std::vector<TrainingSample>& samples,
                                      size_t max_count, Rng& rng) {
    if (samples.size() <= max_count) return samples;
    std::vector<size_t> idx(samples.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (size_t i = 0; i < max_count; ++i) {
        size_t j = i + rng.uniform_int(0, static_cast<int64_t>(idx.size() - 1 - i));
        std::swap(idx[i], idx[j]);
    }
    std::vector<TrainingSample> out;
    out.reserve(max_count);
    for (size_t i = 0; i < max_count; ++i) out.push_back(samples[idx[i]]);
    return out;
}

std::vector<TrainingSample> stratified_cap(const std::vector<TrainingSample>& samples,
                                           size_t max_per_class, Rng& rng) {
    std::array<std::vector<TrainingSample>, 3> by_class;
    for (const TrainingSample& s : samples)
        by_class[static_cast<size_t>(s.label)].push_back(s);
    std::vector<TrainingSample> out;
    for (auto& group : by_class) {
        std::vector<TrainingSample> capped = subsample(group, max_per_class, rng);
        out.insert(out.end(), capped.begin(), capped.end());
    }
    return out;
}

double cross_validate(const std::vector<TrainingSample>& samples, double cost,
                      double gamma, int folds, Rng& rng) {
    std::vector<size_t> idx(samples.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[rng.uniform_int(0, static_cast<int64_t>(i - 1))]);

    size_t correct = 0, tested = 0;
    for (int f = 0; f < folds; ++f) {
        std::vector<TrainingSample> train_set, test_set;
        for (size_t i = 0; i < idx.size(); ++i) {
            if (static_cast<int>(i % folds) == f)
                test_set.push_back(samples[idx[i]]);
            else
                train_set.push_back(samples[idx[i]]);
        }
        KernelModel m;
        try {
            m = train_classifier(train_set, cost, gamma);
        } catch (const std::exception&) {
            continue;  // fold missing a class; skip it
        }
        for (const TrainingSample& s : test_set) {
            correct += classify_features(m, s.features).first == s.label;
            ++tested;
        }
    }
    return tested ? static_cast<double>(correct) / tested : 0.0;
}

}  // namespace stroketext
