#pragma once

#include <array>
#include <vector>

#include "stroketext/rng.hpp"

namespace stroketext {

using Rgb = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

struct GmmComponent {
    double weight = 0.0;
    Rgb mean{};
    Mat3 cov{};
    // cached for evaluation
    Mat3 cov_inv{};
    double log_det = 0.0;
};

// Mixture of full-covariance Gaussians over RGB.
class Gmm {
  public:
    int component_count() const { return static_cast<int>(comps_.size()); }
    const GmmComponent& component(int k) const { return comps_[k]; }

    // ln sum_k w_k N(z; mean_k, cov_k)
    double log_pdf(const Rgb& z) const;

  private:
    friend struct GmmFitter;
    std::vector<GmmComponent> comps_;
};

struct GmmFit {
    Gmm model;
    // data log-likelihood per iteration, starting with the seeded model
    std::vector<double> log_likelihood;
};

// EM from k-means++ seeds. Stops when the relative log-likelihood change
// drops below 1e-4 or after 50 iterations. Covariances get epsilon added to
// the diagonal. k is reduced to the number of distinct colors if smaller.
GmmFit fit_gmm(const std::vector<Rgb>& pixels, int k, Rng& rng, double epsilon = 0.01);

}  // namespace stroketext
