#include "stroketext/gmm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace stroketext {

namespace {

const double kLog2Pi = std::log(2.0 * 3.14159265358979323846);

double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse3(const Mat3& m, double det) {
    Mat3 r;
    r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return r;
}

void cache_component(GmmComponent& c) {
    double det = det3(c.cov);
    assert(det > 0.0);
    c.cov_inv = inverse3(c.cov, det);
    c.log_det = std::log(det);
}

double log_gauss(const GmmComponent& c, const Rgb& z) {
    double d[3] = {z[0] - c.mean[0], z[1] - c.mean[1], z[2] - c.mean[2]};
    double q = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q += d[i] * c.cov_inv[i][j] * d[j];
    return -0.5 * (3.0 * kLog2Pi + c.log_det + q);
}

double dist2(const Rgb& a, const Rgb& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

}  // namespace

double Gmm::log_pdf(const Rgb& z) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const GmmComponent& c : comps_) {
        if (c.weight <= 0.0) continue;
        best = std::max(best, std::log(c.weight) + log_gauss(c, z));
    }
    if (!std::isfinite(best)) return best;
    double s = 0.0;
    for (const GmmComponent& c : comps_) {
        if (c.weight <= 0.0) continue;
        s += std::exp(std::log(c.weight) + log_gauss(c, z) - best);
    }
    return best + std::log(s);
}

struct GmmFitter {
    static GmmFit run(const std::vector<Rgb>& pixels, int k, Rng& rng, double eps) {
        int n = static_cast<int>(pixels.size());
        assert(n > 0 && k >= 1);

        {
            std::vector<Rgb> uniq = pixels;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            k = std::min<int>(k, static_cast<int>(uniq.size()));
        }

        // k-means++ seeding
        std::vector<Rgb> centers;
        centers.push_back(pixels[rng.uniform_int(0, n - 1)]);
        std::vector<double> d2(n);
        while (static_cast<int>(centers.size()) < k) {
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                double best = dist2(pixels[i], centers[0]);
                for (size_t c = 1; c < centers.size(); ++c)
                    best = std::min(best, dist2(pixels[i], centers[c]));
                d2[i] = best;
                total += best;
            }
            double target = rng.uniform(0.0, total);
            int pick = n - 1;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc > target && d2[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
            centers.push_back(pixels[pick]);
        }

        // hard assignment to the nearest seed gives the initial model
        std::vector<std::vector<double>> resp(n, std::vector<double>(k, 0.0));
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bd = dist2(pixels[i], centers[0]);
            for (int c = 1; c < k; ++c) {
                double d = dist2(pixels[i], centers[c]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            resp[i][best] = 1.0;
        }

        GmmFit out;
        out.model.comps_.resize(k);
        maximize(pixels, resp, eps, out.model);

        Gmm prev = out.model;
        for (int iter = 0; iter < 50; ++iter) {
            double ll = expect(pixels, out.model, resp);
            if (!out.log_likelihood.empty()) {
                double last = out.log_likelihood.back();
                if (ll < last - 1e-12 * std::max(1.0, std::abs(last))) {
                    out.model = prev;  // numerical dip; keep the better model
                    break;
                }
                if (std::abs(ll - last) < 1e-4 * std::max(1.0, std::abs(last))) {
                    out.log_likelihood.push_back(ll);
                    break;
                }
            }
            out.log_likelihood.push_back(ll);
            prev = out.model;
            maximize(pixels, resp, eps, out.model);
        }
        return out;
    }

    static double expect(const std::vector<Rgb>& pixels, const Gmm& g,
                         std::vector<std::vector<double>>& resp) {
        int n = static_cast<int>(pixels.size());
        int k = g.component_count();
        double ll = 0.0;
        std::vector<double> lp(k);
        for (int i = 0; i < n; ++i) {
            double best = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const GmmComponent& gc = g.component(c);
                lp[c] = gc.weight > 0.0
                            ? std::log(gc.weight) + log_gauss(gc, pixels[i])
                            : -std::numeric_limits<double>::infinity();
                best = std::max(best, lp[c]);
            }
            double s = 0.0;
            for (int c = 0; c < k; ++c) s += std::exp(lp[c] - best);
            double norm = best + std::log(s);
            ll += norm;
            for (int c = 0; c < k; ++c)
                resp[i][c] = lp[c] > -std::numeric_limits<double>::infinity()
                                 ? std::exp(lp[c] - norm)
                                 : 0.0;
        }
        return ll;
    }

    static void maximize(const std::vector<Rgb>& pixels,
                         const std::vector<std::vector<double>>& resp, double eps,
                         Gmm& g) {
        int n = static_cast<int>(pixels.size());
        int k = static_cast<int>(g.comps_.size());
        for (int c = 0; c < k; ++c) {
            GmmComponent& gc = g.comps_[c];
            double nk = 0.0;
            for (int i = 0; i < n; ++i) nk += resp[i][c];
            if (nk < 1e-9) {
                gc.weight = 0.0;  // dead component, parameters kept
                continue;
            }
            gc.weight = nk / n;
            Rgb mu{};
            for (int i = 0; i < n; ++i)
                for (int d = 0; d < 3; ++d) mu[d] += resp[i][c] * pixels[i][d];
            for (int d = 0; d < 3; ++d) mu[d] /= nk;
            Mat3 cov{};
            for (int i = 0; i < n; ++i) {
                double r = resp[i][c];
                if (r == 0.0) continue;
                double d[3] = {pixels[i][0] - mu[0], pixels[i][1] - mu[1],
                               pixels[i][2] - mu[2]};
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) cov[a][b] += r * d[a] * d[b];
            }
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) cov[a][b] /= nk;
            for (int d = 0; d < 3; ++d) cov[d][d] += eps;
            gc.mean = mu;
            gc.cov = cov;
            cache_component(gc);
        }
    }
};

GmmFit fit_gmm(const std::vector<Rgb>& pixels, int k, Rng& rng, double epsilon) {
    return GmmFitter::run(pixels, k, rng, epsilon);
}

}  // namespace stroketext
