#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stroketext {

// Deterministic RNG helpers. std::mt19937_64 output is fully specified by the
// standard; the mappings below avoid std::*_distribution, whose sequences are
// implementation-defined.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform integer in [lo, hi] inclusive.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int64_t>(eng_() % span);
    }

    // Uniform real in [lo, hi).
    double uniform(double lo = 0.0, double hi = 1.0) {
        double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;  // [0,1)
        return lo + u * (hi - lo);
    }

    // Box-Muller; deterministic across platforms for a given seed.
    double gaussian(double mean = 0.0, double stddev = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return mean + stddev * r * std::cos(a);
    }

    // Derive an independent stream, e.g. per image or per text line.
    static uint64_t substream(uint64_t seed, uint64_t a, uint64_t b = 0) {
        // splitmix64 over the packed key
        uint64_t z = seed + 0x9e3779b97f4a7c15ull * (a + 1) + 0xbf58476d1ce4e5b9ull * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace stroketext
