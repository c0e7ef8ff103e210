#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace slicekit {

// Seeded generator used by every randomized test sweep.  Raw mt19937_64
// output is pinned by the standard; we scale it ourselves instead of going
// through std distributions, whose streams vary between library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0x5EED) : gen_(seed) {}

    double uniform(double lo, double hi) {
        const double u = (gen_() >> 11) * 0x1.0p-53; // [0,1)
        return lo + (hi - lo) * u;
    }

    std::uint64_t bits() { return gen_(); }

    int index(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

    std::vector<double> vec(int n, double lo, double hi) {
        std::vector<double> v(n);
        for (auto& c : v) c = uniform(lo, hi);
        return v;
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace slicekit
