#pragma once
#include <cstdint>
#include <cmath>

// Self-contained deterministic RNG (splitmix64 + Box-Muller) so that seeded
// runs produce byte-identical output on every platform; the standard library
// distributions are implementation-defined.

namespace ht {

struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in (0,1)
  double uniform() {
    return (double)((next() >> 11) + 1) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(6.283185307179586476925286766559 * u2);
    have_spare_ = true;
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Derive an independent stream for sample index i from a base seed.
inline uint64_t split_seed(uint64_t seed, uint64_t index) {
  SplitMix64 s(seed ^ (0x632be59bd9b4e019ull * (index + 1)));
  return s.next();
}

}  // namespace ht
