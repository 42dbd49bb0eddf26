#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <vector>

namespace aircast {

// SplitMix64 finalizer; used to derive well-separated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random stream. The engine sequence is pinned by the
// standard (mt19937_64) and every variate transform below is hand-rolled,
// so identical seeds give identical draws on any platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Substream `index` of a master seed. Independent per index; used to make
  // parallel work items reproducible regardless of worker count.
  static RngStream substream(std::uint64_t seed, std::uint64_t index) {
    return RngStream(splitmix64(seed ^ splitmix64(index)));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  int bounded(int n) {
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return static_cast<int>(v % span);
  }

  // Standard normal via Box-Muller (no cached spare, cheap enough here).
  double gaussian(double mean = 0.0, double sd = 1.0) {
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Identity permutation of size n shuffled by Fisher-Yates.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = bounded(i + 1);
      std::swap(p[i], p[j]);
    }
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace aircast
