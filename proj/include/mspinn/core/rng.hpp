#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace mspinn {

// Counter-based splittable generator. A stream is identified by a 64-bit
// state derived from (seed, split path); draws are a pure function of
// (state, counter), so streams for distinct purposes never interact and the
// sequence is reproducible bit-for-bit for a given seed and path.
class RngStream {
 public:
  static RngStream root(uint64_t seed) { return RngStream(mix(seed ^ 0x5851f42d4c957f2dULL)); }

  /// Child stream for a named purpose ("init", "embedding", "sampler", ...).
  RngStream split(std::string_view label) const {
    return RngStream(mix(state_ ^ fnv1a(label)));
  }
  /// Child stream for an indexed purpose (per-embedding, per-run, ...).
  RngStream split(uint64_t index) const {
    return RngStream(mix(state_ ^ (0x9e3779b97f4a7c15ULL + index)));
  }

  uint64_t next_u64() { return mix(state_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform draw in [0, 1).
  double uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Gaussian draw, Box-Muller; pairs are consumed deterministically.
  double normal(double sigma = 1.0) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_ * sigma;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a) * sigma;
  }

  /// Uniform integer in [0, n).
  uint64_t uniform_index(uint64_t n) { return next_u64() % n; }

 private:
  explicit RngStream(uint64_t state) : state_(state) {}

  static uint64_t mix(uint64_t z) {  // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
      h ^= (unsigned char)c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  uint64_t state_ = 0;
  uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mspinn
