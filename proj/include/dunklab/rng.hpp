#pragma once

#include <cstdint>
#include <string>

namespace dunklab {

// Deterministic splitmix64 stream.  We avoid std:: distributions on purpose:
// their output is implementation-defined and the experiment outputs must be
// reproducible byte for byte from the seed alone.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Log-uniform in [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);

  // Derive an independent stream for a named sub-experiment.
  Rng fork(const std::string& label) const;

 private:
  uint64_t state_;
};

}  // namespace dunklab
