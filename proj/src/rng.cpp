#include "dunklab/rng.hpp"

#include <cmath>

namespace dunklab {

double Rng::log_uniform(double lo, double hi) {
  return lo * std::exp(uniform() * std::log(hi / lo));
}

Rng Rng::fork(const std::string& label) const {
  // FNV-1a over the label, mixed into the current state.
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return Rng(state_ ^ h ^ 0xa5a5a5a5a5a5a5a5ULL);
}

}  // namespace dunklab
