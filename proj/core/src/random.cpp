#include "lpsparse/random.hpp"

#include <cmath>
#include <numbers>

namespace lpsparse {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  // Box-Muller; 1 - uniform() lies in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t r = engine_();
  while (r >= limit) r = engine_();
  return r % bound;
}

std::uint64_t Rng::binomial(std::uint64_t trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  if (trials <= 16) {
    std::uint64_t hits = 0;
    for (std::uint64_t k = 0; k < trials; ++k) hits += uniform() < p ? 1 : 0;
    return hits;
  }
  std::binomial_distribution<std::uint64_t> dist(trials, p);
  return dist(engine_);
}

Rng Rng::split(std::uint64_t stream) {
  // SplitMix64 finalizer over a fresh draw and the stream id.
  std::uint64_t z = engine_() ^ (stream + 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return Rng(z ^ (z >> 31));
}

}  // namespace lpsparse
