#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace lpsparse {

// Seeded 64-bit generator. Uniform and normal variates are computed from raw
// bits here rather than through <random> distributions so that generated
// instances are identical across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t binomial(std::uint64_t trials, double p);

  // Independent child stream, used to hand each trial its own generator.
  Rng split(std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lpsparse
