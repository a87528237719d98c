#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "lpsparse/lp_instance.hpp"
#include "lpsparse/outcome.hpp"

namespace lpsparse::detail {

inline std::vector<double> average(const std::vector<std::vector<double>>& xs, std::size_t d) {
  std::vector<double> mean(d, 0.0);
  for (const auto& x : xs)
    for (std::size_t j = 0; j < d; ++j) mean[j] += x[j];
  for (double& v : mean) v /= static_cast<double>(xs.size());
  return mean;
}

// x = min(x_bar / (1 - eps), 1); records min_i <C_i, x_bar> first.
inline std::vector<double> rescale_cover(const MpcInstance& mpc, std::vector<double> x_bar,
                                         double eps, SolveStats& stats) {
  double lowest = HUGE_VAL;
  for (std::size_t i = 0; i < mpc.n_c(); ++i) lowest = std::min(lowest, dot(mpc.C.row(i), x_bar));
  stats.min_cover_before_scaling = mpc.n_c() > 0 ? lowest : 0.0;
  const double scale = eps < 1.0 ? 1.0 / (1.0 - eps) : HUGE_VAL;
  for (double& v : x_bar) v = v > 0.0 ? std::min(v * scale, 1.0) : 0.0;
  return x_bar;
}

}  // namespace lpsparse::detail
