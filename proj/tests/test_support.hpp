#pragma once

// Random physical states for property tests.

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <random>
#include <vector>

#include "gauss_renyi/gaussian_state.hpp"

namespace gauss_renyi::support {

/// exp(J H) with H symmetric, entries of H uniform in [-scale, scale].
inline RMat random_symplectic(Eigen::Index n, std::mt19937_64& rng, double scale = 0.3) {
  std::uniform_real_distribution<double> u(-scale, scale);
  RMat h(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) h(i, j) = h(j, i) = u(rng);
  }
  const RMat jh = symplectic_form(n) * h;
  return jh.exp();
}

inline ThermalSpec random_thermal(Eigen::Index n, std::mt19937_64& rng, double lo = 0.3, double hi = 3.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> t(static_cast<std::size_t>(n));
  for (double& x : t) x = u(rng);
  std::sort(t.begin(), t.end());
  return ThermalSpec(std::move(t));
}

/// Symplectic conjugation of a thermal state plus a displacement.
inline GaussianState random_state(Eigen::Index n, std::mt19937_64& rng, double mean_scale = 1.0,
                                  double symp_scale = 0.3) {
  const GaussianState th = thermal_state(random_thermal(n, rng));
  const RMat l = random_symplectic(n, rng, symp_scale);
  RMat cov = l.transpose() * th.cov() * l;
  cov = 0.5 * (cov + cov.transpose());
  std::uniform_real_distribution<double> u(-mean_scale, mean_scale);
  RVec mean(2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) mean(i) = u(rng);
  return GaussianState(std::move(mean), std::move(cov));
}

}  // namespace gauss_renyi::support
