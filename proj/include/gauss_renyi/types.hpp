#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gauss_renyi/linalg.hpp"

namespace gauss_renyi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerances shared across modules.
struct Tolerances {
  static constexpr double symmetry = 1e-12;
  static constexpr double physical = 1e-10;
  static constexpr double symplectic = 1e-10;
  static constexpr double pure = 1e-9;
  static constexpr double min_eigenvalue = 1e-12;
};

/// An n-mode Gaussian state in the (m, S) parametrization.
///
/// `mean` is (Re m_1..Re m_n, Im m_1..Im m_n) for the annihilation mean
/// m_j = Tr(rho a_j). `cov` is the real symmetric 2n x 2n covariance in the
/// same block ordering, normalized so that the vacuum has cov = I/2. The
/// quadrature frame of `cov` is the one in which the E2 conversion formulas
/// hold literally: cov = J * C * J^T where C is the symmetrized covariance of
/// (q_1..q_n, p_1..p_n) with q = (a + a^dagger)/sqrt(2). For a single mode
/// cov(0,0) is therefore the variance of p and cov(1,1) that of q.
///
/// Construction checks shapes only; physicality is checked by
/// validate_state().
class GaussianState {
 public:
  GaussianState(RVec mean, RMat cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0) {
      throw DomainError("mean must have positive even length 2n, got " + std::to_string(mean_.size()));
    }
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
      throw DomainError("cov must be " + std::to_string(mean_.size()) + "x" + std::to_string(mean_.size()));
    }
  }

  Eigen::Index n() const { return mean_.size() / 2; }
  const RVec& mean() const { return mean_; }
  const RMat& cov() const { return cov_; }

  /// Complex annihilation mean m.
  CVec mean_complex() const { return detail::complexify(mean_); }

 private:
  RVec mean_;
  RMat cov_;
};

/// Thermal parameters 0 < t_1 <= ... <= t_n <= inf. An infinite entry is a
/// vacuum mode.
class ThermalSpec {
 public:
  ThermalSpec() = default;

  explicit ThermalSpec(std::vector<double> t) : t_(std::move(t)) {
    for (std::size_t j = 0; j < t_.size(); ++j) {
      if (std::isnan(t_[j]) || !(t_[j] > 0.0)) {
        throw DomainError("thermal parameter t[" + std::to_string(j) + "] must be in (0, inf]");
      }
      if (j > 0 && t_[j] < t_[j - 1]) {
        throw DomainError("thermal parameters must be sorted ascending");
      }
    }
  }

  std::size_t size() const { return t_.size(); }
  bool empty() const { return t_.empty(); }
  double operator[](std::size_t j) const { return t_[j]; }
  const std::vector<double>& values() const { return t_; }

  bool all_finite() const {
    for (double t : t_) {
      if (std::isinf(t)) return false;
    }
    return true;
  }

  /// alpha * t, with alpha * inf = inf.
  ThermalSpec scaled(double alpha) const {
    std::vector<double> out(t_);
    for (double& t : out) t = std::isinf(t) ? kInf : alpha * t;
    return ThermalSpec(std::move(out));
  }

 private:
  std::vector<double> t_;
};

/// A real 2n x 2n matrix L with L^T J L = J.
class SymplecticMatrix {
 public:
  /// Throws DomainError when the symplectic condition fails beyond `tol`.
  explicit SymplecticMatrix(RMat l, double tol = Tolerances::symplectic) : l_(std::move(l)) {
    if (l_.rows() != l_.cols() || l_.rows() % 2 != 0) {
      throw DomainError("symplectic matrix must be square of even size");
    }
    const double err = symplectic_error(l_);
    if (!(err <= tol)) {
      throw DomainError("matrix is not symplectic: max|L^T J L - J| = " + std::to_string(err));
    }
  }

  static double symplectic_error(const RMat& l) {
    const RMat j = symplectic_form(l.rows() / 2);
    return max_abs(l.transpose() * j * l - j);
  }

  const RMat& matrix() const { return l_; }
  Eigen::Index n() const { return l_.rows() / 2; }

  /// L^{-1} = J^{-1} L^T J, exact for symplectic L.
  RMat inverse() const {
    const RMat j = symplectic_form(n());
    return -j * l_.transpose() * j;
  }

 private:
  RMat l_;
};

}  // namespace gauss_renyi
