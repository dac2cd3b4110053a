#pragma once

// Williamson normal form of a covariance matrix: L^T S L = diag(D0, D0) with
// L symplectic and D0 = diag(d_j), d_j = coth(t_j / 2) / 2.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "gauss_renyi/types.hpp"

namespace gauss_renyi {

struct WilliamsonForm {
  SymplecticMatrix L;
  std::vector<double> d;  // descending, so that t is ascending
  ThermalSpec t;

  /// diag(D0, D0).
  RMat diagonal_form() const {
    const auto n = static_cast<Eigen::Index>(d.size());
    RVec dd(2 * n);
    for (Eigen::Index j = 0; j < n; ++j) dd(j) = dd(n + j) = d[static_cast<std::size_t>(j)];
    return dd.asDiagonal();
  }
};

/// d = coth(t/2)/2, with t = inf giving the vacuum value 1/2.
inline double t_to_d(double t) {
  if (std::isinf(t)) return 0.5;
  return 0.5 / std::tanh(0.5 * t);
}

/// Inverse of t_to_d: t = ln((d + 1/2) / (d - 1/2)). Values within `pure_tol`
/// of 1/2 are snapped to a pure mode (t = inf).
inline double d_to_t(double d, double pure_tol = Tolerances::pure) {
  if (std::isnan(d) || d < 0.5 - Tolerances::physical) {
    throw DomainError("symplectic eigenvalue " + std::to_string(d) +
                      " is below the uncertainty bound 1/2");
  }
  if (d - 0.5 <= pure_tol) return kInf;
  return std::log1p(1.0 / (d - 0.5));
}

namespace detail {

inline void require_symmetric(const RMat& s, const char* who) {
  if (s.rows() != s.cols() || s.rows() == 0 || s.rows() % 2 != 0) {
    throw DomainError(std::string(who) + ": covariance must be a non-empty 2n x 2n matrix");
  }
  const double asym = asymmetry(s);
  if (!(asym <= Tolerances::symmetry * std::max(1.0, max_abs(s)))) {
    throw DomainError(std::string(who) + ": covariance is not symmetric (max asymmetry " +
                      std::to_string(asym) + ")");
  }
}

/// Eigen-decomposition of a symmetric positive-definite matrix.
inline Eigen::SelfAdjointEigenSolver<RMat> spd_eigen(const RMat& s, const char* who) {
  Eigen::SelfAdjointEigenSolver<RMat> eig(0.5 * (s + s.transpose()));
  if (eig.info() != Eigen::Success) throw NumericalError(std::string(who) + ": eigen solver failed");
  if (!(eig.eigenvalues()(0) > 0.0)) {
    throw DomainError(std::string(who) + ": covariance is not positive definite (smallest eigenvalue " +
                      std::to_string(eig.eigenvalues()(0)) + ")");
  }
  return eig;
}

}  // namespace detail

/// Symplectic eigenvalues of S, i.e. the moduli d_j of the eigenvalues
/// +-d_j of iJS, sorted descending.
///
/// Computed from the symmetric matrix S^{1/2} J^T S J S^{1/2}, whose
/// eigenvalues are d_j^2, each twice.
inline std::vector<double> symplectic_eigenvalues(const RMat& s) {
  detail::require_symmetric(s, "symplectic_eigenvalues");
  const auto eig = detail::spd_eigen(s, "symplectic_eigenvalues");
  const RMat root = eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal() *
                    eig.eigenvectors().transpose();
  const Eigen::Index n = s.rows() / 2;
  const RMat j = symplectic_form(n);
  RMat h = root * j.transpose() * s * j * root;
  h = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> sq(h, Eigen::EigenvaluesOnly);
  if (sq.info() != Eigen::Success) throw NumericalError("symplectic_eigenvalues: eigen solver failed");

  std::vector<double> d(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pair = 0.5 * (sq.eigenvalues()(2 * k) + sq.eigenvalues()(2 * k + 1));
    d[static_cast<std::size_t>(k)] = std::sqrt(std::max(pair, 0.0));
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

/// Williamson decomposition of a symmetric positive-definite covariance.
///
/// With K = S^{-1/2} J S^{-1/2} (skew-symmetric, eigenvalues +-i/d_j), the
/// real Schur form K = Q T Q^T is block diagonal with 2x2 blocks
/// w_j [[0, 1], [-1, 0]], w_j = 1/d_j. Reordering the columns of Q into
/// (first-of-pair..., second-of-pair...) gives O with O^T K O = [[0, W], [-W, 0]],
/// and L = S^{-1/2} O diag(D0, D0)^{1/2} satisfies L^T J L = J and
/// L^T S L = diag(D0, D0). Pairs are ordered by ascending w (ascending t);
/// ties keep the Schur order, so the output is deterministic for a given S.
inline WilliamsonForm williamson_decompose(const RMat& s, double pure_tol = Tolerances::pure) {
  detail::require_symmetric(s, "williamson_decompose");
  const Eigen::Index n = s.rows() / 2;
  const auto eig = detail::spd_eigen(s, "williamson_decompose");
  const RMat inv_root = eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                        eig.eigenvectors().transpose();
  const RMat j = symplectic_form(n);
  RMat k = inv_root * j * inv_root;
  k = 0.5 * (k - k.transpose());

  Eigen::RealSchur<RMat> schur(k);
  if (schur.info() != Eigen::Success) throw NumericalError("williamson_decompose: real Schur failed");
  const RMat& t = schur.matrixT();
  const RMat& q = schur.matrixU();

  struct Pair {
    Eigen::Index first, second;
    double omega;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  const double scale = std::max(1.0, max_abs(k));
  for (Eigen::Index i = 0; i < 2 * n;) {
    if (i + 1 >= 2 * n || std::abs(t(i + 1, i)) <= 1e-14 * scale) {
      throw NumericalError("williamson_decompose: real eigenvalue in the skew-symmetric form at index " +
                           std::to_string(i) + "; covariance is not positive definite enough");
    }
    const double upper = t(i, i + 1);
    const double lower = t(i + 1, i);
    const double omega = 0.5 * std::abs(upper - lower);
    if (upper > 0.0) {
      pairs.push_back({i, i + 1, omega});
    } else {
      pairs.push_back({i + 1, i, omega});
    }
    i += 2;
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.omega < b.omega; });

  RMat o(2 * n, 2 * n);
  RVec root_d(2 * n);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (Eigen::Index p = 0; p < n; ++p) {
    const Pair& pr = pairs[static_cast<std::size_t>(p)];
    o.col(p) = q.col(pr.first);
    o.col(n + p) = q.col(pr.second);
    const double dj = 1.0 / pr.omega;
    d[static_cast<std::size_t>(p)] = dj;
    root_d(p) = root_d(n + p) = std::sqrt(dj);
  }

  // Off-block residue of T measures how far the pairing is from canonical.
  const RMat canon = o.transpose() * k * o;
  RMat expected = RMat::Zero(2 * n, 2 * n);
  for (Eigen::Index p = 0; p < n; ++p) {
    expected(p, n + p) = pairs[static_cast<std::size_t>(p)].omega;
    expected(n + p, p) = -pairs[static_cast<std::size_t>(p)].omega;
  }
  const double residue = max_abs(canon - expected);
  if (!(residue <= 1e-9 * scale)) {
    throw NumericalError("williamson_decompose: degenerate cluster could not be paired canonically "
                         "(residue " + std::to_string(residue) + ")");
  }

  RMat l = inv_root * o * root_d.asDiagonal();

  std::vector<double> t_params(d.size());
  for (std::size_t p = 0; p < d.size(); ++p) t_params[p] = d_to_t(d[p], pure_tol);
  return WilliamsonForm{SymplecticMatrix(std::move(l), 1e-8 * std::max(1.0, max_abs(s))), std::move(d),
                        ThermalSpec(std::move(t_params))};
}

}  // namespace gauss_renyi
