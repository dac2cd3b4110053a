#pragma once

// Validation and standard constructors for Gaussian states.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gauss_renyi/types.hpp"
#include "gauss_renyi/williamson.hpp"

namespace gauss_renyi {

struct Violation {
  std::string check;
  double value;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::string describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) os << "; ";
      os << violations[i].message;
    }
    return os.str();
  }
};

/// Checks the covariance invariants: symmetry and the uncertainty bound on
/// every symplectic eigenvalue. Never throws for well-shaped input.
inline ValidationResult validate_state(const GaussianState& state) {
  ValidationResult result;
  const RMat& s = state.cov();
  if (!s.allFinite() || !state.mean().allFinite()) {
    result.violations.push_back({"finite", NAN, "state contains non-finite entries"});
    return result;
  }
  const double asym = asymmetry(s);
  if (asym > Tolerances::symmetry) {
    std::ostringstream os;
    os << "cov is not symmetric: max asymmetry " << asym << " > " << Tolerances::symmetry;
    result.violations.push_back({"symmetry", asym, os.str()});
    return result;
  }
  Eigen::SelfAdjointEigenSolver<RMat> eig(s, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues()(0);
  if (!(min_eig > 0.0)) {
    std::ostringstream os;
    os << "cov is not positive definite: smallest eigenvalue " << min_eig;
    result.violations.push_back({"positive_definite", min_eig, os.str()});
    return result;
  }
  for (double d : symplectic_eigenvalues(s)) {
    if (d < 0.5 - Tolerances::physical) {
      std::ostringstream os;
      os << "symplectic eigenvalue " << d << " < 0.5";
      result.violations.push_back({"symplectic_eigenvalue", d, os.str()});
    }
  }
  return result;
}

/// Throws DomainError naming the failed invariant.
inline void require_physical(const GaussianState& state, const std::string& name) {
  const auto v = validate_state(state);
  if (!v.ok()) throw DomainError(name + " is not a physical Gaussian state: " + v.describe());
}

/// Zero-mean thermal state with cov = diag(D0, D0), D0 = diag(coth(t_j/2)/2).
inline GaussianState thermal_state(const ThermalSpec& t) {
  if (t.empty()) throw DomainError("thermal_state: need at least one mode");
  const auto n = static_cast<Eigen::Index>(t.size());
  RVec diag(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) diag(j) = diag(n + j) = t_to_d(t[static_cast<std::size_t>(j)]);
  return GaussianState(RVec::Zero(2 * n), diag.asDiagonal());
}

/// Coherent state |gamma> with annihilation mean gamma: mean = (Re gamma,
/// Im gamma), cov = I/2.
inline GaussianState coherent_state(const CVec& gamma) {
  if (gamma.size() == 0) throw DomainError("coherent_state: need at least one mode");
  const Eigen::Index n = gamma.size();
  return GaussianState(detail::realify(gamma), 0.5 * RMat::Identity(2 * n, 2 * n));
}

/// Single-mode squeezed vacuum, cov = diag(e^{2r}/2, e^{-2r}/2).
inline GaussianState squeezed_vacuum(double r) {
  if (!(std::abs(r) <= 5.0)) throw DomainError("squeezed_vacuum: |r| must be <= 5");
  RMat cov = RMat::Zero(2, 2);
  cov(0, 0) = 0.5 * std::exp(2.0 * r);
  cov(1, 1) = 0.5 * std::exp(-2.0 * r);
  return GaussianState(RVec::Zero(2), std::move(cov));
}

/// Tensor product a (x) b; modes of a come first within each (Re, Im) block.
inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const Eigen::Index na = a.n();
  const Eigen::Index nb = b.n();
  const Eigen::Index n = na + nb;
  RVec mean(2 * n);
  mean << a.mean().head(na), b.mean().head(nb), a.mean().tail(na), b.mean().tail(nb);

  // Index maps from each factor's ordering into the combined ordering.
  auto place = [n](Eigen::Index k, Eigen::Index nf, Eigen::Index offset) {
    return k < nf ? offset + k : n + offset + (k - nf);
  };
  RMat cov = RMat::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * na; ++i) {
    for (Eigen::Index j = 0; j < 2 * na; ++j) cov(place(i, na, 0), place(j, na, 0)) = a.cov()(i, j);
  }
  for (Eigen::Index i = 0; i < 2 * nb; ++i) {
    for (Eigen::Index j = 0; j < 2 * nb; ++j) cov(place(i, nb, na), place(j, nb, na)) = b.cov()(i, j);
  }
  return GaussianState(std::move(mean), std::move(cov));
}

/// Applies a Gaussian unitary given by a displacement ell and symplectic L to
/// the moments: cov -> L^T cov L, mean -> L^{-1} (mean - ell). This is the
/// map that sends a state with Williamson form (L, t) and mean ell to the
/// thermal state rho(t).
inline GaussianState transform(const GaussianState& state, const SymplecticMatrix& l, const RVec& ell) {
  if (l.n() != state.n() || ell.size() != state.mean().size()) {
    throw DomainError("transform: dimension mismatch");
  }
  RMat cov = l.matrix().transpose() * state.cov() * l.matrix();
  cov = 0.5 * (cov + cov.transpose());
  return GaussianState(l.inverse() * (state.mean() - ell), std::move(cov));
}

}  // namespace gauss_renyi
