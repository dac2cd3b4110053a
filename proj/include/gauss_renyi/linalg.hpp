#pragma once

// Small dense linear-algebra helpers shared by the closed-form modules.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "gauss_renyi/errors.hpp"

namespace gauss_renyi {

using Real = double;
using Complex = std::complex<double>;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// The standard symplectic form J = [[0, I], [-I, 0]] in (Re..., Im...)
/// block ordering.
inline RMat symplectic_form(Eigen::Index n) {
  RMat j = RMat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
  return j;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? static_cast<double>(m.cwiseAbs().maxCoeff()) : 0.0;
}

inline double asymmetry(const RMat& m) { return max_abs(m - m.transpose()); }

namespace detail {

/// Symmetric positive-definite factorization with an explicit smallest
/// eigenvalue guard. Never regularizes; throws when the guard fails.
class SpdFactor {
 public:
  SpdFactor(const RMat& m, double min_eig, const std::string& what) {
    const RMat sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<RMat> eig(sym, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError(what + ": eigenvalue solver failed");
    min_eigenvalue_ = eig.eigenvalues().size() ? eig.eigenvalues()(0) : 1.0;
    if (!(min_eigenvalue_ > min_eig)) {
      throw DomainError(what + " (smallest eigenvalue " + std::to_string(min_eigenvalue_) + ")");
    }
    llt_.compute(sym);
    if (llt_.info() != Eigen::Success) throw NumericalError(what + ": Cholesky factorization failed");
  }

  RVec solve(const RVec& b) const { return llt_.solve(b); }
  RMat solve(const RMat& b) const { return llt_.solve(b); }
  RMat inverse() const { return llt_.solve(RMat::Identity(llt_.rows(), llt_.cols())); }

  double log_det() const {
    return 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
  }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  Eigen::LLT<RMat> llt_;
  double min_eigenvalue_ = 0.0;
};

/// Real 2n-vector (Re z; Im z).
inline RVec realify(const CVec& z) {
  RVec r(2 * z.size());
  r << z.real(), z.imag();
  return r;
}

inline CVec complexify(const RVec& r) {
  const Eigen::Index n = r.size() / 2;
  return r.head(n).cast<Complex>() + Complex(0, 1) * r.tail(n).cast<Complex>();
}

}  // namespace detail
}  // namespace gauss_renyi
