#pragma once

// Parameter algebra for positive trace-class operators in the E2 semigroup.
//
// A positive operator Z in E2 has generating function
//
//   <e(conj u)| Z |e(v)> = c exp(mu^T u + conj(mu)^T v + u^T A u + u^T Lambda v + v^T conj(A) v)
//
// and is carried here by the quadruple (c, mu, A, Lambda). The conjugation
// placement (mu and A on the u side) is the one under which the (m, S)
// conversions below hold for the GaussianState frame; it is pinned by the
// generating-function tests against dense Fock matrices.

#include <cmath>
#include <string>

#include "gauss_renyi/gaussian_state.hpp"
#include "gauss_renyi/types.hpp"

namespace gauss_renyi {

struct E2Quadruple {
  double c = 1.0;
  CVec mu;
  CMat A;
  CMat Lambda;

  Eigen::Index n() const { return mu.size(); }
};

enum class ASign { Plus, Minus };

namespace detail {

inline void require_e2_shapes(const CMat& a, const CMat& lambda, const char* who) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n || lambda.rows() != n || lambda.cols() != n) {
    throw DomainError(std::string(who) + ": A and Lambda must both be n x n");
  }
  const double scale_a = std::max(1.0, max_abs(a));
  if (max_abs(CMat(a - a.transpose())) > Tolerances::symmetry * scale_a) {
    throw DomainError(std::string(who) + ": A must be complex symmetric");
  }
  const double scale_l = std::max(1.0, max_abs(lambda));
  if (max_abs(CMat(lambda - lambda.adjoint())) > Tolerances::symmetry * scale_l) {
    throw DomainError(std::string(who) + ": Lambda must be hermitian");
  }
}

/// E = (I_n, i I_n), so that E x = x_1 + i x_2 for a real 2n-vector x.
inline CMat complex_row(Eigen::Index n) {
  CMat e(n, 2 * n);
  e << CMat::Identity(n, n), Complex(0, 1) * CMat::Identity(n, n);
  return e;
}

}  // namespace detail

/// Checks c > 0, A symmetric, Lambda hermitian and positive semidefinite.
inline void validate_quadruple(const E2Quadruple& p) {
  if (!(p.c > 0.0) || !std::isfinite(p.c)) throw DomainError("E2 quadruple: c must be positive and finite");
  detail::require_e2_shapes(p.A, p.Lambda, "E2 quadruple");
  if (p.mu.size() != p.A.rows()) throw DomainError("E2 quadruple: mu must have length n");
  Eigen::SelfAdjointEigenSolver<CMat> eig(0.5 * (p.Lambda + p.Lambda.adjoint()), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues()(0) < -Tolerances::physical) {
    throw DomainError("E2 quadruple: Lambda must be positive semidefinite (smallest eigenvalue " +
                      std::to_string(eig.eigenvalues()(0)) + ")");
  }
}

/// M(A, Lambda) = I - [[Re L, -Im L], [Im L, Re L]] - 2 [[Re A, Im A], [Im A, -Re A]].
/// ASign::Minus assembles M(-A, Lambda).
inline RMat m_matrix(const CMat& a, const CMat& lambda, ASign sign = ASign::Plus) {
  detail::require_e2_shapes(a, lambda, "m_matrix");
  const Eigen::Index n = a.rows();
  const double s = sign == ASign::Plus ? 1.0 : -1.0;
  RMat m = RMat::Identity(2 * n, 2 * n);
  const RMat lr = lambda.real();
  const RMat li = lambda.imag();
  const RMat ar = s * a.real();
  const RMat ai = s * a.imag();
  m.topLeftCorner(n, n) -= lr + 2.0 * ar;
  m.topRightCorner(n, n) -= -li + 2.0 * ai;
  m.bottomLeftCorner(n, n) -= li + 2.0 * ai;
  m.bottomRightCorner(n, n) -= lr - 2.0 * ar;
  return m;
}

/// c(A, Lambda) = sqrt(det M(A, Lambda)) for positive semidefinite M.
inline double c_of(const CMat& a, const CMat& lambda) {
  const RMat m = m_matrix(a, lambda);
  Eigen::SelfAdjointEigenSolver<RMat> eig(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  const RVec& w = eig.eigenvalues();
  if (w(0) < -Tolerances::min_eigenvalue) {
    throw DomainError("operator not positive/trace-class in this parametrization: M(A, Lambda) has eigenvalue " +
                      std::to_string(w(0)));
  }
  if (w(0) <= 0.0) return 0.0;
  return std::exp(0.5 * w.array().log().sum());
}

/// ln Tr Z = ln c - ln c(A, Lambda) + (mu_1; mu_2)^T M(A, Lambda)^{-1} (mu_1; mu_2).
inline double log_trace_positive_e2(const E2Quadruple& p) {
  validate_quadruple(p);
  const detail::SpdFactor m(m_matrix(p.A, p.Lambda), Tolerances::min_eigenvalue,
                            "not trace class: M(A, Lambda) is not positive definite");
  const RVec mu = detail::realify(p.mu);
  return std::log(p.c) - 0.5 * m.log_det() + mu.dot(m.solve(mu));
}

inline double trace_positive_e2(const E2Quadruple& p) { return std::exp(log_trace_positive_e2(p)); }

/// E2 parameters of the Gaussian state rho(m, S):
///   c      = det(I/2 + S)^{-1/2} exp(r^T J P J r)
///   mu     = i E P J r
///   A      = E P E^T / 4
///   Lambda = I - E P E^H / 2
/// with P = (I/2 + S)^{-1}, r = (Re m; Im m), E = (I, iI).
inline E2Quadruple state_to_e2(const GaussianState& state) {
  require_physical(state, "state_to_e2 input");
  const Eigen::Index n = state.n();
  const RMat shifted = 0.5 * RMat::Identity(2 * n, 2 * n) + state.cov();
  const detail::SpdFactor f(shifted, Tolerances::min_eigenvalue, "state_to_e2: I/2 + S is numerically singular");
  RMat p = f.inverse();
  p = 0.5 * (p + p.transpose());
  const RMat j = symplectic_form(n);
  const RVec& r = state.mean();
  const RVec jr = j * r;

  const CMat e = detail::complex_row(n);
  const CMat pc = p.cast<Complex>();

  E2Quadruple out;
  out.c = std::exp(-0.5 * f.log_det() + jr.dot(-(p * jr)));  // r^T J P J r = -(Jr)^T P (Jr)
  out.mu = Complex(0, 1) * (e * pc * jr.cast<Complex>());
  CMat a = 0.25 * e * pc * e.transpose();
  out.A = 0.5 * (a + a.transpose());
  CMat lambda = CMat::Identity(n, n) - 0.5 * e * pc * e.adjoint();
  out.Lambda = 0.5 * (lambda + lambda.adjoint());
  return out;
}

/// Inverse of state_to_e2:
///   S = M(-A, Lambda)^{-1} - I/2
///   (Re m; Im m) = M(A, Lambda)^{-1} (Re mu; Im mu) = J M(-A, Lambda)^{-1} J^T (Re mu; Im mu).
inline GaussianState e2_to_state(const E2Quadruple& p) {
  validate_quadruple(p);
  const Eigen::Index n = p.n();
  const detail::SpdFactor w(m_matrix(p.A, p.Lambda, ASign::Minus), Tolerances::min_eigenvalue,
                            "parameters do not describe a normalizable gaussian state: M(-A, Lambda) is not "
                            "positive definite");
  RMat w_inv = w.inverse();
  w_inv = 0.5 * (w_inv + w_inv.transpose());
  const RMat j = symplectic_form(n);
  RVec mean = j * (w_inv * (j.transpose() * detail::realify(p.mu)));
  RMat cov = w_inv - 0.5 * RMat::Identity(2 * n, 2 * n);
  return GaussianState(std::move(mean), std::move(cov));
}

/// Parameters of Gamma(K) Z Gamma(K) for a real diagonal contraction
/// K = diag(k): (c, K mu, K A K, K Lambda K).
inline E2Quadruple gamma_sandwich(const E2Quadruple& p, const RVec& k) {
  if (k.size() != p.n()) throw DomainError("gamma_sandwich: K must have n diagonal entries");
  for (Eigen::Index j = 0; j < k.size(); ++j) {
    if (!(k(j) >= 0.0 && k(j) <= 1.0)) {
      throw DomainError("gamma_sandwich: contraction violation, K[" + std::to_string(j) +
                        "] = " + std::to_string(k(j)) + " is outside [0, 1]");
    }
  }
  const CVec kc = k.cast<Complex>();
  const auto kd = kc.asDiagonal();
  E2Quadruple out;
  out.c = p.c;
  out.mu = kd * p.mu;
  out.A = kd * p.A * kd;
  out.Lambda = kd * p.Lambda * kd;
  return out;
}

/// c exp(mu^T u + conj(mu)^T v + u^T A u + u^T Lambda v + v^T conj(A) v).
inline Complex e2_generating_function(const E2Quadruple& p, const CVec& u, const CVec& v) {
  const Complex exponent = (p.mu.transpose() * u).value() + (p.mu.conjugate().transpose() * v).value() +
                           (u.transpose() * p.A * u).value() + (u.transpose() * p.Lambda * v).value() +
                           (v.transpose() * p.A.conjugate() * v).value();
  return p.c * std::exp(exponent);
}

}  // namespace gauss_renyi
