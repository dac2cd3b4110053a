#pragma once

// Closed-form sandwiched Renyi relative entropy between Gaussian states.
//
// sigma is brought to thermal form rho(s) by a Gaussian unitary, which is
// applied to rho as well (the divergence is unitarily invariant). Then
//
//   rho(s)^{(1-a)/(2a)} = p(s)^{(1-a)/(2a)} Gamma(K),  K = diag(exp(-s_j (1-a)/(2a)))
//
// and Z = Gamma(K) rho' Gamma(K) is a positive trace-class E2 operator whose
// normalization Z / Tr Z is a Gaussian state with thermal parameters t_Z.
// Collecting factors,
//
//   T_a = p(s)^{1-a} p(t_Z)^a / p(a t_Z) (Tr Z)^a,   D_a = ln(T_a) / (a - 1).

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "gauss_renyi/e2_calculus.hpp"
#include "gauss_renyi/gaussian_state.hpp"
#include "gauss_renyi/williamson.hpp"

namespace gauss_renyi {

struct EntropyReport {
  double alpha = 0.0;
  double divergence = 0.0;  // nats
  double T_alpha = 0.0;
  double trace_Z = 0.0;
  ThermalSpec s;
  ThermalSpec t_Z;
  double p_s = 0.0;
  double p_tZ = 0.0;
  double p_alpha_tZ = 0.0;
};

/// ln p(t) = sum_j ln(1 - e^{-t_j}); infinite t_j contributes 0.
inline double log_p_of(const ThermalSpec& t) {
  double acc = 0.0;
  for (double tj : t.values()) {
    if (!std::isinf(tj)) acc += std::log(-std::expm1(-tj));
  }
  return acc;
}

inline double p_of(const ThermalSpec& t) { return std::exp(log_p_of(t)); }

inline void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must satisfy 0<alpha<1, got " + std::to_string(alpha));
  }
}

struct ReducedPair {
  GaussianState rho_prime;
  ThermalSpec s;
  SymplecticMatrix L;
};

/// Finds the Williamson form (L, s) of sigma and applies the same Gaussian
/// unitary to rho: cov -> L^T cov L, mean -> L^{-1} (mean - mean_sigma).
inline ReducedPair reduce_sigma(const GaussianState& rho, const GaussianState& sigma) {
  if (rho.n() != sigma.n()) throw DomainError("rho and sigma must have the same number of modes");
  require_physical(rho, "rho");
  require_physical(sigma, "sigma");
  WilliamsonForm form = williamson_decompose(sigma.cov());
  if (!form.t.all_finite()) {
    throw DomainError(
        "sigma must be faithful: sandwiched divergence requires supp rho in supp sigma; pure sigma modes "
        "unsupported (a symplectic eigenvalue of sigma is within pure tolerance of 1/2)");
  }
  // The same map must send sigma to (0, D(s)).
  const GaussianState sigma_prime = transform(sigma, form.L, sigma.mean());
  const RMat target = form.diagonal_form();
  const double err = max_abs(sigma_prime.cov() - target);
  if (!(err <= 1e-8 * std::max(1.0, max_abs(target)))) {
    throw NumericalError("reduce_sigma: sigma does not map to its thermal form (max deviation " +
                         std::to_string(err) + ")");
  }
  GaussianState rho_prime = transform(rho, form.L, sigma.mean());
  return ReducedPair{std::move(rho_prime), std::move(form.t), std::move(form.L)};
}

/// K = diag(exp(-s_j (1 - alpha) / (2 alpha))).
inline RVec k_matrix(const ThermalSpec& s, double alpha) {
  require_alpha(alpha);
  RVec k(static_cast<Eigen::Index>(s.size()));
  const double rate = (1.0 - alpha) / (2.0 * alpha);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (std::isinf(s[j])) throw DomainError("k_matrix: thermal parameters of sigma must be finite");
    k(static_cast<Eigen::Index>(j)) = std::exp(-s[j] * rate);
  }
  return k;
}

namespace detail {

/// e^{-t_Z} for Z = Gamma(K) rho' Gamma(K), largest first.
///
/// In the complex basis the pair (S_Z - iJ/2, S_Z + iJ/2) is equivalent to the
/// pencil ([[L, 0], [-2 conj(A), I]], [[I, -2A], [0, conj(L)]]) with (A, L) the
/// parameters of Z. Its eigenvalues below one solve
///
///   L x = lambda N(lambda) x,   N(lambda) = I - 4 A (I - lambda conj(L))^{-1} conj(A),
///
/// a hermitian-definite problem. With L = K L_rho K the left side is graded,
/// so the eigenvalues come out with relative accuracy from a Jacobi SVD of
/// R^{-1} K G (N = R R^H, L_rho = G G^H). S_Z only fixes e^{-t_Z} to absolute
/// accuracy, which is not enough once alpha t_Z is moderate but t_Z is not.
/// `start` holds those absolute values and seeds the fixed-point iteration.
inline std::vector<double> z_thermal_weights(const E2Quadruple& rho_params, const RVec& k,
                                             const std::vector<double>& start, double pure_tol) {
  const Eigen::Index n = rho_params.n();
  Eigen::SelfAdjointEigenSolver<CMat> eig(0.5 * (rho_params.Lambda + rho_params.Lambda.adjoint()));
  if (eig.info() != Eigen::Success) throw NumericalError("sandwiched_renyi: eigen solver failed on Lambda");
  // Directions of Lambda at noise level belong to pure modes of rho'.
  RVec w = eig.eigenvalues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w(i) <= pure_tol) {
      w(i) = 0.0;
    } else {
      ++rank;
    }
  }
  const CVec kc = k.cast<Complex>();
  const CMat kg = kc.asDiagonal() * (eig.eigenvectors() * w.cwiseSqrt().cast<Complex>().asDiagonal());
  const CMat lambda = kc.asDiagonal() * rho_params.Lambda * kc.asDiagonal();
  const CMat a = kc.asDiagonal() * rho_params.A * kc.asDiagonal();
  const CMat id = CMat::Identity(n, n);

  auto weight_at = [&](double mu, Eigen::Index j) {
    const Eigen::LLT<CMat> shifted(id - mu * lambda.conjugate());
    CMat nm = id - 4.0 * a * shifted.solve(a.conjugate());
    nm = 0.5 * (nm + nm.adjoint());
    const Eigen::LLT<CMat> r(nm);
    if (r.info() != Eigen::Success) throw NumericalError("sandwiched_renyi: N(lambda) is not positive definite");
    const CMat f = r.matrixL().solve(kg);
    const Eigen::JacobiSVD<CMat> svd(f.adjoint());
    const double sv = svd.singularValues()(j);
    return sv * sv;
  };

  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index j = 0; j < rank; ++j) {
    double mu = std::max(0.0, start[static_cast<std::size_t>(j)]);
    double last_step = kInf;
    for (int it = 0; it < 100; ++it) {
      const double next = weight_at(mu, j);
      const double step = std::abs(next - mu);
      mu = next;
      if (step <= 1e-15 * next || step >= last_step) break;
      last_step = step;
    }
    if (!(mu < 1.0)) throw NumericalError("sandwiched_renyi: Z has a thermal weight >= 1");
    out[static_cast<std::size_t>(j)] = mu;
  }
  return out;
}

}  // namespace detail

/// Evaluates the closed form for an already reduced pair.
inline EntropyReport sandwiched_renyi_reduced(const ReducedPair& reduced, double alpha) {
  require_alpha(alpha);
  const E2Quadruple rho_params = state_to_e2(reduced.rho_prime);
  const E2Quadruple z = gamma_sandwich(rho_params, k_matrix(reduced.s, alpha));
  const double log_trace_z = log_trace_positive_e2(z);

  // Covariance of Z / Tr Z and its symplectic spectrum.
  const Eigen::Index n = z.n();
  const detail::SpdFactor w(m_matrix(z.A, z.Lambda, ASign::Minus), Tolerances::min_eigenvalue,
                            "sandwiched_renyi: M(-A', Lambda') is not positive definite");
  RMat s_z = w.inverse() - 0.5 * RMat::Identity(2 * n, 2 * n);
  s_z = 0.5 * (s_z + s_z.transpose());
  std::vector<double> start;
  for (double d : symplectic_eigenvalues(s_z)) start.push_back((d - 0.5) / (d + 0.5));
  const std::vector<double> weights =
      detail::z_thermal_weights(rho_params, k_matrix(reduced.s, alpha), start, Tolerances::pure);

  // ln p(t_Z) and ln p(alpha t_Z) straight from the weights e^{-t_Z}.
  std::vector<double> t_z;
  double log_ptz = 0.0;
  double log_patz = 0.0;
  for (double lam : weights) {
    t_z.push_back(lam > 0.0 ? -std::log(lam) : kInf);
    if (lam > 0.0) {
      log_ptz += std::log1p(-lam);
      log_patz += std::log1p(-std::pow(lam, alpha));
    }
  }
  const double log_ps = log_p_of(reduced.s);
  const double log_t = (1.0 - alpha) * log_ps + alpha * log_ptz - log_patz + alpha * log_trace_z;

  EntropyReport report;
  report.alpha = alpha;
  report.divergence = log_t / (alpha - 1.0);
  report.T_alpha = std::exp(log_t);
  report.trace_Z = std::exp(log_trace_z);
  report.s = reduced.s;
  report.t_Z = ThermalSpec(std::move(t_z));
  report.p_s = std::exp(log_ps);
  report.p_tZ = std::exp(log_ptz);
  report.p_alpha_tZ = std::exp(log_patz);
  return report;
}

/// Sandwiched Renyi relative entropy D_alpha(rho || sigma), 0 < alpha < 1.
/// sigma must be faithful. The raw value is returned without clamping.
inline EntropyReport sandwiched_renyi(const GaussianState& rho, const GaussianState& sigma, double alpha) {
  require_alpha(alpha);
  return sandwiched_renyi_reduced(reduce_sigma(rho, sigma), alpha);
}

/// One report per alpha, in input order; sigma is reduced once.
inline std::vector<EntropyReport> sandwiched_renyi_sweep(const GaussianState& rho, const GaussianState& sigma,
                                                         std::span<const double> alphas) {
  std::vector<EntropyReport> out;
  if (alphas.empty()) return out;
  for (double a : alphas) require_alpha(a);
  const ReducedPair reduced = reduce_sigma(rho, sigma);
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back(sandwiched_renyi_reduced(reduced, a));
  return out;
}

}  // namespace gauss_renyi
