#pragma once

// Brute-force reference: dense density matrices on a truncated Fock basis and
// the sandwiched Renyi divergence by hermitian eigendecomposition.
//
// Nothing here calls the E2 calculus or the Williamson code. States are built
// from construction recipes (thermal -> squeeze -> beam splitter -> phase ->
// displacement) out of ladder operators and matrix exponentials.
//
// Basis ordering for several modes is |k_1, ..., k_n> with index
// k_1 * N^{n-1} + ... + k_n (mode 0 most significant).

#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "gauss_renyi/types.hpp"

namespace gauss_renyi::fock {

struct FockOperator {
  int n_modes = 1;
  int cutoff = 1;
  CMat mat;

  Eigen::Index dim() const { return mat.rows(); }
  Complex trace() const { return mat.trace(); }
  double hermiticity_error() const { return max_abs(CMat(mat - mat.adjoint())); }
};

namespace detail {

inline Eigen::Index ipow(Eigen::Index base, int exp) {
  Eigen::Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline CMat ladder(int cutoff) {
  CMat a = CMat::Zero(cutoff, cutoff);
  for (int k = 1; k < cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

inline Eigen::SparseMatrix<Complex> sparse_annihilator(int mode, int n_modes, int cutoff) {
  const Eigen::Index dim = ipow(cutoff, n_modes);
  const Eigen::Index stride = ipow(cutoff, n_modes - 1 - mode);
  std::vector<Eigen::Triplet<Complex>> entries;
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const Eigen::Index k = (idx / stride) % cutoff;
    if (k > 0) entries.emplace_back(idx - stride, idx, std::sqrt(static_cast<double>(k)));
  }
  Eigen::SparseMatrix<Complex> a(dim, dim);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

/// (A1 (x) A2) Y for W x W single-mode matrices and Y with W^2 rows.
inline CMat kron_apply(const CMat& a1, const CMat& a2, const CMat& y) {
  const Eigen::Index w = a1.rows();
  CMat out(y.rows(), y.cols());
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    // Column-major reshape: X(i2, i1) = y(i1 * w + i2).
    Eigen::Map<const CMat> x(y.col(c).data(), w, w);
    Eigen::Map<CMat> r(out.col(c).data(), w, w);
    r.noalias() = a2 * x * a1.transpose();
  }
  return out;
}

/// States |k, n - k> of total photon number n inside a W x W truncation.
inline std::vector<std::pair<int, int>> number_block(int total, int w) {
  std::vector<std::pair<int, int>> states;
  for (int k = std::max(0, total - w + 1); k <= std::min(total, w - 1); ++k) states.emplace_back(k, total - k);
  return states;
}

/// exp(theta (a1^dag a2 - a1 a2^dag)) restricted to one total-number block.
inline CMat beam_splitter_block(double theta, const std::vector<std::pair<int, int>>& states) {
  const auto m = static_cast<Eigen::Index>(states.size());
  CMat g = CMat::Zero(m, m);
  // States are ordered by the photon count in mode 1, so a1^dag a2 raises the
  // index by one.
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    const int k = states[static_cast<std::size_t>(i)].first;
    const int l = states[static_cast<std::size_t>(i)].second;
    const double amp = std::sqrt(static_cast<double>(k + 1) * static_cast<double>(l));
    g(i + 1, i) = theta * amp;   // a1^dag a2 |k, l> = sqrt((k+1) l) |k+1, l-1>
    g(i, i + 1) = -theta * amp;  // -a1 a2^dag |k+1, l-1> = -sqrt((k+1) l) |k, l>
  }
  return g.exp();
}

/// Applies the two-mode beam splitter of a W x W truncation to the rows of Y.
inline CMat beam_splitter_apply(double theta, int w, const CMat& y) {
  CMat out = CMat::Zero(y.rows(), y.cols());
  for (int total = 0; total <= 2 * (w - 1); ++total) {
    const auto states = number_block(total, w);
    const CMat u = beam_splitter_block(theta, states);
    std::vector<Eigen::Index> rows;
    rows.reserve(states.size());
    for (const auto& [k, l] : states) rows.push_back(static_cast<Eigen::Index>(k) * w + l);
    CMat gathered(static_cast<Eigen::Index>(rows.size()), y.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) gathered.row(static_cast<Eigen::Index>(i)) = y.row(rows[i]);
    const CMat mixed = u * gathered;
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(rows[i]) = mixed.row(static_cast<Eigen::Index>(i));
  }
  return out;
}

}  // namespace detail

/// Ladder operator a_mode on n_modes modes, each truncated to `cutoff` levels.
inline FockOperator annihilator(int mode, int n_modes, int cutoff) {
  if (n_modes < 1 || mode < 0 || mode >= n_modes || cutoff < 1) {
    throw DomainError("annihilator: invalid mode index or cutoff");
  }
  return {n_modes, cutoff, CMat(detail::sparse_annihilator(mode, n_modes, cutoff))};
}

/// p(t) sum_k e^{-k t} |k><k|, truncated at `cutoff` levels (trace 1 - e^{-N t}).
inline FockOperator thermal_density(double t, int cutoff) {
  if (!(t > 0.0) || std::isinf(t)) throw DomainError("thermal_density: t must be positive and finite");
  RVec diag(cutoff);
  const double p = -std::expm1(-t);
  for (int k = 0; k < cutoff; ++k) diag(k) = p * std::exp(-t * k);
  return {1, cutoff, diag.cast<Complex>().asDiagonal()};
}

/// exp(gamma a^dag - conj(gamma) a) on a truncated single mode.
inline FockOperator displace(Complex gamma, int cutoff) {
  if (!(std::abs(gamma) <= 3.0)) throw DomainError("displace: |gamma| must be <= 3");
  const CMat a = detail::ladder(cutoff);
  const CMat gen = gamma * a.adjoint() - std::conj(gamma) * a;
  return {1, cutoff, gen.exp()};
}

/// exp((conj(z) a^2 - z a^dag^2) / 2) on a truncated single mode.
inline FockOperator squeeze(Complex z, int cutoff) {
  if (!(std::abs(z) <= 1.0)) throw DomainError("squeeze: |z| must be <= 1");
  const CMat a = detail::ladder(cutoff);
  const CMat a2 = a * a;
  const CMat gen = 0.5 * (std::conj(z) * a2 - z * a2.adjoint());
  return {1, cutoff, gen.exp()};
}

/// exp(theta (a1^dag a2 - a1 a2^dag)) on two modes truncated to `cutoff`
/// levels each. Built block by block in total photon number.
inline FockOperator beam_splitter(double theta, int cutoff) {
  const Eigen::Index dim = static_cast<Eigen::Index>(cutoff) * cutoff;
  return {2, cutoff, detail::beam_splitter_apply(theta, cutoff, CMat::Identity(dim, dim))};
}

/// Construction recipe of a 1- or 2-mode Gaussian state:
/// thermal(t) -> squeeze(z_j) per mode -> beam splitter (2 modes) ->
/// phase exp(i phi_j a_j^dag a_j) -> displace(gamma_j).
/// t_j = inf gives a vacuum mode.
struct GaussianRecipe {
  std::vector<double> thermal;
  std::vector<Complex> squeeze;       // empty = none
  double mixing = 0.0;                // beam-splitter angle, 2 modes only
  std::vector<Complex> displacement;  // empty = none
  std::vector<double> phase;          // empty = none

  int n_modes() const { return static_cast<int>(thermal.size()); }
};

namespace detail {

inline void require_recipe(const GaussianRecipe& r) {
  const int n = r.n_modes();
  if (n < 1 || n > 2) throw DomainError("unsupported recipe: only 1- and 2-mode states are supported");
  if (!r.squeeze.empty() && static_cast<int>(r.squeeze.size()) != n) {
    throw DomainError("unsupported recipe: squeeze needs one entry per mode");
  }
  if (!r.displacement.empty() && static_cast<int>(r.displacement.size()) != n) {
    throw DomainError("unsupported recipe: displacement needs one entry per mode");
  }
  if (!r.phase.empty() && static_cast<int>(r.phase.size()) != n) {
    throw DomainError("unsupported recipe: phase needs one entry per mode");
  }
  if (n == 1 && r.mixing != 0.0) throw DomainError("unsupported recipe: beam splitter needs 2 modes");
  for (double t : r.thermal) {
    if (!(t > 0.0)) throw DomainError("unsupported recipe: thermal parameters must be in (0, inf]");
  }
}

inline RVec thermal_weights(double t, int w) {
  RVec p = RVec::Zero(w);
  if (std::isinf(t)) {
    p(0) = 1.0;
    return p;
  }
  const double norm = -std::expm1(-t);
  for (int k = 0; k < w; ++k) p(k) = norm * std::exp(-t * k);
  return p;
}

/// Real representation T of a' = X a + Y a^dag acting on (Re a; Im a).
inline RMat real_action(const CMat& x, const CMat& y) {
  const Eigen::Index n = x.rows();
  RMat t(2 * n, 2 * n);
  t.topLeftCorner(n, n) = x.real() + y.real();
  t.topRightCorner(n, n) = -x.imag() + y.imag();
  t.bottomLeftCorner(n, n) = x.imag() + y.imag();
  t.bottomRightCorner(n, n) = x.real() - y.real();
  return t;
}

}  // namespace detail

/// Moments of the recipe's state in the GaussianState frame, propagated
/// analytically through the Heisenberg action of each unitary.
inline GaussianState recipe_state(const GaussianRecipe& r) {
  detail::require_recipe(r);
  const int n = r.n_modes();
  // Standard frame: covariance of (q_1..q_n, p_1..p_n), mean <a>.
  RVec diag(2 * n);
  for (int j = 0; j < n; ++j) {
    const double t = r.thermal[static_cast<std::size_t>(j)];
    diag(j) = diag(n + j) = std::isinf(t) ? 0.5 : 0.5 / std::tanh(0.5 * t);
  }
  RMat cov = diag.asDiagonal();
  RVec mean = RVec::Zero(2 * n);

  auto apply = [&](const CMat& x, const CMat& y) {
    const RMat t = detail::real_action(x, y);
    cov = t * cov * t.transpose();
    mean = t * mean;
  };
  if (!r.squeeze.empty()) {
    CMat x = CMat::Zero(n, n);
    CMat y = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      const Complex z = r.squeeze[static_cast<std::size_t>(j)];
      const double mag = std::abs(z);
      x(j, j) = std::cosh(mag);
      y(j, j) = -std::polar(1.0, std::arg(z)) * std::sinh(mag);
    }
    apply(x, y);
  }
  if (n == 2 && r.mixing != 0.0) {
    const double c = std::cos(r.mixing);
    const double s = std::sin(r.mixing);
    CMat x(2, 2);
    x << c, s, -s, c;
    apply(x, CMat::Zero(2, 2));
  }
  if (!r.phase.empty()) {
    CMat x = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) x(j, j) = std::polar(1.0, r.phase[static_cast<std::size_t>(j)]);
    apply(x, CMat::Zero(n, n));
  }
  if (!r.displacement.empty()) {
    for (int j = 0; j < n; ++j) {
      mean(j) += r.displacement[static_cast<std::size_t>(j)].real();
      mean(n + j) += r.displacement[static_cast<std::size_t>(j)].imag();
    }
  }
  const RMat j = symplectic_form(n);
  RMat framed = j * cov * j.transpose();
  framed = 0.5 * (framed + framed.transpose());
  return GaussianState(std::move(mean), std::move(framed));
}

/// Dense density matrix of the recipe on `cutoff` levels per mode.
///
/// Unitaries are built on a padded truncation (cutoff + pad levels) and the
/// final matrix is cut back to `cutoff`, so truncation artefacts of the
/// matrix exponentials stay outside the returned block.
inline FockOperator state_to_fock(const GaussianRecipe& r, int cutoff, int pad = -1) {
  detail::require_recipe(r);
  if (cutoff < 2) throw DomainError("state_to_fock: cutoff must be at least 2");
  const int n = r.n_modes();
  if (pad < 0) pad = n == 1 ? std::max(20, cutoff / 2) : std::max(8, cutoff / 4);
  const int w = cutoff + pad;

  std::vector<CMat> sq(static_cast<std::size_t>(n)), disp(static_cast<std::size_t>(n));
  std::vector<RVec> weights(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    sq[ju] = r.squeeze.empty() ? CMat::Identity(w, w) : squeeze(r.squeeze[ju], w).mat;
    disp[ju] = r.displacement.empty() ? CMat::Identity(w, w) : displace(r.displacement[ju], w).mat;
    weights[ju] = detail::thermal_weights(r.thermal[ju], w);
  }

  // rho = V V^dag with V = U diag(sqrt(p)); columns of negligible weight dropped.
  constexpr double kWeightFloor = 1e-22;
  CMat v;
  if (n == 1) {
    std::vector<int> cols;
    for (int k = 0; k < w; ++k) {
      if (weights[0](k) > kWeightFloor) cols.push_back(k);
    }
    CMat y(w, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      y.col(static_cast<Eigen::Index>(c)) = sq[0].col(cols[c]) * std::sqrt(weights[0](cols[c]));
    }
    if (!r.phase.empty()) {
      for (int k = 0; k < w; ++k) y.row(k) *= std::polar(1.0, r.phase[0] * k);
    }
    v = (disp[0] * y).topRows(cutoff);
  } else {
    std::vector<std::pair<int, int>> cols;
    for (int k1 = 0; k1 < w; ++k1) {
      for (int k2 = 0; k2 < w; ++k2) {
        if (weights[0](k1) * weights[1](k2) > kWeightFloor) cols.emplace_back(k1, k2);
      }
    }
    const Eigen::Index wide = static_cast<Eigen::Index>(w) * w;
    CMat y(wide, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto [k1, k2] = cols[c];
      const double amp = std::sqrt(weights[0](k1) * weights[1](k2));
      for (int i1 = 0; i1 < w; ++i1) {
        y.col(static_cast<Eigen::Index>(c)).segment(static_cast<Eigen::Index>(i1) * w, w) =
            sq[0](i1, k1) * sq[1].col(k2) * amp;
      }
    }
    if (r.mixing != 0.0) y = detail::beam_splitter_apply(r.mixing, w, y);
    if (!r.phase.empty()) {
      for (int k1 = 0; k1 < w; ++k1) {
        for (int k2 = 0; k2 < w; ++k2) {
          y.row(static_cast<Eigen::Index>(k1) * w + k2) *= std::polar(1.0, r.phase[0] * k1 + r.phase[1] * k2);
        }
      }
    }
    if (!r.displacement.empty()) y = detail::kron_apply(disp[0], disp[1], y);
    v.resize(static_cast<Eigen::Index>(cutoff) * cutoff, y.cols());
    for (int i1 = 0; i1 < cutoff; ++i1) {
      v.middleRows(static_cast<Eigen::Index>(i1) * cutoff, cutoff) =
          y.middleRows(static_cast<Eigen::Index>(i1) * w, cutoff);
    }
  }
  CMat rho = v * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return {n, cutoff, std::move(rho)};
}

/// First and second moments of a dense state, in the GaussianState frame.
inline GaussianState fock_moments(const FockOperator& rho) {
  const int n = rho.n_modes;
  std::vector<Eigen::SparseMatrix<Complex>> a;
  for (int j = 0; j < n; ++j) a.push_back(detail::sparse_annihilator(j, n, rho.cutoff));
  auto expect = [&](const Eigen::SparseMatrix<Complex>& op) {
    Complex acc = 0.0;
    for (int k = 0; k < op.outerSize(); ++k) {
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(op, k); it; ++it) acc += it.value() * rho.mat(it.col(), it.row());
    }
    return acc;
  };
  CVec m(n);
  for (int j = 0; j < n; ++j) m(j) = expect(a[static_cast<std::size_t>(j)]);
  RMat cov(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& ai = a[static_cast<std::size_t>(i)];
      const auto& aj = a[static_cast<std::size_t>(j)];
      const Eigen::SparseMatrix<Complex> aa = ai * aj;
      const Eigen::SparseMatrix<Complex> nn = Eigen::SparseMatrix<Complex>(ai.adjoint()) * aj;
      const Complex big_m = expect(aa) - m(i) * m(j);
      const Complex big_n = expect(nn) - std::conj(m(i)) * m(j);
      const double delta = i == j ? 0.5 : 0.0;
      cov(i, j) = big_m.real() + big_n.real() + delta;          // q_i q_j
      cov(n + i, n + j) = -big_m.real() + big_n.real() + delta;  // p_i p_j
      cov(i, n + j) = big_m.imag() + big_n.imag();               // q_i p_j
      cov(n + j, i) = cov(i, n + j);
    }
  }
  const RMat jm = symplectic_form(n);
  RMat framed = jm * cov * jm.transpose();
  framed = 0.5 * (framed + framed.transpose());
  RVec mean(2 * n);
  mean << m.real(), m.imag();
  return GaussianState(std::move(mean), std::move(framed));
}

/// <e(conj u)| rho |e(v)> as a truncated series.
inline Complex fock_generating_function(const FockOperator& rho, const CVec& u, const CVec& v) {
  if (u.size() != rho.n_modes || v.size() != rho.n_modes) {
    throw DomainError("fock_generating_function: argument length must equal the mode count");
  }
  auto exp_vector = [&](const CVec& z) {
    CVec out = CVec::Ones(1);
    for (int j = 0; j < rho.n_modes; ++j) {
      CVec single(rho.cutoff);
      Complex term = 1.0;
      for (int k = 0; k < rho.cutoff; ++k) {
        single(k) = term;
        term *= z(j) / std::sqrt(static_cast<double>(k + 1));
      }
      CVec next(out.size() * single.size());
      for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * single.size(), single.size()) = out(i) * single;
      out = std::move(next);
    }
    return out;
  };
  return (exp_vector(u).transpose() * rho.mat * exp_vector(v)).value();
}

/// Sandwiched Renyi divergence by eigendecomposition, reusing the
/// decomposition of sigma across alpha values. Fractional powers of sigma are
/// taken on eigenvalues above `eig_floor`; the rest count as exact zeros.
/// A positive floor biases the result once the sigma exponent is small (alpha
/// near 1); floor 0 lets truncation noise through for small alpha.
class DenseRenyi {
 public:
  DenseRenyi(const FockOperator& rho, const FockOperator& sigma, double eig_floor = 1e-12)
      : rho_(rho.mat), eig_floor_(eig_floor) {
    if (rho.dim() != sigma.dim()) throw DomainError("dense_sandwiched_renyi: dimension mismatch");
    const double tol = 1e-10;
    if (rho.hermiticity_error() > tol || sigma.hermiticity_error() > tol) {
      throw DomainError("dense_sandwiched_renyi: input is not hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMat> eig(0.5 * (sigma.mat + sigma.mat.adjoint()));
    if (eig.info() != Eigen::Success) throw NumericalError("dense_sandwiched_renyi: eigen solver failed");
    sigma_vals_ = eig.eigenvalues();
    sigma_vecs_ = eig.eigenvectors();
    rho_in_basis_ = sigma_vecs_.adjoint() * rho_ * sigma_vecs_;
  }

  double operator()(double alpha) const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must satisfy 0<alpha<1");
    const double beta = (1.0 - alpha) / (2.0 * alpha);
    RVec scale(sigma_vals_.size());
    for (Eigen::Index i = 0; i < scale.size(); ++i) {
      scale(i) = sigma_vals_(i) > eig_floor_ ? std::pow(sigma_vals_(i), beta) : 0.0;
    }
    // In sigma's eigenbasis the sandwich is a diagonal scaling.
    CMat x = scale.asDiagonal() * rho_in_basis_ * scale.asDiagonal();
    x = 0.5 * (x + x.adjoint());
    // x is graded over many orders of magnitude and small alpha amplifies
    // absolute eigenvalue noise. One-sided Jacobi is relatively accurate but
    // cubic with a large constant, so it is kept to small dimensions.
    RVec lams;
    if (x.rows() <= kJacobiMaxDim) {
      lams = Eigen::JacobiSVD<CMat>(x).singularValues();
    } else {
      Eigen::SelfAdjointEigenSolver<CMat> eig(x, Eigen::EigenvaluesOnly);
      if (eig.info() != Eigen::Success) throw NumericalError("dense_sandwiched_renyi: eigen solver failed");
      lams = eig.eigenvalues();
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < lams.size(); ++i) {
      if (lams(i) > 0.0) acc += std::pow(lams(i), alpha);
    }
    return std::log(acc) / (alpha - 1.0);
  }

 private:
  static constexpr Eigen::Index kJacobiMaxDim = 256;
  CMat rho_;
  double eig_floor_;
  RVec sigma_vals_;
  CMat sigma_vecs_;
  CMat rho_in_basis_;
};

inline double dense_sandwiched_renyi(const FockOperator& rho, const FockOperator& sigma, double alpha,
                                     double eig_floor = 1e-12) {
  return DenseRenyi(rho, sigma, eig_floor)(alpha);
}

/// Oracle values at cutoff N and at a larger guard cutoff (2N by default).
struct OracleValue {
  double alpha = 0.0;
  double value = 0.0;          // at cutoff N
  double value_doubled = 0.0;  // at the guard cutoff
  bool converged = false;      // |value - value_doubled| < tol
};

inline std::vector<OracleValue> oracle_sandwiched_renyi(const GaussianRecipe& rho, const GaussianRecipe& sigma,
                                                        std::span<const double> alphas, int cutoff, double tol,
                                                        double eig_floor = 1e-12, int guard_cutoff = 0) {
  if (guard_cutoff == 0) guard_cutoff = 2 * cutoff;
  if (guard_cutoff <= cutoff) throw DomainError("oracle: guard cutoff must exceed the cutoff");
  const DenseRenyi base(state_to_fock(rho, cutoff), state_to_fock(sigma, cutoff), eig_floor);
  const DenseRenyi doubled(state_to_fock(rho, guard_cutoff), state_to_fock(sigma, guard_cutoff), eig_floor);
  std::vector<OracleValue> out;
  for (double a : alphas) {
    OracleValue v{a, base(a), doubled(a), false};
    v.converged = std::abs(v.value - v.value_doubled) < tol;
    out.push_back(v);
  }
  return out;
}

}  // namespace gauss_renyi::fock
