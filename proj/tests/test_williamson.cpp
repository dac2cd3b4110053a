#include <gtest/gtest.h>

#include <cmath>

#include "gauss_renyi/williamson.hpp"
#include "test_support.hpp"

using namespace gauss_renyi;

namespace {

/// Brute-force symplectic eigenvalues: moduli of the eigenvalues of iJS.
std::vector<double> brute_force_d(const RMat& s) {
  const Eigen::Index n = s.rows() / 2;
  const CMat ijs = Complex(0, 1) * (symplectic_form(n) * s).cast<Complex>();
  Eigen::ComplexEigenSolver<CMat> eig(ijs);
  std::vector<double> pos;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()(i).real() > 0) pos.push_back(eig.eigenvalues()(i).real());
  }
  std::sort(pos.begin(), pos.end(), std::greater<>());
  return pos;
}

}  // namespace

TEST(SymplecticEigenvalues, Examples) {
  EXPECT_NEAR(symplectic_eigenvalues(0.5 * RMat::Identity(2, 2))[0], 0.5, 1e-14);
  EXPECT_NEAR(symplectic_eigenvalues(1.5 * RMat::Identity(2, 2))[0], 1.5, 1e-14);
  RMat s(2, 2);
  s << 2.0, 0.0, 0.0, 0.125;
  EXPECT_NEAR(symplectic_eigenvalues(s)[0], 0.5, 1e-14);
}

TEST(SymplecticEigenvalues, MatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const RMat s = support::random_state(1 + trial % 3, rng).cov();
    const auto d = symplectic_eigenvalues(s);
    const auto ref = brute_force_d(s);
    ASSERT_EQ(d.size(), ref.size());
    for (std::size_t j = 0; j < d.size(); ++j) EXPECT_NEAR(d[j], ref[j], 1e-9);
  }
}

TEST(SymplecticEigenvalues, SymplecticInvariance) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 3;
    const RMat s = support::random_state(n, rng).cov();
    const RMat l = support::random_symplectic(n, rng);
    RMat moved = l.transpose() * s * l;
    moved = 0.5 * (moved + moved.transpose());
    const auto a = symplectic_eigenvalues(s);
    const auto b = symplectic_eigenvalues(moved);
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-8);
  }
}

TEST(SymplecticEigenvalues, RejectsAsymmetric) {
  RMat s = RMat::Identity(2, 2);
  s(0, 1) = 0.1;
  EXPECT_THROW(symplectic_eigenvalues(s), DomainError);
}

TEST(DToT, Examples) {
  EXPECT_TRUE(std::isinf(d_to_t(0.5)));
  EXPECT_NEAR(d_to_t(1.5), std::log(2.0), 1e-15);
  EXPECT_THROW(d_to_t(0.4), DomainError);
  EXPECT_TRUE(std::isinf(d_to_t(0.5 + 5e-10)));
}

TEST(DToT, RoundTrip) {
  for (double t : {1e-3, 0.1, 0.7, 2.0, 10.0}) {
    EXPECT_NEAR(d_to_t(t_to_d(t)), t, 1e-10 * t);
  }
  // d - 1/2 ~ e^{-t} falls under the pure tolerance.
  EXPECT_TRUE(std::isinf(d_to_t(t_to_d(25.0))));
}

TEST(WilliamsonDecompose, Vacuum) {
  const WilliamsonForm f = williamson_decompose(0.5 * RMat::Identity(2, 2));
  EXPECT_NEAR(f.d[0], 0.5, 1e-14);
  EXPECT_TRUE(std::isinf(f.t[0]));
  EXPECT_NEAR(max_abs(f.L.matrix().transpose() * f.L.matrix() - RMat::Identity(2, 2)), 0.0, 1e-12);
}

TEST(WilliamsonDecompose, SqueezedVacuum) {
  const double r = 0.5;
  RMat s(2, 2);
  s << 0.5 * std::exp(2 * r), 0, 0, 0.5 * std::exp(-2 * r);
  const WilliamsonForm f = williamson_decompose(s);
  EXPECT_NEAR(f.d[0], 0.5, 1e-12);
  EXPECT_NEAR(max_abs(f.L.matrix().transpose() * s * f.L.matrix() - 0.5 * RMat::Identity(2, 2)), 0.0, 1e-12);
  // Up to a rotation, L = diag(e^{-r}, e^{r}).
  EXPECT_NEAR(std::abs(f.L.matrix()(0, 0)) + std::abs(f.L.matrix()(0, 1)), std::exp(-r), 1e-12);
}

TEST(WilliamsonDecompose, ConstructThenDecompose) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + trial % 3;
    const ThermalSpec t0 = support::random_thermal(n, rng, 0.05, 8.0);
    const RMat l0 = support::random_symplectic(n, rng, 0.5);
    const RMat l0_inv = -symplectic_form(n) * l0.transpose() * symplectic_form(n);
    RMat s = l0_inv.transpose() * thermal_state(t0).cov() * l0_inv;
    s = 0.5 * (s + s.transpose());

    const WilliamsonForm f = williamson_decompose(s);
    const RMat& l = f.L.matrix();
    EXPECT_LE(SymplecticMatrix::symplectic_error(l), 1e-10);
    EXPECT_LE(max_abs(l.transpose() * s * l - f.diagonal_form()), 1e-8);
    for (std::size_t j = 0; j < t0.size(); ++j) {
      EXPECT_NEAR(f.d[j], t_to_d(t0[j]), 1e-8 * f.d[j]);
      if (j > 0) {
        EXPECT_LE(f.t[j - 1], f.t[j]);
      }
    }
  }
}

TEST(WilliamsonDecompose, DegenerateSpectrum) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + trial % 2;
    std::vector<double> t(static_cast<std::size_t>(n), 0.9);
    const RMat l0 = support::random_symplectic(n, rng, 0.5);
    RMat s = l0.transpose() * thermal_state(ThermalSpec(t)).cov() * l0;
    s = 0.5 * (s + s.transpose());
    const WilliamsonForm f = williamson_decompose(s);
    EXPECT_LE(SymplecticMatrix::symplectic_error(f.L.matrix()), 1e-10);
    EXPECT_LE(max_abs(f.L.matrix().transpose() * s * f.L.matrix() - f.diagonal_form()), 1e-8);
  }
}

TEST(WilliamsonDecompose, Deterministic) {
  std::mt19937_64 rng(25);
  const RMat s = support::random_state(3, rng).cov();
  const WilliamsonForm a = williamson_decompose(s);
  const WilliamsonForm b = williamson_decompose(s);
  EXPECT_TRUE(a.L.matrix() == b.L.matrix());
}
