#include <gtest/gtest.h>

#include <cmath>

#include "gauss_renyi/gaussian_state.hpp"
#include "test_support.hpp"

using namespace gauss_renyi;

namespace {

GaussianState diag_state(std::initializer_list<double> d) {
  RVec v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return GaussianState(RVec::Zero(v.size()), v.asDiagonal());
}

}  // namespace

TEST(GaussianState, ShapeChecks) {
  EXPECT_THROW(GaussianState(RVec::Zero(3), RMat::Identity(3, 3)), DomainError);
  EXPECT_THROW(GaussianState(RVec::Zero(2), RMat::Identity(4, 4)), DomainError);
}

TEST(ValidateState, Vacuum) { EXPECT_TRUE(validate_state(diag_state({0.5, 0.5})).ok()); }

TEST(ValidateState, BelowUncertaintyBound) {
  const auto v = validate_state(diag_state({0.25, 0.25}));
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violations[0].check, "symplectic_eigenvalue");
  EXPECT_NEAR(v.violations[0].value, 0.25, 1e-12);
  EXPECT_NE(v.describe().find("0.25"), std::string::npos);
}

TEST(ValidateState, PureSqueezedIsOk) { EXPECT_TRUE(validate_state(diag_state({2.0, 0.125})).ok()); }

TEST(ValidateState, Asymmetric) {
  RMat cov = 0.5 * RMat::Identity(2, 2);
  cov(0, 1) = 1e-6;
  const auto v = validate_state(GaussianState(RVec::Zero(2), cov));
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violations[0].check, "symmetry");
}

TEST(ThermalState, Examples) {
  EXPECT_TRUE(thermal_state(ThermalSpec({kInf})).cov().isApprox(0.5 * RMat::Identity(2, 2)));
  const RMat s = thermal_state(ThermalSpec({std::log(2.0)})).cov();
  EXPECT_NEAR(max_abs(s - 1.5 * RMat::Identity(2, 2)), 0.0, 1e-14);
  const RMat s2 = thermal_state(ThermalSpec({std::log(2.0), kInf})).cov();
  RVec expect(4);
  expect << 1.5, 0.5, 1.5, 0.5;
  EXPECT_NEAR(max_abs(s2 - RMat(expect.asDiagonal())), 0.0, 1e-14);
}

TEST(ThermalState, SymplecticEigenvaluesMatchCoth) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ThermalSpec t = support::random_thermal(1 + trial % 3, rng, 0.01, 20.0);
    const GaussianState s = thermal_state(t);
    EXPECT_TRUE(validate_state(s).ok());
    const auto d = symplectic_eigenvalues(s.cov());
    for (std::size_t j = 0; j < t.size(); ++j) EXPECT_NEAR(d[j], 0.5 / std::tanh(0.5 * t[j]), 1e-10 * d[j]);
  }
}

TEST(ThermalSpec, RejectsBadValues) {
  EXPECT_THROW(ThermalSpec({0.0}), DomainError);
  EXPECT_THROW(ThermalSpec({2.0, 1.0}), DomainError);
  EXPECT_THROW(ThermalSpec({NAN}), DomainError);
  EXPECT_NO_THROW(ThermalSpec({1.0, kInf}));
}

TEST(CoherentState, Examples) {
  CVec g(1);
  g << Complex(1, 0);
  GaussianState s = coherent_state(g);
  EXPECT_EQ(s.mean()(0), 1.0);
  EXPECT_EQ(s.mean()(1), 0.0);
  g << Complex(0, 1);
  s = coherent_state(g);
  EXPECT_EQ(s.mean()(0), 0.0);
  EXPECT_EQ(s.mean()(1), 1.0);
  EXPECT_TRUE(s.cov().isApprox(0.5 * RMat::Identity(2, 2)));
}

TEST(SqueezedVacuum, PureForAnyR) {
  for (double r : {-2.0, -0.3, 0.0, 0.5, 3.0}) {
    const GaussianState s = squeezed_vacuum(r);
    EXPECT_TRUE(validate_state(s).ok());
    EXPECT_NEAR(symplectic_eigenvalues(s.cov())[0], 0.5, 1e-10);
  }
  EXPECT_NEAR(squeezed_vacuum(0.5).cov()(0, 0), 0.5 * std::exp(1.0), 1e-15);
  EXPECT_THROW(squeezed_vacuum(5.5), DomainError);
}

TEST(Tensor, Examples) {
  const GaussianState vac = thermal_state(ThermalSpec({kInf}));
  EXPECT_TRUE(tensor(vac, vac).cov().isApprox(0.5 * RMat::Identity(4, 4)));
  const GaussianState th = thermal_state(ThermalSpec({std::log(2.0)}));
  const GaussianState joined = tensor(th, vac);
  EXPECT_NEAR(max_abs(joined.cov() - thermal_state(ThermalSpec({std::log(2.0), kInf})).cov()), 0.0, 1e-15);
}

TEST(Tensor, SpectrumIsUnionAndAssociative) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const GaussianState a = support::random_state(1, rng);
    const GaussianState b = support::random_state(2, rng);
    const GaussianState c = support::random_state(1, rng);
    auto da = symplectic_eigenvalues(a.cov());
    const auto db = symplectic_eigenvalues(b.cov());
    da.insert(da.end(), db.begin(), db.end());
    std::sort(da.begin(), da.end(), std::greater<>());
    const auto dab = symplectic_eigenvalues(tensor(a, b).cov());
    for (std::size_t j = 0; j < da.size(); ++j) EXPECT_NEAR(dab[j], da[j], 1e-9);

    const GaussianState left = tensor(tensor(a, b), c);
    const GaussianState right = tensor(a, tensor(b, c));
    EXPECT_TRUE(left.cov() == right.cov());
    EXPECT_TRUE(left.mean() == right.mean());
  }
}

TEST(Transform, ThermalFormOfSqueezedThermal) {
  // sigma = squeezed thermal diag(1.5 e, 1.5 / e) maps to 1.5 I.
  RMat cov(2, 2);
  cov << 1.5 * std::exp(1.0), 0, 0, 1.5 * std::exp(-1.0);
  RMat l(2, 2);
  l << std::exp(-0.5), 0, 0, std::exp(0.5);
  const GaussianState out = transform(GaussianState(RVec::Zero(2), cov), SymplecticMatrix(l), RVec::Zero(2));
  EXPECT_NEAR(max_abs(out.cov() - 1.5 * RMat::Identity(2, 2)), 0.0, 1e-14);
}
