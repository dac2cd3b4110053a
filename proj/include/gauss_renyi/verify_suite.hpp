#pragma once

// Built-in closed-form vs dense-oracle comparison suite.

#include <cmath>
#include <string>
#include <vector>

#include "gauss_renyi/fock_oracle.hpp"
#include "gauss_renyi/renyi_entropy.hpp"

namespace gauss_renyi::verify {

struct Instance {
  std::string name;
  fock::GaussianRecipe rho;
  fock::GaussianRecipe sigma;
  int cutoff = 0;
  int guard_cutoff = 0;
  double tol = 0.0;
};

enum class Status { Pass, Fail, NotConverged };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::NotConverged:
      return "cutoff not converged";
  }
  return "?";
}

struct Row {
  std::string name;
  double alpha = 0.0;
  double closed = 0.0;
  double oracle = 0.0;        // at cutoff
  double oracle_guard = 0.0;  // at guard cutoff
  double diff = 0.0;          // |closed - oracle|
  int cutoff = 0;
  int guard_cutoff = 0;
  double tol = 0.0;
  Status status = Status::Fail;
};

inline constexpr int kDefaultCutoff = 60;
inline constexpr double kOneModeTol = 1e-6;
inline constexpr double kTwoModeTol = 1e-4;

/// 1-mode instances run at `cutoff` against 2*cutoff. 2-mode instances run at
/// ceil(cutoff/3) per mode against 1.5 times that; the doubled 2-mode
/// dimension is too slow for a dense eigensolver at desk scale.
/// A positive `tol` overrides both default tolerances.
inline std::vector<Instance> default_suite(int cutoff = kDefaultCutoff, double tol = 0.0) {
  using C = Complex;
  const double ln2 = std::log(2.0);
  const int c2 = (cutoff + 2) / 3;
  const int g2 = (3 * c2 + 1) / 2;
  const double t1 = tol > 0.0 ? tol : kOneModeTol;
  const double t2 = tol > 0.0 ? tol : kTwoModeTol;
  const fock::GaussianRecipe sq_disp{{1.2}, {C(0.3, -0.2)}, 0.0, {C(0.8, 0.5)}, {}};
  return {
      {"1mode/squeezed-displaced-vs-thermal", sq_disp, {{0.7}, {}, 0.0, {}, {}}, cutoff, 2 * cutoff, t1},
      {"1mode/squeezed-displaced-vs-squeezed-thermal", sq_disp, {{0.7}, {C(-0.2, 0.0)}, 0.0, {C(0.1, -0.3)}, {}},
       cutoff, 2 * cutoff, t1},
      {"1mode/coherent-vs-thermal", {{kInf}, {}, 0.0, {C(1.0, 0.0)}, {}}, {{ln2}, {}, 0.0, {}, {}}, cutoff,
       2 * cutoff, t1},
      {"1mode/squeezed-vacuum-vs-squeezed-thermal", {{kInf}, {C(0.5, 0.0)}, 0.0, {C(-0.6, 1.2)}, {}},
       {{1.0}, {C(0.0, 0.3)}, 0.0, {}, {}}, cutoff, 2 * cutoff, t1},
      {"2mode/mixed-thermal",
       {{1.0, 1.5}, {C(0.2, 0.1), C(-0.15, 0.0)}, 0.5, {C(0.4, 0.2), C(-0.3, 0.3)}, {}},
       {{0.8, 1.2}, {C(0.1, 0.0), C(0.0, 0.0)}, 0.3, {}, {}}, c2, g2, t2},
      {"2mode/mixed-squeezed-vacuum",
       {{kInf, 1.3}, {C(0.3, 0.0), C(0.0, 0.2)}, 0.7, {C(0.2, -0.1), C(0.0, 0.0)}, {}},
       {{0.9, 1.1}, {}, 0.0, {}, {}}, c2, g2, t2},
  };
}

/// Instances whose name contains `filter`; an empty filter keeps all.
inline std::vector<Instance> select(const std::vector<Instance>& suite, const std::string& filter) {
  std::vector<Instance> out;
  for (const auto& inst : suite) {
    if (filter.empty() || inst.name.find(filter) != std::string::npos) out.push_back(inst);
  }
  return out;
}

inline std::vector<Row> run_instance(const Instance& inst, std::span<const double> alphas) {
  const auto closed =
      sandwiched_renyi_sweep(fock::recipe_state(inst.rho), fock::recipe_state(inst.sigma), alphas);
  const auto oracle =
      fock::oracle_sandwiched_renyi(inst.rho, inst.sigma, alphas, inst.cutoff, inst.tol, 0.0, inst.guard_cutoff);
  std::vector<Row> rows;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    Row r;
    r.name = inst.name;
    r.alpha = alphas[i];
    r.closed = closed[i].divergence;
    r.oracle = oracle[i].value;
    r.oracle_guard = oracle[i].value_doubled;
    r.diff = std::abs(r.closed - r.oracle);
    r.cutoff = inst.cutoff;
    r.guard_cutoff = inst.guard_cutoff;
    r.tol = inst.tol;
    if (!oracle[i].converged) {
      r.status = Status::NotConverged;
    } else {
      r.status = r.diff <= inst.tol ? Status::Pass : Status::Fail;
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gauss_renyi::verify
