#pragma once

// JSON state files and reports. Numbers are written at 12 significant digits;
// infinities are the string "inf".

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gauss_renyi/e2_calculus.hpp"
#include "gauss_renyi/gaussian_state.hpp"
#include "gauss_renyi/renyi_entropy.hpp"
#include "gauss_renyi/williamson.hpp"

namespace gauss_renyi::io {

using nlohmann::json;

inline constexpr int kDigits = 12;

/// x rounded to 12 significant digits. The result prints back as the same
/// 12-digit decimal under a shortest round-trip formatter.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kDigits, x);
  return std::strtod(buf, nullptr);
}

inline std::string format12(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kDigits, x);
  return buf;
}

inline json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return round12(x);
}

inline double real_from(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw InputError(where + ": expected a number or \"inf\"");
}

inline json complex_json(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

inline Complex complex_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw InputError(where + ": expected [re, im]");
  return {real_from(j[0], where), real_from(j[1], where)};
}

inline json vector_json(const RVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

inline json vector_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

inline json matrix_json(const RMat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(RVec(m.row(i).transpose())));
  return out;
}

inline json matrix_json(const CMat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

inline RVec rvec_from(const json& j, Eigen::Index size, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size) {
    throw InputError(where + ": expected an array of " + std::to_string(size) + " numbers");
  }
  RVec v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = real_from(j[static_cast<std::size_t>(i)], where);
  return v;
}

inline CVec cvec_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InputError(where + ": expected a non-empty array of [re, im]");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(j[i], where);
  return v;
}

inline CMat cmat_from(const json& j, Eigen::Index n, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) throw InputError(where + ": expected n rows");
  CMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw InputError(where + ": expected n columns");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from(row[static_cast<std::size_t>(k)], where);
  }
  return m;
}

inline GaussianState state_from_builder(const json& b) {
  if (!b.is_object() || b.size() != 1) {
    throw InputError("builder: expected exactly one of thermal, coherent, squeezed_vacuum");
  }
  if (b.contains("thermal")) {
    const json& t = b["thermal"];
    if (!t.is_array() || t.empty()) throw InputError("builder.thermal: expected a non-empty array");
    std::vector<double> values;
    for (const auto& x : t) values.push_back(real_from(x, "builder.thermal"));
    return thermal_state(ThermalSpec(std::move(values)));
  }
  if (b.contains("coherent")) return coherent_state(cvec_from(b["coherent"], "builder.coherent"));
  if (b.contains("squeezed_vacuum")) return squeezed_vacuum(real_from(b["squeezed_vacuum"], "builder.squeezed_vacuum"));
  throw InputError("builder: unknown shorthand " + b.begin().key());
}

/// Parses {"n", "mean", "cov"} or {"builder": {...}}. Shape problems are
/// InputError; physicality is left to the caller.
inline GaussianState state_from_json(const json& j) {
  if (!j.is_object()) throw InputError("state: expected a JSON object");
  if (j.contains("builder")) return state_from_builder(j["builder"]);
  for (const char* key : {"n", "mean", "cov"}) {
    if (!j.contains(key)) throw InputError(std::string("state: missing \"") + key + "\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) throw InputError("state.n: expected a positive integer");
  const auto n = static_cast<Eigen::Index>(j["n"].get<long long>());
  const RVec mean = rvec_from(j["mean"], 2 * n, "state.mean");
  const json& c = j["cov"];
  if (!c.is_array() || static_cast<Eigen::Index>(c.size()) != 2 * n) throw InputError("state.cov: expected 2n rows");
  RMat cov(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) cov.row(i) = rvec_from(c[static_cast<std::size_t>(i)], 2 * n, "state.cov").transpose();
  if (!mean.allFinite() || !cov.allFinite()) throw InputError("state: mean and cov must be finite");
  return GaussianState(mean, cov);
}

inline json state_json(const GaussianState& s) {
  return {{"n", s.n()}, {"mean", vector_json(s.mean())}, {"cov", matrix_json(s.cov())}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

inline GaussianState load_state(const std::string& path) {
  try {
    return state_from_json(read_json_file(path));
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0 || what.rfind("cannot open", 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

/// Report fields at 12 digits. divergence is recomputed from the printed
/// alpha and T_alpha, so a reader doing the same arithmetic on the parsed
/// values gets the printed divergence back.
inline json report_json(const EntropyReport& r) {
  const double alpha = round12(r.alpha);
  const double t_alpha = round12(r.T_alpha);
  return {{"alpha", alpha},
          {"divergence", round12(std::log(t_alpha) / (alpha - 1.0))},
          {"T_alpha", t_alpha},
          {"trace_Z", number(r.trace_Z)},
          {"s", vector_json(r.s.values())},
          {"t_Z", vector_json(r.t_Z.values())},
          {"p_s", number(r.p_s)},
          {"p_tZ", number(r.p_tZ)},
          {"p_alpha_tZ", number(r.p_alpha_tZ)}};
}

inline json williamson_json(const WilliamsonForm& f) {
  return {{"d", vector_json(f.d)}, {"t", vector_json(f.t.values())}, {"L", matrix_json(f.L.matrix())}};
}

inline json e2_json(const E2Quadruple& p) {
  json mu = json::array();
  for (Eigen::Index i = 0; i < p.mu.size(); ++i) mu.push_back(complex_json(p.mu(i)));
  return {{"c", number(p.c)}, {"mu", mu}, {"A", matrix_json(p.A)}, {"Lambda", matrix_json(p.Lambda)}};
}

inline E2Quadruple e2_from_json(const json& j) {
  for (const char* key : {"c", "mu", "A", "Lambda"}) {
    if (!j.contains(key)) throw InputError(std::string("quadruple: missing \"") + key + "\"");
  }
  E2Quadruple p;
  p.c = real_from(j["c"], "quadruple.c");
  p.mu = cvec_from(j["mu"], "quadruple.mu");
  p.A = cmat_from(j["A"], p.mu.size(), "quadruple.A");
  p.Lambda = cmat_from(j["Lambda"], p.mu.size(), "quadruple.Lambda");
  return p;
}

}  // namespace gauss_renyi::io
