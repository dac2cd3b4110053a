#pragma once

// gauss-renyi command dispatch. Exit codes: 0 success, 1 I/O or malformed
// input, 2 domain or numerical errors. verify exits 1 on any FAIL and 2 when
// an instance did not converge in the cutoff or the selection is empty.

#include <cerrno>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gauss_renyi/e2_calculus.hpp"
#include "gauss_renyi/errors.hpp"
#include "gauss_renyi/renyi_entropy.hpp"
#include "gauss_renyi/state_json.hpp"
#include "gauss_renyi/verify_suite.hpp"
#include "gauss_renyi/williamson.hpp"

namespace gauss_renyi::cli {

struct RunConfig {
  std::string command;
  std::string rho_path;
  std::string sigma_path;
  std::string alpha_text;
  std::string alphas_text;
  std::string format;  // json, or table for verify, when empty
  int verify_cutoff = verify::kDefaultCutoff;
  std::string only;
};

namespace detail {

using io::format12;
using io::json;

inline double parse_real(const std::string& text, const std::string& what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) throw InputError(what + ": not a number: '" + text + "'");
  return x;
}

inline std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, "--alphas"));
  if (out.empty()) throw InputError("--alphas: empty list");
  return out;
}

inline std::vector<double> alpha_list(const RunConfig& c, bool allow_single, bool allow_list) {
  if (!c.alpha_text.empty() && !c.alphas_text.empty()) throw InputError("give --alpha or --alphas, not both");
  if (!c.alpha_text.empty()) {
    if (!allow_single) throw InputError(c.command + " takes --alphas");
    return {parse_real(c.alpha_text, "--alpha")};
  }
  if (!c.alphas_text.empty()) {
    if (!allow_list) throw InputError(c.command + " takes --alpha");
    return parse_alphas(c.alphas_text);
  }
  return {};
}

inline std::string need_path(const std::string& path, const char* which) {
  if (path.empty()) throw InputError(std::string("missing ") + which + " state file");
  return path;
}

inline void print_report_table(std::ostream& out, const EntropyReport& r) {
  const json j = io::report_json(r);
  auto line = [&](const char* key) {
    const json& v = j[key];
    std::string text;
    if (v.is_array()) {
      for (const auto& x : v) text += (text.empty() ? "" : " ") + (x.is_string() ? x.get<std::string>() : x.dump());
    } else {
      text = v.dump();
    }
    out << std::left << std::setw(12) << key << text << "\n";
  };
  for (const char* key : {"alpha", "divergence", "T_alpha", "trace_Z", "s", "t_Z", "p_s", "p_tZ", "p_alpha_tZ"}) {
    line(key);
  }
}

inline int cmd_entropy(const RunConfig& c, std::ostream& out) {
  const auto alphas = alpha_list(c, true, false);
  if (alphas.empty()) throw InputError("entropy needs --alpha");
  const GaussianState rho = io::load_state(need_path(c.rho_path, "rho"));
  const GaussianState sigma = io::load_state(need_path(c.sigma_path, "sigma"));
  require_alpha(alphas[0]);
  const EntropyReport r = sandwiched_renyi(rho, sigma, alphas[0]);
  if (c.format == "table") {
    print_report_table(out, r);
  } else {
    out << io::report_json(r).dump(2) << "\n";
  }
  return 0;
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const auto alphas = alpha_list(c, true, true);
  if (alphas.empty()) throw InputError("sweep needs --alphas");
  const GaussianState rho = io::load_state(need_path(c.rho_path, "rho"));
  const GaussianState sigma = io::load_state(need_path(c.sigma_path, "sigma"));
  const auto reports = sandwiched_renyi_sweep(rho, sigma, alphas);
  if (c.format == "table") {
    out << std::left << std::setw(20) << "alpha" << std::setw(20) << "divergence" << "T_alpha\n";
    for (const auto& r : reports) {
      const json j = io::report_json(r);
      out << std::setw(20) << j["alpha"].dump() << std::setw(20) << j["divergence"].dump() << j["T_alpha"].dump()
          << "\n";
    }
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(io::report_json(r));
    out << arr.dump(2) << "\n";
  }
  return 0;
}

inline int cmd_williamson(const RunConfig& c, std::ostream& out) {
  const GaussianState s = io::load_state(need_path(c.rho_path, "input"));
  require_physical(s, "input");
  const WilliamsonForm f = williamson_decompose(s.cov());
  if (c.format == "table") {
    out << "d ";
    for (double d : f.d) out << " " << format12(d);
    out << "\nt ";
    for (double t : f.t.values()) out << " " << format12(t);
    out << "\nL\n";
    const RMat& l = f.L.matrix();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      for (Eigen::Index k = 0; k < l.cols(); ++k) out << "  " << std::setw(20) << format12(l(i, k));
      out << "\n";
    }
  } else {
    out << io::williamson_json(f).dump(2) << "\n";
  }
  return 0;
}

/// A state file becomes its quadruple; a quadruple file becomes its state.
inline int cmd_convert(const RunConfig& c, std::ostream& out) {
  const std::string path = need_path(c.rho_path, "input");
  const json j = io::read_json_file(path);
  json result;
  if (j.is_object() && j.contains("Lambda")) {
    result = io::state_json(e2_to_state(io::e2_from_json(j)));
  } else {
    GaussianState s = [&] {
      try {
        return io::state_from_json(j);
      } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
      }
    }();
    require_physical(s, "input");
    result = io::e2_json(state_to_e2(s));
  }
  if (c.format == "table") {
    for (const auto& [key, value] : result.items()) out << std::left << std::setw(8) << key << value.dump() << "\n";
  } else {
    out << result.dump(2) << "\n";
  }
  return 0;
}

inline double env_tolerance() {
  const char* env = std::getenv("GAUSS_RENYI_TOL");
  if (env == nullptr || *env == '\0') return 0.0;
  const double tol = parse_real(env, "GAUSS_RENYI_TOL");
  if (!(tol > 0.0) || std::isinf(tol)) throw InputError("GAUSS_RENYI_TOL must be a positive number");
  return tol;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<double> alphas = alpha_list(c, true, true);
  if (alphas.empty()) alphas = {0.5, 0.75, 0.9};
  for (double a : alphas) require_alpha(a);
  if (c.verify_cutoff < 2) throw DomainError("--verify-cutoff must be at least 2");
  const auto suite = verify::select(verify::default_suite(c.verify_cutoff, env_tolerance()), c.only);
  if (suite.empty()) {
    err << "error: empty suite selection\n";
    return 2;
  }
  std::vector<verify::Row> rows;
  for (const auto& inst : suite) {
    const auto part = verify::run_instance(inst, alphas);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  bool any_fail = false;
  bool any_unconverged = false;
  for (const auto& r : rows) {
    any_fail = any_fail || r.status == verify::Status::Fail;
    any_unconverged = any_unconverged || r.status == verify::Status::NotConverged;
  }
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"instance", r.name},
                     {"alpha", io::number(r.alpha)},
                     {"closed_form", io::number(r.closed)},
                     {"oracle", io::number(r.oracle)},
                     {"oracle_guard", io::number(r.oracle_guard)},
                     {"abs_diff", io::number(r.diff)},
                     {"cutoff", r.cutoff},
                     {"guard_cutoff", r.guard_cutoff},
                     {"tol", io::number(r.tol)},
                     {"status", verify::status_name(r.status)}});
    }
    out << arr.dump(2) << "\n";
  } else {
    out << std::left << std::setw(48) << "instance" << std::setw(7) << "alpha" << std::setw(20) << "closed form"
        << std::setw(20) << "oracle" << std::setw(12) << "|diff|" << std::setw(10) << "cutoff" << "status\n";
    for (const auto& r : rows) {
      std::ostringstream diff;
      diff << std::scientific << std::setprecision(2) << r.diff;
      out << std::setw(48) << r.name << std::setw(7) << format12(r.alpha) << std::setw(20) << format12(r.closed)
          << std::setw(20) << format12(r.oracle) << std::setw(12) << diff.str() << std::setw(10)
          << (std::to_string(r.cutoff) + "/" + std::to_string(r.guard_cutoff)) << verify::status_name(r.status)
          << "\n";
    }
  }
  if (any_fail) return 1;
  if (any_unconverged) {
    err << "error: cutoff not converged; raise --verify-cutoff\n";
    return 2;
  }
  return 0;
}

}  // namespace detail

/// Runs one command line; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sandwiched Renyi relative entropy of Gaussian states", "gauss-renyi"};
  app.require_subcommand(1);
  RunConfig c;
  std::string rho_pos;
  std::string sigma_pos;

  auto common = [&](CLI::App* sub, bool two_states) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    if (two_states) {
      sub->add_option("--rho", c.rho_path, "State file for rho");
      sub->add_option("--sigma", c.sigma_path, "State file for sigma");
      sub->add_option("rho_file", rho_pos, "State file for rho");
      sub->add_option("sigma_file", sigma_pos, "State file for sigma");
    } else {
      sub->add_option("--rho", c.rho_path, "Input file");
      sub->add_option("file", rho_pos, "Input file");
    }
  };

  auto* entropy = app.add_subcommand("entropy", "D_alpha(rho || sigma) at one alpha");
  common(entropy, true);
  entropy->add_option("--alpha", c.alpha_text, "Order alpha in (0,1)");
  entropy->add_option("--alphas", c.alphas_text, "Comma-separated orders");

  auto* sweep = app.add_subcommand("sweep", "D_alpha over a list of alpha values");
  common(sweep, true);
  sweep->add_option("--alpha", c.alpha_text, "Order alpha in (0,1)");
  sweep->add_option("--alphas", c.alphas_text, "Comma-separated orders");

  auto* williamson = app.add_subcommand("williamson", "Symplectic eigenvalues, thermal parameters and L");
  common(williamson, false);

  auto* convert = app.add_subcommand("convert", "State file to (c, mu, A, Lambda) and back");
  common(convert, false);

  auto* verify_cmd = app.add_subcommand("verify", "Closed form against the dense Fock oracle");
  verify_cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  verify_cmd->add_option("--alpha", c.alpha_text, "Order alpha in (0,1)");
  verify_cmd->add_option("--alphas", c.alphas_text, "Comma-separated orders");
  verify_cmd->add_option("--verify-cutoff", c.verify_cutoff, "Per-mode cutoff of the 1-mode instances");
  verify_cmd->add_option("--only", c.only, "Run instances whose name contains this text");

  std::vector<const char*> argv{"gauss-renyi"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  c.command = app.get_subcommands().front()->get_name();
  if (c.format.empty()) c.format = c.command == "verify" ? "table" : "json";
  if (!rho_pos.empty()) {
    if (!c.rho_path.empty()) {
      err << "error: rho given twice\n";
      return 1;
    }
    c.rho_path = rho_pos;
  }
  if (!sigma_pos.empty()) {
    if (!c.sigma_path.empty()) {
      err << "error: sigma given twice\n";
      return 1;
    }
    c.sigma_path = sigma_pos;
  }

  try {
    if (c.command == "entropy") return detail::cmd_entropy(c, out);
    if (c.command == "sweep") return detail::cmd_sweep(c, out);
    if (c.command == "williamson") return detail::cmd_williamson(c, out);
    if (c.command == "convert") return detail::cmd_convert(c, out);
    return detail::cmd_verify(c, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gauss_renyi::cli
