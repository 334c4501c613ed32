// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file reports.hpp
 * @brief Command implementations behind the `mh` tool.
 *
 * Each command takes a RunConfig and returns the full output text plus an
 * exit code, so the tool only parses flags and writes files. CSV numbers
 * use 17 significant digits; rows are emitted q-major, lambda-minor.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mh/diagnostics.hpp"
#include "mh/errors.hpp"
#include "mh/info.hpp"
#include "mh/model.hpp"
#include "mh/mueller.hpp"
#include "mh/solver.hpp"
#include "mh/verify.hpp"

namespace mh::reports {

enum class Format { csv, json };

struct LambdaGrid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 2;
  bool log_spacing = false;

  [[nodiscard]] std::vector<double> values() const {
    return log_spacing ? logspace(start, stop, count) : linspace(start, stop, count);
  }
};

struct RunConfig {
  double omega0 = 1.0;
  std::optional<double> lambda;
  std::optional<LambdaGrid> grid;
  std::vector<double> q_list;
  double tol_root = kDefaultRootTol;
  double tol_trunc = kDefaultTruncationTol;
  std::size_t nodes = oracle::kDefaultNodes;
  Format format = Format::csv;
  std::string out;  ///< empty: stdout
  unsigned threads = 1;
  double tamper = 0.0;  ///< verify only; relative perturbation of closed forms
};

struct CommandResult {
  int exit_code = 0;
  std::string output;
  std::string message;  ///< for the error stream
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int domain_error = 2;
inline constexpr int solver_error = 3;
}  // namespace exit_code

/// Fixed 17-significant-digit rendering; non-finite values print as nan/inf.
inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline nlohmann::json json_num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

/// "start:stop:count[:log|:lin]".
inline LambdaGrid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4) {
    throw DomainError("lambda grid must be start:stop:count[:log], got '" + text + "'");
  }
  LambdaGrid g;
  try {
    g.start = std::stod(parts[0]);
    g.stop = std::stod(parts[1]);
    const long count = std::stol(parts[2]);
    if (count < 2) throw DomainError("lambda grid needs count >= 2");
    g.count = static_cast<std::size_t>(count);
  } catch (const std::invalid_argument&) {
    throw DomainError("lambda grid must be start:stop:count[:log], got '" + text + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log_spacing = true;
    } else if (parts[3] != "lin") {
      throw DomainError("lambda grid spacing must be 'log' or 'lin', got '" + parts[3] + "'");
    }
  }
  if (g.log_spacing && !(g.start > 0.0 && g.stop > 0.0)) {
    throw DomainError("log-spaced lambda grid needs positive endpoints");
  }
  if (g.start < 0.0 || g.stop > kMaxCoupling) {
    throw DomainError("lambda grid must lie within [0, 0.4999]");
  }
  return g;
}

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

/// Plain `key=value` lines; '#' starts a comment. Keys match the long flag
/// names without dashes (omega0, lambda, lambda-grid, q, tol-root,
/// tol-trunc, nodes, format, out).
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  int line_no = 0;
  for (std::string line; std::getline(ss, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(line_no) + " is not key=value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

/// Applies config-file entries; callers apply command-line flags afterwards.
inline void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "omega0") {
      cfg.omega0 = std::stod(value);
    } else if (key == "lambda") {
      cfg.lambda = std::stod(value);
    } else if (key == "lambda-grid") {
      cfg.grid = parse_grid(value);
    } else if (key == "q") {
      cfg.q_list = parse_list(value);
    } else if (key == "tol-root") {
      cfg.tol_root = std::stod(value);
    } else if (key == "tol-trunc") {
      cfg.tol_trunc = std::stod(value);
    } else if (key == "nodes") {
      cfg.nodes = static_cast<std::size_t>(std::stoul(value));
    } else if (key == "format") {
      if (value != "csv" && value != "json") throw DomainError("format must be csv or json");
      cfg.format = value == "csv" ? Format::csv : Format::json;
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw DomainError("unknown config key '" + key + "'");
    }
  }
}

/// Parallelism cap from MH_THREADS, else the hardware concurrency.
inline unsigned threads_from_env() {
  if (const char* env = std::getenv("MH_THREADS"); env != nullptr && *env != '\0') {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Writes to a sibling temporary file and renames it over `path`.
inline void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    os << content;
    os.flush();
    if (!os) {
      os.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, target);
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

inline CommandResult cmd_solve(const RunConfig& cfg) {
  CommandResult res;
  try {
    if (!cfg.lambda) throw DomainError("solve needs --lambda");
    if (cfg.q_list.size() != 1) throw DomainError("solve needs exactly one --q");
    const ModelParams p{cfg.omega0, *cfg.lambda};
    validate(p, Branch::repulsive, kMaxCoupling);
    const double q = cfg.q_list.front();
    const auto sol = solve_xi_p(p, q, cfg.tol_root);
    const auto e = energy_parametric(p, KernelSpec::sum_one(q), sol.xi_p);
    const auto ex = exact_energy(p);
    const auto ent = entropy_report(sol.xi_p);
    const double xi = xi_of_lambda(p.lambda);

    const std::vector<std::pair<std::string, double>> fields{
        {"omega0", p.omega0},
        {"lambda", p.lambda},
        {"q", q},
        {"xi", xi},
        {"xi_p", sol.xi_p},
        {"rhs", sol.rhs},
        {"iterations", static_cast<double>(sol.iterations)},
        {"residual", sol.residual},
        {"sign_changes", static_cast<double>(sol.sign_changes)},
        {"kinetic", e.kinetic},
        {"external", e.external},
        {"interaction", e.interaction},
        {"E_p", e.total},
        {"E_ex", ex.total},
        {"purity", ent.purity},
        {"linear_entropy", ent.linear_entropy},
        {"quasiparticle_weight", ent.quasiparticle_weight},
    };
    if (cfg.format == Format::json) {
      nlohmann::ordered_json j;
      for (const auto& [k, v] : fields) {
        if (k == "iterations" || k == "sign_changes") {
          j[k] = static_cast<long>(v);
        } else {
          j[k] = json_num(v);
        }
      }
      res.output = j.dump(2) + "\n";
    } else {
      std::string header, row;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        header += (i ? "," : "") + fields[i].first;
        const bool integral = fields[i].first == "iterations" || fields[i].first == "sign_changes";
        row += (i ? "," : "") +
               (integral ? std::to_string(static_cast<long>(fields[i].second))
                         : num(fields[i].second));
      }
      res.output = header + "\n" + row + "\n";
    }
    if (!sol.unique()) {
      res.message = "warning: stationarity condition changed sign " +
                    std::to_string(sol.sign_changes) + " times; reported the smallest root";
    }
  } catch (const DomainError& e) {
    res.exit_code = exit_code::domain_error;
    res.message = std::string("domain error: ") + e.what();
  } catch (const SolverError& e) {
    res.exit_code = exit_code::solver_error;
    res.message = std::string("solver error: ") + e.what();
  }
  return res;
}

// ---------------------------------------------------------------------------
// sweep / figure1
// ---------------------------------------------------------------------------

inline std::vector<double> sweep_grid(const RunConfig& cfg) {
  if (cfg.grid) return cfg.grid->values();
  if (cfg.lambda) return {*cfg.lambda};
  throw DomainError("sweep needs --lambda-grid or --lambda");
}

inline constexpr const char* kSweepHeader =
    "lambda,q,xi,xi_p,R,E_p,E_ex,purity,linear_entropy,lambda_dual,linear_entropy_dual,status";

inline std::string sweep_csv(const std::vector<SweepRecord>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : rows) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool ok = r.ok();
    out += num(r.lambda) + "," + num(r.q) + "," + num(ok ? r.xi : nan) + "," +
           num(ok ? r.xi_p : nan) + "," + num(ok ? r.ratio : nan) + "," + num(ok ? r.e_p : nan) +
           "," + num(ok ? r.e_ex : nan) + "," + num(ok ? r.purity : nan) + "," +
           num(ok ? r.linear_entropy : nan) + "," + num(ok ? r.lambda_dual : nan) + "," +
           num(ok ? r.linear_entropy_dual : nan) + "," + (ok ? "ok" : "error") + "\n";
  }
  return out;
}

inline std::string sweep_json(const std::vector<SweepRecord>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["lambda"] = r.lambda;
    j["q"] = r.q;
    if (r.ok()) {
      j["xi"] = json_num(r.xi);
      j["xi_p"] = json_num(r.xi_p);
      j["R"] = json_num(r.ratio);
      j["E_p"] = json_num(r.e_p);
      j["E_ex"] = json_num(r.e_ex);
      j["purity"] = json_num(r.purity);
      j["linear_entropy"] = json_num(r.linear_entropy);
      j["lambda_dual"] = json_num(r.lambda_dual);
      j["linear_entropy_dual"] = json_num(r.linear_entropy_dual);
      j["status"] = "ok";
    } else {
      j["status"] = "error";
      j["error"] = r.error;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

inline std::size_t failed_rows(const std::vector<SweepRecord>& rows) {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRecord& r) { return !r.ok(); }));
}

/// Non-zero only when more than 10% of rows failed.
inline int row_failure_exit(std::size_t failed, std::size_t total) {
  return 10 * failed > total ? exit_code::solver_error : exit_code::ok;
}

inline CommandResult cmd_sweep(const RunConfig& cfg) {
  CommandResult res;
  try {
    auto q_list = cfg.q_list.empty() ? std::vector<double>{0.5} : cfg.q_list;
    std::sort(q_list.begin(), q_list.end());
    const auto grid = sweep_grid(cfg);
    const auto rows = sweep({cfg.omega0, 0.0}, q_list, grid, cfg.threads, cfg.tol_root);
    res.output = cfg.format == Format::json ? sweep_json(rows) : sweep_csv(rows);
    const auto failed = failed_rows(rows);
    res.exit_code = row_failure_exit(failed, rows.size());
    if (failed > 0) res.message = std::to_string(failed) + " of " + std::to_string(rows.size()) + " sweep points failed";
  } catch (const DomainError& e) {
    res.exit_code = exit_code::domain_error;
    res.message = std::string("domain error: ") + e.what();
  }
  return res;
}

inline constexpr const char* kFigure1Header = "lambda,xi,xi_p_q04,R_q04,xi_p_q03,R_q03";

/// R(L) = xi_p/xi for q = 0.4 and q = 0.3; default grid 99 points on [0.005, 0.495].
inline CommandResult cmd_figure1(const RunConfig& cfg) {
  CommandResult res;
  try {
    const auto grid = cfg.grid ? cfg.grid->values() : linspace(0.005, 0.495, 99);
    const auto rows = sweep({cfg.omega0, 0.0}, {0.4, 0.3}, grid, cfg.threads, cfg.tol_root);
    const std::size_t n = grid.size();
    std::string out = std::string(kFigure1Header) + "\n";
    std::size_t failed = 0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = rows[i];
      const auto& b = rows[n + i];
      if (!a.ok() || !b.ok()) ++failed;
      const double xi = a.ok() ? a.xi : (b.ok() ? b.xi : nan);
      out += num(grid[i]) + "," + num(xi) + "," + num(a.ok() ? a.xi_p : nan) + "," +
             num(a.ok() ? a.ratio : nan) + "," + num(b.ok() ? b.xi_p : nan) + "," +
             num(b.ok() ? b.ratio : nan) + "\n";
    }
    res.output = std::move(out);
    res.exit_code = row_failure_exit(failed, n);
    if (failed > 0) res.message = std::to_string(failed) + " of " + std::to_string(n) + " rows failed";
  } catch (const DomainError& e) {
    res.exit_code = exit_code::domain_error;
    res.message = std::string("domain error: ") + e.what();
  }
  return res;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

inline CommandResult cmd_verify(const RunConfig& cfg) {
  CommandResult res;
  try {
    VerifyOptions opt;
    opt.omega0 = cfg.omega0;
    if (cfg.lambda) opt.lambdas = {*cfg.lambda};
    if (!cfg.q_list.empty()) opt.q_list = cfg.q_list;
    opt.nodes = cfg.nodes;
    opt.truncation_tol = cfg.tol_trunc;
    opt.tamper = cfg.tamper;
    const auto checks = run_verification(opt);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::string failing;
    for (const auto& c : checks) {
      arr.push_back({{"check", c.name},
                     {"measured_error", json_num(c.measured_error)},
                     {"tolerance", c.tolerance},
                     {"pass", c.pass}});
      if (!c.pass) failing += "  " + c.name + ": error " + num(c.measured_error) + " > " + num(c.tolerance) + "\n";
    }
    res.output = arr.dump(2) + "\n";
    if (!failing.empty()) {
      res.exit_code = exit_code::check_failed;
      res.message = "failing checks:\n" + failing;
    }
  } catch (const DomainError& e) {
    res.exit_code = exit_code::domain_error;
    res.message = std::string("domain error: ") + e.what();
  } catch (const SolverError& e) {
    res.exit_code = exit_code::solver_error;
    res.message = std::string("solver error: ") + e.what();
  }
  return res;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

/// Summary of the headline results: the q = 1/2 identity across couplings,
/// crossings and small-coupling exponents for q != 1/2, the duality map and
/// the Hartree-Fock reduction.
inline CommandResult cmd_report(const RunConfig& cfg) {
  CommandResult res;
  try {
    const ModelParams base{cfg.omega0, 0.0};
    nlohmann::ordered_json j;

    nlohmann::ordered_json identity = nlohmann::ordered_json::array();
    for (int k = 1; k <= 9; ++k) {
      const ModelParams p{cfg.omega0, 0.05 * k};
      const auto sol = solve_xi_p(p, 0.5, cfg.tol_root);
      const double xi = xi_of_lambda(p.lambda);
      const double ep = energy_parametric(p, KernelSpec::sum_one(0.5), sol.xi_p).total;
      const double ex = exact_energy(p).total;
      identity.push_back({{"lambda", p.lambda},
                          {"xi", xi},
                          {"xi_p", sol.xi_p},
                          {"abs_xi_error", std::abs(sol.xi_p - xi)},
                          {"E_p", ep},
                          {"E_ex", ex},
                          {"rel_energy_error", std::abs(ep - ex) / ex}});
    }
    j["symmetric_identity"] = identity;

    nlohmann::ordered_json crossings = nlohmann::ordered_json::array();
    for (double q : {0.4, 0.3}) {
      const double l0 = find_crossing(base, q, cfg.tol_root);
      crossings.push_back({{"q", q},
                           {"lambda0", l0},
                           {"R_at_lambda0", occupation_ratio({cfg.omega0, l0}, q, cfg.tol_root)},
                           {"entropy_crossing", entropy_crossing(base, q, cfg.tol_root)}});
    }
    j["crossings"] = crossings;

    nlohmann::ordered_json exponents = nlohmann::ordered_json::array();
    for (double q : {0.5, 0.4, 0.3}) {
      exponents.push_back({{"q", q},
                           {"fitted", scaling_exponent(base, q)},
                           {"asymptotic", 2.0 / (1.0 + 2.0 * std::abs(q - 0.5))}});
    }
    j["scaling_exponents"] = exponents;

    nlohmann::ordered_json dual = nlohmann::ordered_json::array();
    for (int k = 1; k <= 9; ++k) {
      const double l = 0.05 * k;
      const double la = dual_coupling(l);
      dual.push_back({{"lambda", l},
                      {"lambda_dual", la},
                      {"xi", xi_of_lambda(l)},
                      {"xi_dual", xi_of_lambda(la)},
                      {"linear_entropy", linear_entropy(xi_of_lambda(l))},
                      {"linear_entropy_dual", linear_entropy(xi_of_lambda(la))}});
    }
    j["duality"] = dual;

    nlohmann::ordered_json hf = nlohmann::ordered_json::array();
    for (double l : {0.1, 0.3, 0.36}) {
      const ModelParams p{cfg.omega0, l};
      const auto r = hartree_fock(p);
      hf.push_back({{"lambda", l},
                    {"omega_hf", r.omega_hf},
                    {"E_hf", r.energy.total},
                    {"E_ex", exact_energy(p).total},
                    {"quoted_2w0_sqrt_1_minus_lambda", 2.0 * cfg.omega0 * std::sqrt(1.0 - l)}});
    }
    j["hartree_fock"] = {
        {"rows", hf},
        {"note",
         "Minimizing the parametric energy at xi_p = 0 over the orbital frequency gives "
         "omega_hf = omega0*sqrt(1-lambda) and E_hf = omega0*sqrt(1-lambda). The form "
         "E_hf = 2*omega0*sqrt(1-lambda) that is often quoted is twice this value and does "
         "not reduce to E_ex = omega0 at lambda = 0; it is listed for comparison only."}};

    res.output = j.dump(2) + "\n";
  } catch (const DomainError& e) {
    res.exit_code = exit_code::domain_error;
    res.message = std::string("domain error: ") + e.what();
  } catch (const SolverError& e) {
    res.exit_code = exit_code::solver_error;
    res.message = std::string("solver error: ") + e.what();
  }
  return res;
}

}  // namespace mh::reports
