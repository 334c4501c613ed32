// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: solve | sweep | figure1 | verify | report.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mh/reports.hpp"

namespace {

struct Flags {
  double omega0 = 1.0;
  double lambda = 0.0;
  std::string grid;
  std::vector<double> q;
  double tol_root = mh::kDefaultRootTol;
  double tol_trunc = mh::kDefaultTruncationTol;
  std::size_t nodes = mh::oracle::kDefaultNodes;
  std::string format = "csv";
  std::string out;
  std::string config;
  double tamper = 0.0;
};

struct Options {
  CLI::Option* omega0 = nullptr;
  CLI::Option* lambda = nullptr;
  CLI::Option* grid = nullptr;
  CLI::Option* q = nullptr;
  CLI::Option* tol_root = nullptr;
  CLI::Option* tol_trunc = nullptr;
  CLI::Option* nodes = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* out = nullptr;
};

Options add_common(CLI::App* cmd, Flags& f) {
  Options o;
  o.omega0 = cmd->add_option("--omega0", f.omega0, "confinement frequency")->default_val(1.0);
  o.lambda = cmd->add_option("--lambda", f.lambda, "interparticle coupling");
  o.grid = cmd->add_option("--lambda-grid", f.grid, "coupling grid start:stop:count[:log]");
  o.q = cmd->add_option("--q", f.q, "operator power q (repeatable)")->take_all();
  o.tol_root = cmd->add_option("--tol-root", f.tol_root, "root bracket tolerance");
  o.tol_trunc = cmd->add_option("--tol-trunc", f.tol_trunc, "occupation series truncation");
  o.nodes = cmd->add_option("--nodes", f.nodes, "quadrature nodes per axis (verify)");
  o.format = cmd->add_option("--format", f.format, "output format")
                 ->check(CLI::IsMember({"csv", "json"}));
  o.out = cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--config", f.config, "key=value config file; flags override it");
  return o;
}

mh::reports::RunConfig build_config(const Flags& f, const Options& o) {
  mh::reports::RunConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw mh::DomainError("cannot read config file '" + f.config + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    mh::reports::apply_config(cfg, mh::reports::parse_config_text(ss.str()));
  }
  if (o.omega0->count()) cfg.omega0 = f.omega0;
  if (o.lambda->count()) cfg.lambda = f.lambda;
  if (o.grid->count()) cfg.grid = mh::reports::parse_grid(f.grid);
  if (o.q->count()) cfg.q_list = f.q;
  if (o.tol_root->count()) cfg.tol_root = f.tol_root;
  if (o.tol_trunc->count()) cfg.tol_trunc = f.tol_trunc;
  if (o.nodes->count()) cfg.nodes = f.nodes;
  if (o.format->count()) {
    cfg.format = f.format == "json" ? mh::reports::Format::json : mh::reports::Format::csv;
  }
  if (o.out->count()) cfg.out = f.out;
  cfg.threads = mh::reports::threads_from_env();
  cfg.tamper = f.tamper;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Muller-type occupation-number functional for two coupled oscillators"};
  app.require_subcommand(1);

  Flags flags;
  std::map<std::string, std::pair<CLI::App*, Options>> commands;
  for (const char* name : {"solve", "sweep", "figure1", "verify", "report"}) {
    auto* cmd = app.add_subcommand(name);
    commands[name] = {cmd, add_common(cmd, flags)};
  }
  commands["solve"].first->description("stationary occupation spectrum at one (lambda, q)");
  commands["sweep"].first->description("stationary solutions over a coupling grid");
  commands["figure1"].first->description("ratio xi_p/xi for q = 0.4 and 0.3");
  commands["verify"].first->description("closed forms against numerical quadrature");
  commands["report"].first->description("summary of identities, crossings and exponents");
  commands["verify"]
      .first->add_option("--tamper", flags.tamper, "perturb closed forms (negative control)")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [name, entry] : commands) {
      auto& [cmd, opts] = entry;
      if (!cmd->parsed()) continue;
      const auto cfg = build_config(flags, opts);
      mh::reports::CommandResult res;
      if (name == "solve") {
        res = mh::reports::cmd_solve(cfg);
      } else if (name == "sweep") {
        res = mh::reports::cmd_sweep(cfg);
      } else if (name == "figure1") {
        res = mh::reports::cmd_figure1(cfg);
      } else if (name == "verify") {
        res = mh::reports::cmd_verify(cfg);
      } else {
        res = mh::reports::cmd_report(cfg);
      }
      if (!res.message.empty()) std::cerr << res.message << (res.message.back() == '\n' ? "" : "\n");
      // Failed runs of solve/sweep/figure1 leave no partial file behind.
      const bool emit = !res.output.empty() &&
                        (res.exit_code == 0 || name == "verify");
      if (emit) {
        if (cfg.out.empty()) {
          std::cout << res.output;
        } else {
          mh::reports::write_atomically(cfg.out, res.output);
        }
      }
      return res.exit_code;
    }
  } catch (const mh::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return mh::reports::exit_code::domain_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
