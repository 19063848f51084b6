// Copyright 2026 The chinese_auctions Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end. Exit codes: 0 success, 1 repro verdict mismatch,
// 2 validation or parse failure, 3 solver failure (non-convergence, no
// equilibrium, unmet bound), 4 enumeration guard tripped.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "chinese_auctions/continuous_solver.hpp"
#include "chinese_auctions/discrete_solver.hpp"
#include "chinese_auctions/io.hpp"
#include "chinese_auctions/model.hpp"
#include "chinese_auctions/repro.hpp"
#include "chinese_auctions/verify.hpp"

namespace ca = chinese_auctions;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;
constexpr int kExitGuard = 4;

struct Options {
  std::string instance_path;
  std::string profile_path;
  std::string out_path;
  std::string csv_path;
  std::string solver;
  std::string repro_name;
  bool repro_all = false;
  double epsilon = 1e-6;
  double theta = 0.5;
  int max_rounds = 10000;
  double grid = 0.01;
  double dev_grid = 0.001;
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  int threads = 1;
};

ca::AuctionInstance LoadValidInstance(const Options& opt) {
  if (opt.instance_path.empty()) {
    throw ca::ParseError("an --instance file is required");
  }
  ca::AuctionInstance inst = ca::LoadInstance(opt.instance_path);
  const std::vector<std::string> errors = ca::ValidateInstance(inst);
  if (!errors.empty()) {
    std::string joined;
    for (const std::string& e : errors) {
      if (!joined.empty()) joined += "; ";
      joined += e;
    }
    throw ca::InvalidInstanceError(joined);
  }
  return inst;
}

void MaybeWrite(const Options& opt, const nlohmann::json& j) {
  if (!opt.out_path.empty()) ca::WriteJson(j, opt.out_path);
}

std::string PickSolver(const ca::AuctionInstance& inst) {
  if (inst.all_discrete()) {
    bool zero_delta = true;
    for (int j = 0; j < inst.num_items; ++j) {
      if (inst.delta_at(j) > 0.0) zero_delta = false;
    }
    if (inst.symmetric_valuations() && inst.all_single_ticket()) return "greedy";
    if (inst.all_single_ticket() && inst.equal_ticket_weights() && zero_delta) {
      return "cascade";
    }
    if (inst.all_single_ticket() && inst.num_items == 2) return "two-item";
    return "exhaustive";
  }
  if (inst.any_discrete()) {
    throw ca::InvalidInstanceError(
        "instances mixing continuous and ticket budgets have no solver");
  }
  if (inst.symmetric_valuations()) {
    return inst.mode == ca::Mode::kGiven ? "proportional" : "costly-symmetric";
  }
  return "dynamics";
}

ca::ContinuousProfile DynamicsStart(const ca::AuctionInstance& inst) {
  ca::ContinuousProfile start;
  start.x = ca::ZeroMatrix(inst.num_players(), inst.num_items);
  for (int i = 0; i < inst.num_players(); ++i) {
    for (int j = 0; j < inst.num_items; ++j) {
      if (inst.mode == ca::Mode::kGiven) {
        start.x[i][j] = inst.budget_weight(i) / inst.num_items;
      } else {
        const int n = inst.num_players();
        start.x[i][j] = inst.valuation(i, j) * (n - 1) / (static_cast<double>(n) * n);
      }
    }
  }
  return start;
}

int CmdSolve(const Options& opt) {
  const ca::AuctionInstance inst = LoadValidInstance(opt);
  const std::string solver = opt.solver.empty() ? PickSolver(inst) : opt.solver;
  std::cout << "solver: " << solver << "\n";

  nlohmann::json out;
  out["command"] = "solve";
  out["method"] = solver;

  if (solver == "greedy" || solver == "cascade" || solver == "two-item" ||
      solver == "exhaustive") {
    ca::DiscreteAssignment assignment;
    if (solver == "greedy") {
      assignment = ca::GreedyByWeight(inst).assignment;
    } else if (solver == "cascade") {
      assignment = ca::ArrivalCascade(inst);
    } else if (solver == "two-item") {
      assignment = ca::TwoItemRatioOrder(inst);
    } else {
      const std::vector<ca::DiscreteAssignment> all =
          ca::ExhaustiveEquilibriumSearch(inst, opt.threads);
      if (all.empty()) {
        std::cout << "no pure equilibrium exists\n";
        return kExitSolver;
      }
      assignment = all.front();
    }
    const ca::EquilibriumCertificate cert = ca::CheckDiscreteExactNash(inst, assignment);
    out["assignment"] = ca::AssignmentToJson(assignment)["assignment"];
    out["certificate"] = ca::CertificateToJson(cert);
    out["utilities"] = ca::ExpectedUtilities(inst, assignment);
    MaybeWrite(opt, out);
    std::cout << "epsilon: " << cert.epsilon << "\n";
    return cert.epsilon == 0.0 ? kExitOk : kExitSolver;
  }

  ca::ContinuousProfile profile;
  bool converged = true;
  if (solver == "proportional") {
    profile = ca::ProportionalEquilibrium(inst);
  } else if (solver == "costly-symmetric") {
    profile = ca::CostlySymmetricEquilibrium(inst);
  } else if (solver == "dynamics") {
    ca::DynamicsConfig cfg;
    cfg.max_rounds = opt.max_rounds;
    cfg.damping = opt.theta;
    cfg.epsilon = opt.epsilon;
    const ca::DynamicsResult result = ca::BestResponseDynamics(inst, DynamicsStart(inst), cfg);
    profile = result.profile;
    converged = result.converged;
    out["dynamics"] = ca::DynamicsToJson(result);
  } else {
    throw ca::ParseError("unknown solver: " + solver);
  }
  const ca::EquilibriumCertificate cert = ca::CheckContinuousEpsilonNash(inst, profile);
  out["profile"] = ca::ProfileToJson(profile);
  out["certificate"] = ca::CertificateToJson(cert);
  out["utilities"] = ca::ExpectedUtilities(inst, profile);
  MaybeWrite(opt, out);
  std::cout << "epsilon: " << cert.epsilon << "\n";
  if (!converged) {
    std::cout << "dynamics did not converge\n";
    return kExitSolver;
  }
  return cert.epsilon <= opt.epsilon ? kExitOk : kExitSolver;
}

int CmdVerify(const Options& opt) {
  const ca::AuctionInstance inst = LoadValidInstance(opt);
  if (opt.profile_path.empty()) {
    throw ca::ParseError("a --profile file is required");
  }
  const nlohmann::json j = ca::LoadJson(opt.profile_path);
  ca::EquilibriumCertificate cert;
  nlohmann::json out;
  out["command"] = "verify";
  if (j.contains("assignment") ||
      (j.contains("profile") && j.at("profile").contains("assignment"))) {
    const ca::DiscreteAssignment assignment = ca::AssignmentFromJson(
        j.contains("assignment") ? j : j.at("profile"));
    cert = ca::CheckDiscreteExactNash(inst, assignment);
  } else {
    const ca::ContinuousProfile profile = ca::ProfileFromJson(j);
    cert = ca::CheckContinuousEpsilonNash(inst, profile);
  }
  out["certificate"] = ca::CertificateToJson(cert);
  MaybeWrite(opt, out);
  std::cout << "epsilon: " << cert.epsilon << "\n";
  return cert.epsilon <= opt.epsilon ? kExitOk : kExitSolver;
}

int CmdAudit(const Options& opt) {
  const ca::AuctionInstance inst = LoadValidInstance(opt);
  ca::AuditOptions options;
  options.profile_step = opt.grid;
  options.deviation_step = opt.dev_grid;
  options.threads = opt.threads;
  const ca::AuditReport report = ca::NonexistenceGridAudit(inst, options);
  nlohmann::json out;
  out["command"] = "audit";
  out["report"] = ca::AuditToJson(report);
  MaybeWrite(opt, out);
  if (!opt.csv_path.empty()) ca::WriteAuditCsv(inst, report, opt.csv_path);
  std::cout << "cells: " << report.cells << "\n"
            << "min_gap: " << report.min_gap << "\n";
  if (report.min_gap > opt.epsilon) {
    std::cout << "no profile at this resolution is an eps-equilibrium for eps <= "
              << report.min_gap << "\n";
    return kExitOk;
  }
  std::cout << "grid contains a near-equilibrium profile\n";
  return kExitSolver;
}

int CmdSimulate(const Options& opt) {
  const ca::AuctionInstance inst = LoadValidInstance(opt);
  if (opt.trials < 1) {
    throw ca::InvalidInstanceError("simulation requires --trials >= 1");
  }
  if (opt.profile_path.empty()) {
    throw ca::ParseError("a --profile file is required");
  }
  const nlohmann::json j = ca::LoadJson(opt.profile_path);
  ca::MonteCarloOptions options;
  options.trials = opt.trials;
  options.seed = opt.seed;
  options.threads = opt.threads;

  ca::MonteCarloResult result;
  std::vector<double> analytic;
  if (j.contains("assignment")) {
    const ca::DiscreteAssignment assignment = ca::AssignmentFromJson(j);
    result = ca::SimulateUtilities(inst, assignment, options);
    analytic = ca::ExpectedUtilities(inst, assignment);
  } else {
    const ca::ContinuousProfile profile = ca::ProfileFromJson(j);
    result = ca::SimulateUtilities(inst, profile, options);
    analytic = ca::ExpectedUtilities(inst, profile);
  }

  bool within = true;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double band = 4.0 * result.standard_error[i];
    if (std::abs(result.mean_utility[i] - analytic[i]) > band) within = false;
  }
  nlohmann::json out;
  out["command"] = "simulate";
  out["result"] = ca::MonteCarloToJson(result);
  out["analytic_utility"] = analytic;
  out["within_band"] = within;
  MaybeWrite(opt, out);
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    std::cout << "player " << i << ": mean " << result.mean_utility[i]
              << " +- " << result.standard_error[i] << " (analytic "
              << analytic[i] << ")\n";
  }
  return within ? kExitOk : kExitSolver;
}

int CmdRepro(const Options& opt) {
  bool all_ok = true;
  if (opt.repro_all) {
    for (const ca::ReproCase& c : ca::ReproRegistry()) {
      const ca::ReproOutcome outcome = c.run();
      std::cout << (outcome.ok ? "[PASS] " : "[FAIL] ") << c.name << ": "
                << outcome.detail << "\n";
      all_ok = all_ok && outcome.ok;
    }
    return all_ok ? kExitOk : kExitMismatch;
  }
  if (opt.repro_name.empty()) {
    throw ca::ParseError("repro requires a case name or --all");
  }
  const ca::ReproOutcome outcome = ca::RunRepro(opt.repro_name);
  std::cout << (outcome.ok ? "[PASS] " : "[FAIL] ") << opt.repro_name << ": "
            << outcome.detail << "\n";
  return outcome.ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers, certification and simulation for ticket-lottery auctions"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--instance", opt.instance_path, "instance JSON file");
    cmd->add_option("--epsilon", opt.epsilon, "certification threshold");
    cmd->add_option("--theta", opt.theta, "dynamics damping factor");
    cmd->add_option("--max-rounds", opt.max_rounds, "dynamics round limit");
    cmd->add_option("--grid", opt.grid, "audit profile grid step");
    cmd->add_option("--dev-grid", opt.dev_grid, "audit deviation grid step");
    cmd->add_option("--trials", opt.trials, "Monte Carlo trials");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--threads", opt.threads, "worker threads");
    cmd->add_option("--out", opt.out_path, "result JSON path");
    cmd->add_option("--solver", opt.solver, "override solver choice");
    cmd->add_option("--profile", opt.profile_path, "profile/assignment JSON file");
    cmd->add_option("--csv", opt.csv_path, "audit grid CSV path");
  };

  CLI::App* solve = app.add_subcommand("solve", "compute and certify an equilibrium");
  CLI::App* verify = app.add_subcommand("verify", "certify a stored profile");
  CLI::App* audit = app.add_subcommand("audit", "grid audit for non-existence evidence");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo utility check");
  CLI::App* repro = app.add_subcommand("repro", "run a named reproduction scenario");
  for (CLI::App* cmd : {solve, verify, audit, simulate, repro}) add_common(cmd);
  repro->add_option("name", opt.repro_name, "registry case name");
  repro->add_flag("--all", opt.repro_all, "run every registry case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (solve->parsed()) return CmdSolve(opt);
    if (verify->parsed()) return CmdVerify(opt);
    if (audit->parsed()) return CmdAudit(opt);
    if (simulate->parsed()) return CmdSimulate(opt);
    if (repro->parsed()) return CmdRepro(opt);
  } catch (const ca::ExplosionGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const ca::BestResponseNotAttainedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ca::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ca::InvalidInstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ca::InvalidProfileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ca::AuctionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
