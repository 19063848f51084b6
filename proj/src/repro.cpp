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

#include "chinese_auctions/repro.hpp"

#include <cmath>
#include <sstream>

#include "chinese_auctions/continuous_solver.hpp"
#include "chinese_auctions/discrete_solver.hpp"
#include "chinese_auctions/verify.hpp"

namespace chinese_auctions {

namespace {

std::string FormatDouble(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

ReproOutcome Pass(const std::string& detail) { return {true, detail}; }
ReproOutcome Fail(const std::string& detail) { return {false, detail}; }

// Two-player two-item instance where one zero valuation breaks equilibrium
// existence under continuous given budgets.
AuctionInstance ZeroValuationCounterexample(std::vector<double> delta = {}) {
  return MakeContinuousInstance(Mode::kGiven, {{0.0, 1.0}, {1.0, 3.0}},
                                {1.0, 1.0}, std::move(delta));
}

// Costly counterexample: one player never contests the second item.
AuctionInstance CostlyCounterexample(std::vector<double> delta = {}) {
  return MakeContinuousInstance(Mode::kCostly, {{1.0, 0.0}, {1.0, 1.0}},
                                {0.0, 0.0}, std::move(delta));
}

ReproOutcome RunProportionalAsymmetricBudgets() {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 3.0}, {1.0, 3.0}}, {2.0, 1.0});
  const ContinuousProfile profile = ProportionalEquilibrium(inst);
  const std::vector<std::vector<double>> expected = {{0.5, 1.5}, {0.25, 0.75}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (!ApproxEqual(profile.x[i][j], expected[i][j], 1e-12)) {
        return Fail("proportional profile mismatch");
      }
    }
  }
  const EquilibriumCertificate cert = CheckContinuousEpsilonNash(inst, profile);
  if (cert.epsilon > 1e-9) {
    return Fail("epsilon " + FormatDouble(cert.epsilon) + " above 1e-9");
  }
  return Pass("epsilon = " + FormatDouble(cert.epsilon));
}

ReproOutcome RunProportionalSymmetricBudgets() {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}, {1.0, 1.0, 1.0});
  const ContinuousProfile profile = ProportionalEquilibrium(inst);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (profile.x[i][j] != 0.5) return Fail("expected every weight 0.5");
    }
  }
  const EquilibriumCertificate cert = CheckContinuousEpsilonNash(inst, profile);
  if (cert.epsilon > 1e-9) {
    return Fail("epsilon " + FormatDouble(cert.epsilon) + " above 1e-9");
  }
  return Pass("symmetric profile, epsilon = " + FormatDouble(cert.epsilon));
}

ReproOutcome RunZeroValuationAudit() {
  AuditOptions options;
  options.profile_step = 0.01;
  options.deviation_step = 0.001;
  const AuditReport report = NonexistenceGridAudit(ZeroValuationCounterexample(), options);
  if (!(report.min_gap > 0.0)) {
    return Fail("expected a positive improvement floor, got " +
                FormatDouble(report.min_gap));
  }
  return Pass("min_gap = " + FormatDouble(report.min_gap) +
              " over " + std::to_string(report.cells) + " cells");
}

ReproOutcome RunAuctioneerTicketRestoresExistence() {
  const AuctionInstance inst = ZeroValuationCounterexample({0.01, 0.01});
  ContinuousProfile start;
  start.x = {{0.5, 0.5}, {0.5, 0.5}};
  DynamicsConfig cfg;
  cfg.epsilon = 1e-6;
  const DynamicsResult result = BestResponseDynamics(inst, start, cfg);
  if (!result.converged) return Fail("dynamics did not converge");
  const EquilibriumCertificate cert = CheckContinuousEpsilonNash(inst, result.profile);
  if (cert.epsilon > 1e-6) {
    return Fail("epsilon " + FormatDouble(cert.epsilon) + " above 1e-6");
  }
  return Pass("converged in " + std::to_string(result.rounds) +
              " rounds, epsilon = " + FormatDouble(cert.epsilon));
}

ReproOutcome RunPositiveValuationDynamics() {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{2.0, 1.0}, {1.0, 2.0}}, {1.0, 2.0});
  ContinuousProfile start;
  start.x = {{0.5, 0.5}, {1.0, 1.0}};
  DynamicsConfig cfg;
  cfg.epsilon = 1e-6;
  const DynamicsResult result = BestResponseDynamics(inst, start, cfg);
  if (!result.converged) return Fail("dynamics did not converge");
  const EquilibriumCertificate cert = CheckContinuousEpsilonNash(inst, result.profile);
  if (cert.epsilon > 1e-6) {
    return Fail("epsilon " + FormatDouble(cert.epsilon) + " above 1e-6");
  }
  return Pass("converged in " + std::to_string(result.rounds) +
              " rounds, epsilon = " + FormatDouble(cert.epsilon));
}

ReproOutcome RunGreedyByWeight() {
  const AuctionInstance inst = MakeSingleTicketInstance(
      {{4.0, 2.0}, {4.0, 2.0}, {4.0, 2.0}}, {2.0, 1.0, 1.0});
  const GreedyResult greedy = GreedyByWeight(inst);
  const std::vector<int> expected = {0, 1, 0};
  for (int i = 0; i < 3; ++i) {
    if (greedy.assignment.items[i][0] != expected[i]) {
      return Fail("unexpected greedy placement");
    }
  }
  const EquilibriumCertificate cert = CheckDiscreteExactNash(inst, greedy.assignment);
  if (cert.epsilon != 0.0) return Fail("greedy output is not an exact equilibrium");
  return Pass("placements (0,1,0), exact equilibrium");
}

ReproOutcome RunUnitTicketNonexistence() {
  AuctionInstance inst;
  inst.mode = Mode::kGiven;
  inst.num_items = 2;
  inst.players.resize(2);
  inst.players[0].valuations = {1.0, 1.0};
  inst.players[0].budget = BudgetSpec::Discrete({1.0, 1.0, 1.0});
  inst.players[1].valuations = {1.0, 1.0};
  inst.players[1].budget = BudgetSpec::Discrete({1.0});

  const std::vector<DiscreteAssignment> equilibria = ExhaustiveEquilibriumSearch(inst);
  if (!equilibria.empty()) {
    return Fail("expected no exact equilibrium, found " +
                std::to_string(equilibria.size()));
  }
  // Witness: two tickets on item 0 and one on item 1 versus a single ticket
  // on item 0; the lone ticket gains exactly 1/2 - 1/3 by moving.
  DiscreteAssignment witness;
  witness.items = {{0, 0, 1}, {0}};
  const EquilibriumCertificate cert = CheckDiscreteExactNash(inst, witness);
  if (cert.gaps[1] != 1.0 / 6.0) {
    return Fail("witness gap " + FormatDouble(cert.gaps[1]) + " != 1/6");
  }
  return Pass("no exact equilibrium among 8 joint profiles; witness gap 1/6");
}

ReproOutcome RunTwoItemRatioOrder() {
  const AuctionInstance inst =
      MakeSingleTicketInstance({{1.0, 2.0}, {3.0, 1.0}}, {1.0, 1.0});
  const DiscreteAssignment assignment = TwoItemRatioOrder(inst);
  if (assignment.items[0][0] != 1 || assignment.items[1][0] != 0) {
    return Fail("unexpected placements");
  }
  const std::vector<double> utilities = ExpectedUtilities(inst, assignment);
  if (utilities[0] != 2.0 || utilities[1] != 3.0) {
    return Fail("unexpected utilities");
  }
  const EquilibriumCertificate cert = CheckDiscreteExactNash(inst, assignment);
  if (cert.epsilon != 0.0) return Fail("not an exact equilibrium");
  return Pass("players split across items, utilities (2, 3), exact equilibrium");
}

ReproOutcome RunArrivalCascade() {
  const AuctionInstance inst =
      MakeSingleTicketInstance({{3.0, 1.0}, {3.0, 1.0}}, {1.0, 1.0});
  const DiscreteAssignment assignment = ArrivalCascade(inst);
  if (assignment.items[0][0] != 0 || assignment.items[1][0] != 0) {
    return Fail("expected both players on item 0");
  }
  const std::vector<double> utilities = ExpectedUtilities(inst, assignment);
  if (utilities[0] != 1.5 || utilities[1] != 1.5) {
    return Fail("unexpected utilities");
  }
  const EquilibriumCertificate cert = CheckDiscreteExactNash(inst, assignment);
  if (cert.epsilon != 0.0) return Fail("not an exact equilibrium");
  return Pass("both players share item 0, utilities (1.5, 1.5), exact equilibrium");
}

ReproOutcome RunCostlySymmetric() {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kCostly, {{4.0, 8.0}, {4.0, 8.0}}, {0.0, 0.0});
  const ContinuousProfile profile = CostlySymmetricEquilibrium(inst);
  for (int i = 0; i < 2; ++i) {
    if (profile.x[i][0] != 1.0 || profile.x[i][1] != 2.0) {
      return Fail("expected weights (1, 2) per player");
    }
  }
  const std::vector<double> utilities = ExpectedUtilities(inst, profile);
  if (!ApproxEqual(utilities[0], 3.0, 1e-12) ||
      !ApproxEqual(utilities[1], 3.0, 1e-12)) {
    return Fail("expected utility 3 per player");
  }
  const EquilibriumCertificate cert = CheckContinuousEpsilonNash(inst, profile);
  if (cert.epsilon > 1e-9) {
    return Fail("epsilon " + FormatDouble(cert.epsilon) + " above 1e-9");
  }
  return Pass("weights (1, 2), utilities 3, epsilon = " + FormatDouble(cert.epsilon));
}

ReproOutcome RunCostlyAudit() {
  AuditOptions options;
  options.profile_step = 0.01;
  options.deviation_step = 0.001;
  const AuditReport report = NonexistenceGridAudit(CostlyCounterexample(), options);
  if (!(report.min_gap > 0.0)) {
    return Fail("expected a positive improvement floor, got " +
                FormatDouble(report.min_gap));
  }
  return Pass("min_gap = " + FormatDouble(report.min_gap) +
              " over " + std::to_string(report.cells) + " cells");
}

ReproOutcome RunCostlyAuctioneerTicket() {
  const AuctionInstance inst = CostlyCounterexample({0.01, 0.01});
  ContinuousProfile start;
  start.x = {{0.25, 0.0}, {0.25, 0.25}};
  DynamicsConfig cfg;
  cfg.epsilon = 1e-6;
  const DynamicsResult result = BestResponseDynamics(inst, start, cfg);
  if (!result.converged) return Fail("dynamics did not converge");
  const EquilibriumCertificate cert = CheckContinuousEpsilonNash(inst, result.profile);
  if (cert.epsilon > 1e-6) {
    return Fail("epsilon " + FormatDouble(cert.epsilon) + " above 1e-6");
  }
  return Pass("converged in " + std::to_string(result.rounds) +
              " rounds, epsilon = " + FormatDouble(cert.epsilon));
}

}  // namespace

const std::vector<ReproCase>& ReproRegistry() {
  static const std::vector<ReproCase>* registry = new std::vector<ReproCase>{
      {"thm32", "proportional closed form certifies on asymmetric budgets",
       &RunProportionalAsymmetricBudgets},
      {"cor33", "symmetric budgets yield a symmetric proportional equilibrium",
       &RunProportionalSymmetricBudgets},
      {"prop35", "zero-valuation instance admits no near-equilibrium on the grid",
       &RunZeroValuationAudit},
      {"thm36", "auctioneer weight restores convergence to an eps-equilibrium",
       &RunAuctioneerTicketRestoresExistence},
      {"thm38-dynamics", "dynamics find an eps-equilibrium with positive valuations",
       &RunPositiveValuationDynamics},
      {"thm310", "weight-ordered greedy yields an exact equilibrium",
       &RunGreedyByWeight},
      {"prop311", "asymmetric ticket counts admit no exact equilibrium",
       &RunUnitTicketNonexistence},
      {"prop312", "two-item ratio order yields an exact equilibrium",
       &RunTwoItemRatioOrder},
      {"alg2", "arrival cascade yields an exact equilibrium",
       &RunArrivalCascade},
      {"thm42", "costly symmetric closed form certifies",
       &RunCostlySymmetric},
      {"prop43", "costly zero-valuation instance has no near-equilibrium on the grid",
       &RunCostlyAudit},
      {"thm44", "costly play stabilizes once the auctioneer bids everywhere",
       &RunCostlyAuctioneerTicket},
  };
  return *registry;
}

ReproOutcome RunRepro(const std::string& name) {
  for (const ReproCase& c : ReproRegistry()) {
    if (c.name == name) return c.run();
  }
  throw AuctionError("unknown repro case: " + name);
}

}  // namespace chinese_auctions
