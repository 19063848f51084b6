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

#include "chinese_auctions/model.hpp"

#include <algorithm>
#include <string>

#include "doctest.h"

#include "chinese_auctions/verify.hpp"
#include "test_support.hpp"

namespace chinese_auctions {
namespace {

bool HasError(const std::vector<std::string>& errors, const std::string& needle) {
  return std::any_of(errors.begin(), errors.end(), [&](const std::string& e) {
    return e.find(needle) != std::string::npos;
  });
}

TEST_CASE("well-formed instance validates cleanly") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 3.0}, {1.0, 3.0}}, {1.0, 1.0});
  CHECK(ValidateInstance(inst).empty());
}

TEST_CASE("negative valuation is reported") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0, -1.0}, {1.0, 3.0}}, {1.0, 1.0});
  CHECK(HasError(ValidateInstance(inst), "negative valuation"));
}

TEST_CASE("zero-weight ticket is reported") {
  AuctionInstance inst = MakeSingleTicketInstance({{1.0}}, {1.0});
  inst.players[0].budget = BudgetSpec::Discrete({0.0});
  CHECK(HasError(ValidateInstance(inst), "nonpositive ticket"));
}

TEST_CASE("structural mismatches are reported") {
  AuctionInstance inst = MakeContinuousInstance(Mode::kGiven, {{1.0, 2.0}}, {1.0});
  inst.players[0].valuations = {1.0};
  CHECK(HasError(ValidateInstance(inst), "row size mismatch"));

  AuctionInstance bad_delta = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 2.0}}, {1.0}, {0.1});
  CHECK(HasError(ValidateInstance(bad_delta), "delta size mismatch"));

  AuctionInstance empty_tickets = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 2.0}}, {1.0});
  empty_tickets.players[0].budget = BudgetSpec::Discrete({});
  CHECK(HasError(ValidateInstance(empty_tickets), "empty ticket set"));
}

TEST_CASE("zero continuous budget is permitted") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 2.0}, {1.0, 2.0}}, {0.0, 1.0});
  CHECK(ValidateInstance(inst).empty());
  ContinuousProfile profile;
  profile.x = {{0.0, 0.0}, {0.5, 0.5}};
  CHECK(ValidateProfile(inst, profile).empty());
  const std::vector<double> u = ExpectedUtilities(inst, profile);
  CHECK(u[0] == 0.0);
}

TEST_CASE("equal weights on one item split the win probability") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{6.0, 0.0}, {6.0, 0.0}}, {1.0, 1.0});
  ContinuousProfile profile;
  profile.x = {{1.0, 0.0}, {1.0, 0.0}};
  const WinProbabilities probs = ComputeWinProbabilities(inst, profile);
  CHECK(probs.sigma[0][0] == 0.5);
  CHECK(probs.sigma[1][0] == 0.5);
  SUBCASE("an item with no weight has all-zero entries") {
    CHECK(probs.sigma[0][1] == 0.0);
    CHECK(probs.sigma[1][1] == 0.0);
    CHECK(probs.auctioneer_share[1] == 0.0);
  }
}

TEST_CASE("auctioneer weight enters the denominator") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0}, {1.0}}, {1.0, 1.0}, {2.0});
  ContinuousProfile profile;
  profile.x = {{1.0}, {1.0}};
  const WinProbabilities probs = ComputeWinProbabilities(inst, profile);
  CHECK(probs.sigma[0][0] == 0.25);
  CHECK(probs.sigma[1][0] == 0.25);
  CHECK(probs.auctioneer_share[0] == 0.5);

  // Monte Carlo cross-check of the same shares.
  MonteCarloOptions options;
  options.trials = 200000;
  options.seed = 7;
  const MonteCarloResult mc = SimulateUtilities(inst, profile, options);
  const double se = std::sqrt(0.25 * 0.75 / options.trials);
  CHECK(std::abs(mc.sigma_hat[0][0] - 0.25) <= 4 * se);
  CHECK(std::abs(mc.sigma_hat[1][0] - 0.25) <= 4 * se);
}

TEST_CASE("given-mode utility is the probability-weighted value") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{6.0}, {1.0}}, {1.0, 1.0});
  ContinuousProfile profile;
  profile.x = {{1.0}, {1.0}};
  const std::vector<double> u = ExpectedUtilities(inst, profile);
  CHECK(u[0] == 3.0);
}

TEST_CASE("costly utility subtracts the spend") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kCostly, {{4.0, 8.0}, {4.0, 8.0}}, {0.0, 0.0});
  ContinuousProfile profile;
  profile.x = {{1.0, 2.0}, {1.0, 2.0}};
  const std::vector<double> u = ExpectedUtilities(inst, profile);
  CHECK(u[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(u[1] == doctest::Approx(3.0).epsilon(1e-12));

  MonteCarloOptions options;
  options.trials = 200000;
  options.seed = 11;
  const MonteCarloResult mc = SimulateUtilities(inst, profile, options);
  CHECK(std::abs(mc.mean_utility[0] - 3.0) <= 4 * mc.standard_error[0]);
}

TEST_CASE("a lone positive bid wins the item outright") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{5.0, 2.0}, {5.0, 2.0}}, {1.0, 1.0});
  ContinuousProfile profile;
  profile.x = {{1.0, 0.0}, {0.0, 1.0}};
  const std::vector<double> u = ExpectedUtilities(inst, profile);
  CHECK(u[0] == 5.0);
  CHECK(u[1] == 2.0);
}

TEST_CASE("probability conservation holds on random profiles") {
  std::mt19937_64 rng = MakeRng(101);
  for (int trial = 0; trial < 50; ++trial) {
    AuctionInstance inst = test_support::RandomSymmetricContinuous(
        rng, trial % 2 == 0 ? Mode::kGiven : Mode::kCostly);
    if (trial % 3 == 0) {
      inst.delta.assign(inst.num_items, 0.0);
      for (int j = 0; j < inst.num_items; ++j) {
        inst.delta[j] = test_support::RandUniform(rng, 0.0, 1.0);
      }
    }
    const ContinuousProfile profile = test_support::RandomInteriorProfile(rng, inst);
    const WinProbabilities probs = ComputeWinProbabilities(inst, profile);
    for (int j = 0; j < inst.num_items; ++j) {
      double total = inst.delta_at(j);
      double mass = probs.auctioneer_share[j];
      for (int i = 0; i < inst.num_players(); ++i) {
        total += profile.x[i][j];
        mass += probs.sigma[i][j];
        CHECK(probs.sigma[i][j] >= 0.0);
        CHECK(probs.sigma[i][j] <= 1.0);
      }
      if (total > 0.0) {
        CHECK(std::abs(mass - 1.0) <= 1e-12);
      } else {
        CHECK(mass == 0.0);
      }
    }
  }
}

TEST_CASE("raising a bid never lowers its own win probability") {
  std::mt19937_64 rng = MakeRng(102);
  for (int trial = 0; trial < 50; ++trial) {
    const AuctionInstance inst =
        test_support::RandomSymmetricContinuous(rng, Mode::kGiven);
    ContinuousProfile profile = test_support::RandomInteriorProfile(rng, inst);
    const int i = test_support::RandInt(rng, 0, inst.num_players() - 1);
    const int j = test_support::RandInt(rng, 0, inst.num_items - 1);
    const double before = ComputeWinProbabilities(inst, profile).sigma[i][j];
    profile.x[i][j] += test_support::RandUniform(rng, 0.1, 2.0);
    const double after = ComputeWinProbabilities(inst, profile).sigma[i][j];
    CHECK(after >= before);
  }
}

TEST_CASE("scaling one valuation row scales only that player's utility") {
  std::mt19937_64 rng = MakeRng(103);
  for (int trial = 0; trial < 20; ++trial) {
    AuctionInstance inst = test_support::RandomSymmetricContinuous(rng, Mode::kGiven);
    const ContinuousProfile profile = test_support::RandomInteriorProfile(rng, inst);
    const std::vector<double> before = ExpectedUtilities(inst, profile);
    const int i = test_support::RandInt(rng, 0, inst.num_players() - 1);
    for (double& v : inst.players[i].valuations) v *= 4.0;  // power of two
    const std::vector<double> after = ExpectedUtilities(inst, profile);
    for (int k = 0; k < inst.num_players(); ++k) {
      if (k == i) {
        CHECK(after[k] == 4.0 * before[k]);
      } else {
        CHECK(after[k] == before[k]);
      }
    }
  }
}

TEST_CASE("ticket assignments and their aggregated weights agree") {
  std::mt19937_64 rng = MakeRng(104);
  for (int trial = 0; trial < 30; ++trial) {
    AuctionInstance inst = test_support::RandomMultiTicket(rng);
    if (trial % 2 == 1) inst.mode = Mode::kCostly;
    DiscreteAssignment assignment;
    assignment.items.resize(inst.num_players());
    for (int i = 0; i < inst.num_players(); ++i) {
      for (std::size_t t = 0; t < inst.players[i].budget.tickets.size(); ++t) {
        assignment.items[i].push_back(
            test_support::RandInt(rng, 0, inst.num_items - 1));
      }
    }
    const std::vector<double> via_assignment = ExpectedUtilities(inst, assignment);
    const std::vector<double> via_profile =
        ExpectedUtilities(inst, AggregateWeights(inst, assignment));
    for (int i = 0; i < inst.num_players(); ++i) {
      CHECK(via_assignment[i] == via_profile[i]);
    }
  }
}

TEST_CASE("profile validation catches infeasible weights") {
  const AuctionInstance given = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 2.0}}, {1.0});
  ContinuousProfile short_budget;
  short_budget.x = {{0.2, 0.2}};
  CHECK(HasError(ValidateProfile(given, short_budget), "budget not exhausted"));

  const AuctionInstance costly = MakeContinuousInstance(
      Mode::kCostly, {{1.0, 2.0}}, {0.0});
  ContinuousProfile above_cap;
  above_cap.x = {{1.5, 0.0}};
  CHECK(HasError(ValidateProfile(costly, above_cap), "above valuation cap"));

  ContinuousProfile wrong_shape;
  wrong_shape.x = {{0.5}};
  CHECK_FALSE(ValidateProfile(given, wrong_shape).empty());
  CHECK_THROWS_AS(ComputeWinProbabilities(given, wrong_shape),
                  DimensionMismatchError);
}

}  // namespace
}  // namespace chinese_auctions
