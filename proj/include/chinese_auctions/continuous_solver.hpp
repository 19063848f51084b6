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

#pragma once

#include <span>
#include <vector>

#include "chinese_auctions/model.hpp"

// Solvers for continuous budgets: closed-form symmetric equilibria, exact
// best responses, and damped round-robin best-response dynamics.
namespace chinese_auctions {

class AllZeroValuationsError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

class NegativeInputError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

class InvalidConfigError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

// Raised by the dynamics when a best response only has a supremum (some item
// carries positive value but zero opposing weight). Adding auctioneer weight
// removes the discontinuity.
class BestResponseNotAttainedError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

// Result of a single-player best-response computation.
//
// When `attained` is false the optimum is an open supremum: `value` is the
// supremum, and `allocation` is a feasible witness that places a small mass
// eta on every positive-value item with zero opposing weight (coming within
// O(eta) of the supremum but never reaching it).
struct BestResponseResult {
  std::vector<double> allocation;
  double value = 0.0;
  bool attained = true;
  double lambda = 0.0;  // equalized marginal return; 0 when not applicable
};

// Profile in which every player spreads its budget proportionally to the
// common item values. Requires given mode and symmetric valuations with a
// positive sum; budgets may differ.
ContinuousProfile ProportionalEquilibrium(const AuctionInstance& inst);

// Symmetric costly-mode profile x[i][j] = (n-1)/n^2 * v[j]. Requires costly
// mode and symmetric valuations.
ContinuousProfile CostlySymmetricEquilibrium(const AuctionInstance& inst);

// Best response with a budget constraint (given mode). `opposing_totals[j]`
// must equal delta_j plus the weight of all other players on item j.
BestResponseResult BestResponseGiven(std::span<const double> valuations,
                                     std::span<const double> opposing_totals,
                                     double budget);

// Best response without a budget constraint (costly mode); separable per
// item, so the optimum is sqrt(v_j * A_j) - A_j clamped at zero.
BestResponseResult BestResponseCostly(std::span<const double> valuations,
                                      std::span<const double> opposing_totals);

// Opposing totals delta_j + sum of other players' weight on each item.
std::vector<double> OpposingTotals(const AuctionInstance& inst,
                                   const ContinuousProfile& profile,
                                   int player);

// Mode-dispatching convenience wrapper.
BestResponseResult BestResponse(const AuctionInstance& inst,
                                const ContinuousProfile& profile, int player);

struct DynamicsConfig {
  int max_rounds = 10000;
  double damping = 0.5;    // in (0, 1]
  double epsilon = 1e-8;   // convergence threshold on the best-response gap
};

struct DynamicsResult {
  ContinuousProfile profile;
  bool converged = false;
  int rounds = 0;
  double final_gap = 0.0;
};

// Round-robin damped best-response dynamics x_i <- (1-theta) x_i + theta BR_i.
// Stops once every player's best-response gap is at most cfg.epsilon. In given
// mode players with an all-zero valuation row keep their start allocation.
DynamicsResult BestResponseDynamics(const AuctionInstance& inst,
                                    const ContinuousProfile& start,
                                    const DynamicsConfig& cfg);

}  // namespace chinese_auctions
