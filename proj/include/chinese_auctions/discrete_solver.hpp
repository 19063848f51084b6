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

#include <cstdint>
#include <vector>

#include "chinese_auctions/model.hpp"

// Constructive equilibrium algorithms for indivisible tickets plus exact
// brute-force machinery for small instances.
namespace chinese_auctions {

class MultiTicketPlayerError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

class NotTwoItemsError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

class UnequalTicketWeightsError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

class ExplosionGuardError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

inline constexpr double kStrategyCountGuard = 1e6;
inline constexpr double kJointProfileGuard = 1e7;

struct GreedyStep {
  int player = 0;
  int ticket = 0;
  int item = 0;
  double score = 0.0;
};

// Ordered log of greedy choices; replaying it reproduces the assignment.
struct GreedyTrace {
  std::vector<GreedyStep> steps;
};

struct GreedyResult {
  DiscreteAssignment assignment;
  GreedyTrace trace;
};

// Places single tickets in decreasing weight order, each on the item with
// the largest marginal win value (w / (X_j + w)) * v_j. Requires symmetric
// valuations and exactly one ticket per player. The result is an exact pure
// equilibrium.
GreedyResult GreedyByWeight(const AuctionInstance& inst);

// Two items, one ticket per player: start everyone on item 0, move players
// to item 1 in ascending order of w_i * v_i0 / v_i1 whenever the move
// strictly improves their utility (players with v_i1 = 0 never move), then
// settle any remaining improving single-player moves. The settling phase is
// required: the one-way pass alone can leave an earlier mover wanting to
// return once item 1 crowds up.
DiscreteAssignment TwoItemRatioOrder(const AuctionInstance& inst);

// Players with identical unit tickets arrive one by one, each picking the
// item maximizing v_ij / (n_j + 1); after every arrival a deviation cascade
// runs at the active item until nobody can strictly improve.
DiscreteAssignment ArrivalCascade(const AuctionInstance& inst);

// All ticket-to-item maps of one player. With dedup_equal_tickets, tickets of
// identical weight are collapsed to one canonical representative per weight
// split (compositions), since permuting equal tickets never changes payoffs.
std::vector<std::vector<int>> EnumeratePlayerStrategies(
    const AuctionInstance& inst, int player, bool dedup_equal_tickets = true);

// Enumerates every joint profile and keeps those with no strictly improving
// unilateral deviation. Utility comparisons run in exact rational arithmetic
// whenever ticket weights, valuations and delta convert exactly; otherwise a
// 1e-12 tolerance decides improvement.
std::vector<DiscreteAssignment> ExhaustiveEquilibriumSearch(
    const AuctionInstance& inst, int threads = 1);

// Best unilateral improvement gap per player for a concrete assignment, with
// the same exact-or-tolerance comparison semantics as the exhaustive search.
// A gap of exactly 0 for every player certifies an exact pure equilibrium.
std::vector<double> BestDeviationGaps(const AuctionInstance& inst,
                                      const DiscreteAssignment& assignment);

}  // namespace chinese_auctions
