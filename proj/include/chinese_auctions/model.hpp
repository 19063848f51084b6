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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Core data model of a ticket-lottery auction: players place ticket weight
// into per-item baskets, each item is won with probability proportional to
// the weight placed on it, and the auctioneer may add a fixed weight delta_j
// to each basket (if the auctioneer ticket is drawn, nobody gets the item).
namespace chinese_auctions {

inline constexpr double kTolerance = 1e-9;

// Absolute-or-relative comparison at the given tolerance.
inline bool ApproxEqual(double a, double b, double tol = kTolerance) {
  const double diff = std::abs(a - b);
  return diff <= tol || diff <= tol * std::max(std::abs(a), std::abs(b));
}

class AuctionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatchError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

class InvalidInstanceError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

class InvalidProfileError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

class AsymmetricValuationsError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

// Whether tickets are endowed for free (budget-capped spending) or each unit
// of placed weight costs one unit of utility (no cap).
enum class Mode { kGiven, kCostly };

std::string ModeToString(Mode mode);
Mode ModeFromString(const std::string& s);

// A player's budget: either a continuous weight that can be split arbitrarily
// or a multiset of indivisible tickets.
struct BudgetSpec {
  bool discrete = false;
  double weight = 0.0;           // continuous budget; unused when discrete
  std::vector<double> tickets;   // nonempty iff discrete

  static BudgetSpec Continuous(double w) {
    BudgetSpec b;
    b.weight = w;
    return b;
  }
  static BudgetSpec Discrete(std::vector<double> t) {
    BudgetSpec b;
    b.discrete = true;
    b.tickets = std::move(t);
    return b;
  }

  double total_weight() const {
    if (!discrete) return weight;
    double sum = 0.0;
    for (double t : tickets) sum += t;
    return sum;
  }
};

struct PlayerSpec {
  std::vector<double> valuations;  // one entry per item
  BudgetSpec budget;
};

struct AuctionInstance {
  Mode mode = Mode::kGiven;
  int num_items = 0;
  std::vector<double> delta;  // auctioneer weight per item; empty means zero
  std::vector<PlayerSpec> players;

  int num_players() const { return static_cast<int>(players.size()); }
  double valuation(int player, int item) const {
    return players[player].valuations[item];
  }
  double budget_weight(int player) const {
    return players[player].budget.total_weight();
  }
  double delta_at(int item) const {
    return delta.empty() ? 0.0 : delta[item];
  }

  bool any_discrete() const;
  bool all_discrete() const;
  // True when every player holds exactly one indivisible ticket.
  bool all_single_ticket() const;
  // True when every ticket of every player has the same weight.
  bool equal_ticket_weights(double tol = 1e-12) const;
  // True when all valuation rows agree entrywise within tol.
  bool symmetric_valuations(double tol = 1e-12) const;
};

// Convenience builders used throughout tests and the repro registry.
AuctionInstance MakeContinuousInstance(Mode mode,
                                       std::vector<std::vector<double>> values,
                                       std::vector<double> budgets,
                                       std::vector<double> delta = {});
AuctionInstance MakeSingleTicketInstance(std::vector<std::vector<double>> values,
                                         std::vector<double> ticket_weights,
                                         std::vector<double> delta = {});

// Weight matrix x[player][item], all entries nonnegative.
struct ContinuousProfile {
  std::vector<std::vector<double>> x;
};

// items[player][ticket] is the item index the ticket was placed on.
struct DiscreteAssignment {
  std::vector<std::vector<int>> items;
};

// Per-(player,item) win probabilities plus the auctioneer share per item.
// For an item with zero total weight (players and delta) all entries are 0;
// otherwise the column sums to 1 including the auctioneer share.
struct WinProbabilities {
  std::vector<std::vector<double>> sigma;
  std::vector<double> auctioneer_share;
};

std::vector<std::vector<double>> ZeroMatrix(int rows, int cols);

// Structural validation. Returns a list of human-readable violations; an
// empty list means the object is well formed.
std::vector<std::string> ValidateInstance(const AuctionInstance& inst);
std::vector<std::string> ValidateProfile(const AuctionInstance& inst,
                                         const ContinuousProfile& profile);
std::vector<std::string> ValidateAssignment(const AuctionInstance& inst,
                                            const DiscreteAssignment& assignment);

// Throws InvalidInstanceError / InvalidProfileError when validation fails.
void RequireValidInstance(const AuctionInstance& inst);
void RequireValidProfile(const AuctionInstance& inst,
                         const ContinuousProfile& profile);
void RequireValidAssignment(const AuctionInstance& inst,
                            const DiscreteAssignment& assignment);

// Sums ticket weights per (player, item).
ContinuousProfile AggregateWeights(const AuctionInstance& inst,
                                   const DiscreteAssignment& assignment);

WinProbabilities ComputeWinProbabilities(const AuctionInstance& inst,
                                         const ContinuousProfile& profile);
WinProbabilities ComputeWinProbabilities(const AuctionInstance& inst,
                                         const DiscreteAssignment& assignment);

// Exact expected utility per player. In given mode this is the win
// probability weighted sum of valuations; in costly mode the placed weight is
// subtracted.
std::vector<double> ExpectedUtilities(const AuctionInstance& inst,
                                      const ContinuousProfile& profile);
std::vector<double> ExpectedUtilities(const AuctionInstance& inst,
                                      const DiscreteAssignment& assignment);

}  // namespace chinese_auctions
