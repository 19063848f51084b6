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
#include <cmath>
#include <sstream>

namespace chinese_auctions {

namespace {

std::string Joined(const std::vector<std::string>& parts) {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out << "; ";
    out << parts[i];
  }
  return out.str();
}

}  // namespace

std::string ModeToString(Mode mode) {
  return mode == Mode::kGiven ? "given" : "costly";
}

Mode ModeFromString(const std::string& s) {
  if (s == "given") return Mode::kGiven;
  if (s == "costly") return Mode::kCostly;
  throw AuctionError("unknown mode: " + s);
}

bool AuctionInstance::any_discrete() const {
  return std::any_of(players.begin(), players.end(),
                     [](const PlayerSpec& p) { return p.budget.discrete; });
}

bool AuctionInstance::all_discrete() const {
  return std::all_of(players.begin(), players.end(),
                     [](const PlayerSpec& p) { return p.budget.discrete; });
}

bool AuctionInstance::all_single_ticket() const {
  return std::all_of(players.begin(), players.end(), [](const PlayerSpec& p) {
    return p.budget.discrete && p.budget.tickets.size() == 1;
  });
}

bool AuctionInstance::equal_ticket_weights(double tol) const {
  bool have_first = false;
  double first = 0.0;
  for (const PlayerSpec& p : players) {
    if (!p.budget.discrete) return false;
    for (double t : p.budget.tickets) {
      if (!have_first) {
        first = t;
        have_first = true;
      } else if (std::abs(t - first) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool AuctionInstance::symmetric_valuations(double tol) const {
  if (players.size() <= 1) return true;
  const std::vector<double>& base = players[0].valuations;
  for (std::size_t i = 1; i < players.size(); ++i) {
    const std::vector<double>& row = players[i].valuations;
    if (row.size() != base.size()) return false;
    for (std::size_t j = 0; j < base.size(); ++j) {
      if (std::abs(row[j] - base[j]) > tol) return false;
    }
  }
  return true;
}

AuctionInstance MakeContinuousInstance(Mode mode,
                                       std::vector<std::vector<double>> values,
                                       std::vector<double> budgets,
                                       std::vector<double> delta) {
  AuctionInstance inst;
  inst.mode = mode;
  inst.num_items = values.empty() ? 0 : static_cast<int>(values[0].size());
  inst.delta = std::move(delta);
  for (std::size_t i = 0; i < values.size(); ++i) {
    PlayerSpec p;
    p.valuations = std::move(values[i]);
    p.budget = BudgetSpec::Continuous(i < budgets.size() ? budgets[i] : 0.0);
    inst.players.push_back(std::move(p));
  }
  return inst;
}

AuctionInstance MakeSingleTicketInstance(std::vector<std::vector<double>> values,
                                         std::vector<double> ticket_weights,
                                         std::vector<double> delta) {
  AuctionInstance inst;
  inst.mode = Mode::kGiven;
  inst.num_items = values.empty() ? 0 : static_cast<int>(values[0].size());
  inst.delta = std::move(delta);
  for (std::size_t i = 0; i < values.size(); ++i) {
    PlayerSpec p;
    p.valuations = std::move(values[i]);
    p.budget = BudgetSpec::Discrete({ticket_weights[i]});
    inst.players.push_back(std::move(p));
  }
  return inst;
}

std::vector<std::vector<double>> ZeroMatrix(int rows, int cols) {
  return std::vector<std::vector<double>>(rows, std::vector<double>(cols, 0.0));
}

std::vector<std::string> ValidateInstance(const AuctionInstance& inst) {
  std::vector<std::string> errors;
  if (inst.players.empty()) errors.push_back("no players");
  if (inst.num_items < 1) errors.push_back("no items");
  if (!inst.delta.empty() &&
      inst.delta.size() != static_cast<std::size_t>(inst.num_items)) {
    errors.push_back("delta size mismatch");
  }
  for (std::size_t j = 0; j < inst.delta.size(); ++j) {
    if (!(inst.delta[j] >= 0.0) || !std::isfinite(inst.delta[j])) {
      errors.push_back("negative delta (item " + std::to_string(j) + ")");
    }
  }
  for (std::size_t i = 0; i < inst.players.size(); ++i) {
    const PlayerSpec& p = inst.players[i];
    if (p.valuations.size() != static_cast<std::size_t>(inst.num_items)) {
      errors.push_back("valuation row size mismatch (player " +
                       std::to_string(i) + ")");
      continue;
    }
    for (std::size_t j = 0; j < p.valuations.size(); ++j) {
      if (!(p.valuations[j] >= 0.0) || !std::isfinite(p.valuations[j])) {
        errors.push_back("negative valuation (player " + std::to_string(i) +
                         ", item " + std::to_string(j) + ")");
      }
    }
    if (p.budget.discrete) {
      if (p.budget.tickets.empty()) {
        errors.push_back("empty ticket set (player " + std::to_string(i) + ")");
      }
      for (double t : p.budget.tickets) {
        if (!(t > 0.0) || !std::isfinite(t)) {
          errors.push_back("nonpositive ticket (player " + std::to_string(i) +
                           ")");
          break;
        }
      }
    } else if (!(p.budget.weight >= 0.0) || !std::isfinite(p.budget.weight)) {
      errors.push_back("negative budget (player " + std::to_string(i) + ")");
    }
  }
  return errors;
}

std::vector<std::string> ValidateProfile(const AuctionInstance& inst,
                                         const ContinuousProfile& profile) {
  std::vector<std::string> errors;
  const int n = inst.num_players();
  const int m = inst.num_items;
  if (profile.x.size() != static_cast<std::size_t>(n)) {
    errors.push_back("profile row count mismatch");
    return errors;
  }
  for (int i = 0; i < n; ++i) {
    const std::vector<double>& row = profile.x[i];
    if (row.size() != static_cast<std::size_t>(m)) {
      errors.push_back("profile column count mismatch (player " +
                       std::to_string(i) + ")");
      continue;
    }
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      const double v = row[j];
      if (!std::isfinite(v) || v < -1e-12) {
        errors.push_back("negative weight (player " + std::to_string(i) +
                         ", item " + std::to_string(j) + ")");
      }
      if (inst.mode == Mode::kCostly) {
        const double cap = inst.valuation(i, j);
        if (v > cap + kTolerance * std::max(1.0, cap)) {
          errors.push_back("weight above valuation cap (player " +
                           std::to_string(i) + ", item " + std::to_string(j) +
                           ")");
        }
      }
      sum += v;
    }
    if (inst.mode == Mode::kGiven) {
      const double w = inst.budget_weight(i);
      if (std::abs(sum - w) > kTolerance * std::max(1.0, w)) {
        errors.push_back("budget not exhausted (player " + std::to_string(i) +
                         ")");
      }
    }
  }
  return errors;
}

std::vector<std::string> ValidateAssignment(const AuctionInstance& inst,
                                            const DiscreteAssignment& assignment) {
  std::vector<std::string> errors;
  const int n = inst.num_players();
  if (assignment.items.size() != static_cast<std::size_t>(n)) {
    errors.push_back("assignment row count mismatch");
    return errors;
  }
  for (int i = 0; i < n; ++i) {
    const PlayerSpec& p = inst.players[i];
    if (!p.budget.discrete) {
      errors.push_back("player " + std::to_string(i) +
                       " has a continuous budget");
      continue;
    }
    if (assignment.items[i].size() != p.budget.tickets.size()) {
      errors.push_back("ticket count mismatch (player " + std::to_string(i) +
                       ")");
      continue;
    }
    for (int item : assignment.items[i]) {
      if (item < 0 || item >= inst.num_items) {
        errors.push_back("item index out of range (player " +
                         std::to_string(i) + ")");
        break;
      }
    }
  }
  return errors;
}

void RequireValidInstance(const AuctionInstance& inst) {
  const std::vector<std::string> errors = ValidateInstance(inst);
  if (!errors.empty()) throw InvalidInstanceError(Joined(errors));
}

void RequireValidProfile(const AuctionInstance& inst,
                         const ContinuousProfile& profile) {
  const std::vector<std::string> errors = ValidateProfile(inst, profile);
  if (!errors.empty()) throw InvalidProfileError(Joined(errors));
}

void RequireValidAssignment(const AuctionInstance& inst,
                            const DiscreteAssignment& assignment) {
  const std::vector<std::string> errors = ValidateAssignment(inst, assignment);
  if (!errors.empty()) throw InvalidProfileError(Joined(errors));
}

ContinuousProfile AggregateWeights(const AuctionInstance& inst,
                                   const DiscreteAssignment& assignment) {
  RequireValidAssignment(inst, assignment);
  ContinuousProfile profile;
  profile.x = ZeroMatrix(inst.num_players(), inst.num_items);
  for (int i = 0; i < inst.num_players(); ++i) {
    const std::vector<double>& tickets = inst.players[i].budget.tickets;
    for (std::size_t t = 0; t < tickets.size(); ++t) {
      profile.x[i][assignment.items[i][t]] += tickets[t];
    }
  }
  return profile;
}

WinProbabilities ComputeWinProbabilities(const AuctionInstance& inst,
                                         const ContinuousProfile& profile) {
  const int n = inst.num_players();
  const int m = inst.num_items;
  if (profile.x.size() != static_cast<std::size_t>(n)) {
    throw DimensionMismatchError("profile has wrong player count");
  }
  for (const auto& row : profile.x) {
    if (row.size() != static_cast<std::size_t>(m)) {
      throw DimensionMismatchError("profile has wrong item count");
    }
  }
  WinProbabilities probs;
  probs.sigma = ZeroMatrix(n, m);
  probs.auctioneer_share.assign(m, 0.0);
  for (int j = 0; j < m; ++j) {
    double total = inst.delta_at(j);
    for (int i = 0; i < n; ++i) total += profile.x[i][j];
    if (total > 0.0) {
      for (int i = 0; i < n; ++i) probs.sigma[i][j] = profile.x[i][j] / total;
      probs.auctioneer_share[j] = inst.delta_at(j) / total;
    }
    // Zero total: the item stays with the auctioneer and every entry is 0.
  }
  return probs;
}

WinProbabilities ComputeWinProbabilities(const AuctionInstance& inst,
                                         const DiscreteAssignment& assignment) {
  return ComputeWinProbabilities(inst, AggregateWeights(inst, assignment));
}

std::vector<double> ExpectedUtilities(const AuctionInstance& inst,
                                      const ContinuousProfile& profile) {
  const WinProbabilities probs = ComputeWinProbabilities(inst, profile);
  const int n = inst.num_players();
  const int m = inst.num_items;
  std::vector<double> utilities(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double u = 0.0;
    for (int j = 0; j < m; ++j) {
      u += probs.sigma[i][j] * inst.valuation(i, j);
      if (inst.mode == Mode::kCostly) u -= profile.x[i][j];
    }
    utilities[i] = u;
  }
  return utilities;
}

std::vector<double> ExpectedUtilities(const AuctionInstance& inst,
                                      const DiscreteAssignment& assignment) {
  return ExpectedUtilities(inst, AggregateWeights(inst, assignment));
}

}  // namespace chinese_auctions
