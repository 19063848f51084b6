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

#include "chinese_auctions/continuous_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace chinese_auctions {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr int kMaxBisectionIters = 200;
constexpr double kEtaWitness = 1e-6;

void CheckNonNegative(std::span<const double> valuations,
                      std::span<const double> opposing_totals) {
  if (valuations.size() != opposing_totals.size()) {
    throw DimensionMismatchError("valuations and opposing totals differ in size");
  }
  for (double v : valuations) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw NegativeInputError("negative valuation in best response");
    }
  }
  for (double a : opposing_totals) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw NegativeInputError("negative opposing total in best response");
    }
  }
}

// Water level allocation y_j(lambda) = max(0, sqrt(v_j A_j / lambda) - A_j)
// over the given active items. Sum of y over the active set decreases
// monotonically in lambda, so a bisection pins the budget constraint.
struct WaterFillOutcome {
  std::vector<double> y;  // parallel to the active index list
  double lambda = 0.0;
};

double WaterMass(const std::vector<double>& v, const std::vector<double>& a,
                 double lambda, std::vector<double>* y) {
  double sum = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double yk = std::sqrt(v[k] * a[k] / lambda) - a[k];
    const double clamped = yk > 0.0 ? yk : 0.0;
    if (y != nullptr) (*y)[k] = clamped;
    sum += clamped;
  }
  return sum;
}

WaterFillOutcome WaterFill(const std::vector<double>& v,
                           const std::vector<double>& a, double budget) {
  WaterFillOutcome out;
  out.y.assign(v.size(), 0.0);
  if (v.empty() || budget <= 0.0) {
    // Any lambda at or above the largest marginal return supports y = 0.
    for (std::size_t k = 0; k < v.size(); ++k) {
      out.lambda = std::max(out.lambda, v[k] / a[k]);
    }
    return out;
  }
  if (v.size() == 1) {
    out.y[0] = budget;
    out.lambda = v[0] * a[0] / ((a[0] + budget) * (a[0] + budget));
    return out;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    lo = std::min(lo, v[k] * a[k] / ((a[k] + budget) * (a[k] + budget)));
    hi = std::max(hi, v[k] / a[k]);
  }
  const double tol = kSumTolerance * std::max(1.0, budget);
  double lambda = lo;
  std::vector<double> y(v.size(), 0.0);
  for (int iter = 0; iter < kMaxBisectionIters; ++iter) {
    lambda = 0.5 * (lo + hi);
    const double mass = WaterMass(v, a, lambda, &y);
    if (std::abs(mass - budget) <= tol) break;
    if (mass > budget) {
      lo = lambda;
    } else {
      hi = lambda;
    }
  }
  WaterMass(v, a, lambda, &y);
  out.y = std::move(y);
  out.lambda = lambda;
  return out;
}

double GivenUtility(std::span<const double> valuations,
                    std::span<const double> opposing_totals,
                    const std::vector<double>& y) {
  double u = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double total = opposing_totals[j] + y[j];
    if (total > 0.0) u += valuations[j] * (y[j] / total);
  }
  return u;
}

}  // namespace

ContinuousProfile ProportionalEquilibrium(const AuctionInstance& inst) {
  RequireValidInstance(inst);
  if (inst.mode != Mode::kGiven) {
    throw AuctionError("proportional equilibrium requires given mode");
  }
  if (!inst.symmetric_valuations()) {
    throw AsymmetricValuationsError("valuations are not symmetric");
  }
  const std::vector<double>& values = inst.players[0].valuations;
  const double value_sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(value_sum > 0.0)) {
    throw AllZeroValuationsError("all valuations are zero");
  }
  ContinuousProfile profile;
  profile.x = ZeroMatrix(inst.num_players(), inst.num_items);
  for (int i = 0; i < inst.num_players(); ++i) {
    const double w = inst.budget_weight(i);
    for (int j = 0; j < inst.num_items; ++j) {
      profile.x[i][j] = values[j] / value_sum * w;
    }
  }
  return profile;
}

ContinuousProfile CostlySymmetricEquilibrium(const AuctionInstance& inst) {
  RequireValidInstance(inst);
  if (inst.mode != Mode::kCostly) {
    throw AuctionError("costly symmetric equilibrium requires costly mode");
  }
  if (!inst.symmetric_valuations()) {
    throw AsymmetricValuationsError("valuations are not symmetric");
  }
  const int n = inst.num_players();
  const double factor = static_cast<double>(n - 1) / (static_cast<double>(n) * n);
  ContinuousProfile profile;
  profile.x = ZeroMatrix(n, inst.num_items);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < inst.num_items; ++j) {
      profile.x[i][j] = factor * inst.players[0].valuations[j];
    }
  }
  return profile;
}

BestResponseResult BestResponseGiven(std::span<const double> valuations,
                                     std::span<const double> opposing_totals,
                                     double budget) {
  CheckNonNegative(valuations, opposing_totals);
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw NegativeInputError("negative budget in best response");
  }
  const std::size_t m = valuations.size();
  BestResponseResult result;
  result.allocation.assign(m, 0.0);

  if (budget == 0.0) {
    // The only feasible point. Report the marginal-return threshold so the
    // optimality conditions remain checkable.
    for (std::size_t j = 0; j < m; ++j) {
      if (valuations[j] > 0.0 && opposing_totals[j] > 0.0) {
        result.lambda = std::max(result.lambda,
                                 valuations[j] / opposing_totals[j]);
      }
    }
    return result;
  }

  std::vector<std::size_t> contested;   // positive value, positive opposition
  std::vector<std::size_t> uncontested; // positive value, zero opposition
  for (std::size_t j = 0; j < m; ++j) {
    if (valuations[j] <= 0.0) continue;
    (opposing_totals[j] > 0.0 ? contested : uncontested).push_back(j);
  }

  if (contested.empty() && uncontested.empty()) {
    // Nothing has value; spread the budget to stay feasible.
    for (std::size_t j = 0; j < m; ++j) {
      result.allocation[j] = budget / static_cast<double>(m);
    }
    return result;
  }

  std::vector<double> v_sub;
  std::vector<double> a_sub;
  v_sub.reserve(contested.size());
  a_sub.reserve(contested.size());
  for (std::size_t j : contested) {
    v_sub.push_back(valuations[j]);
    a_sub.push_back(opposing_totals[j]);
  }

  if (uncontested.empty()) {
    const WaterFillOutcome fill = WaterFill(v_sub, a_sub, budget);
    for (std::size_t k = 0; k < contested.size(); ++k) {
      result.allocation[contested[k]] = fill.y[k];
    }
    result.lambda = fill.lambda;
    result.value = GivenUtility(valuations, opposing_totals, result.allocation);
    return result;
  }

  // Open supremum: each uncontested item is worth its full value for an
  // arbitrarily small mass. Value uses the whole budget on the contested
  // items; the witness reserves eta for the uncontested ones.
  result.attained = false;
  double sup = 0.0;
  for (std::size_t j : uncontested) sup += valuations[j];
  if (!contested.empty()) {
    const WaterFillOutcome at_limit = WaterFill(v_sub, a_sub, budget);
    std::vector<double> limit_alloc(m, 0.0);
    for (std::size_t k = 0; k < contested.size(); ++k) {
      limit_alloc[contested[k]] = at_limit.y[k];
    }
    sup += GivenUtility(valuations, opposing_totals, limit_alloc);
  }
  result.value = sup;

  const double eta_total = std::min(kEtaWitness, budget / 2.0);
  const double eta_each = eta_total / static_cast<double>(uncontested.size());
  for (std::size_t j : uncontested) result.allocation[j] = eta_each;
  const double remainder = budget - eta_total;
  if (!contested.empty()) {
    const WaterFillOutcome fill = WaterFill(v_sub, a_sub, remainder);
    for (std::size_t k = 0; k < contested.size(); ++k) {
      result.allocation[contested[k]] = fill.y[k];
    }
  } else {
    // No contested target for the remainder; extra mass on claimed items is
    // free in given mode.
    for (std::size_t j : uncontested) {
      result.allocation[j] += remainder / static_cast<double>(uncontested.size());
    }
  }
  return result;
}

BestResponseResult BestResponseCostly(std::span<const double> valuations,
                                      std::span<const double> opposing_totals) {
  CheckNonNegative(valuations, opposing_totals);
  const std::size_t m = valuations.size();
  BestResponseResult result;
  result.allocation.assign(m, 0.0);
  double value = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double v = valuations[j];
    const double a = opposing_totals[j];
    if (v <= 0.0) continue;
    if (a > 0.0) {
      const double y = std::sqrt(v * a) - a;
      if (y > 0.0) {
        result.allocation[j] = y;
        value += v * (y / (a + y)) - y;
      }
    } else {
      // Jump at zero: any positive mass wins the item outright, so only the
      // supremum v_j exists. Witness mass stays inside the [0, v_j] box.
      result.attained = false;
      result.allocation[j] = std::min(kEtaWitness, v / 2.0);
      value += v;
    }
  }
  result.value = value;
  return result;
}

std::vector<double> OpposingTotals(const AuctionInstance& inst,
                                   const ContinuousProfile& profile,
                                   int player) {
  std::vector<double> totals(inst.num_items, 0.0);
  for (int j = 0; j < inst.num_items; ++j) {
    double t = inst.delta_at(j);
    for (int k = 0; k < inst.num_players(); ++k) {
      if (k != player) t += profile.x[k][j];
    }
    totals[j] = t;
  }
  return totals;
}

BestResponseResult BestResponse(const AuctionInstance& inst,
                                const ContinuousProfile& profile, int player) {
  const std::vector<double> totals = OpposingTotals(inst, profile, player);
  const std::vector<double>& v = inst.players[player].valuations;
  if (inst.mode == Mode::kGiven) {
    return BestResponseGiven(v, totals, inst.budget_weight(player));
  }
  return BestResponseCostly(v, totals);
}

DynamicsResult BestResponseDynamics(const AuctionInstance& inst,
                                    const ContinuousProfile& start,
                                    const DynamicsConfig& cfg) {
  RequireValidInstance(inst);
  RequireValidProfile(inst, start);
  if (cfg.max_rounds < 1) {
    throw InvalidConfigError("max_rounds must be at least 1");
  }
  if (!(cfg.damping > 0.0) || cfg.damping > 1.0) {
    throw InvalidConfigError("damping must lie in (0, 1]");
  }
  if (!(cfg.epsilon > 0.0)) {
    throw InvalidConfigError("epsilon must be positive");
  }

  const int n = inst.num_players();
  const int m = inst.num_items;
  std::vector<bool> skip(n, false);
  if (inst.mode == Mode::kGiven) {
    for (int i = 0; i < n; ++i) {
      const std::vector<double>& v = inst.players[i].valuations;
      skip[i] = std::all_of(v.begin(), v.end(), [](double x) { return x <= 0.0; });
    }
  }

  DynamicsResult result;
  result.profile = start;

  const auto require_attained = [](const BestResponseResult& br, int player) {
    if (!br.attained) {
      throw BestResponseNotAttainedError(
          "best response of player " + std::to_string(player) +
          " is an open supremum; add auctioneer weight to every item");
    }
  };

  for (int round = 1; round <= cfg.max_rounds; ++round) {
    for (int i = 0; i < n; ++i) {
      if (skip[i]) continue;
      const BestResponseResult br = BestResponse(inst, result.profile, i);
      require_attained(br, i);
      for (int j = 0; j < m; ++j) {
        result.profile.x[i][j] = (1.0 - cfg.damping) * result.profile.x[i][j] +
                                 cfg.damping * br.allocation[j];
      }
    }
    // Separate evaluation pass so the reported gap refers to the profile as
    // it stands at the end of the round.
    const std::vector<double> utilities = ExpectedUtilities(inst, result.profile);
    double gap = 0.0;
    for (int i = 0; i < n; ++i) {
      if (skip[i]) continue;
      const BestResponseResult br = BestResponse(inst, result.profile, i);
      require_attained(br, i);
      gap = std::max(gap, br.value - utilities[i]);
    }
    result.rounds = round;
    result.final_gap = gap;
    if (gap <= cfg.epsilon) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

}  // namespace chinese_auctions
