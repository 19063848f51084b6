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

#include "chinese_auctions/discrete_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>

#include "chinese_auctions/parallel.hpp"
#include "chinese_auctions/rational.hpp"

namespace chinese_auctions {

namespace {

constexpr double kComparisonTol = 1e-12;

void RequireSingleTickets(const AuctionInstance& inst) {
  for (int i = 0; i < inst.num_players(); ++i) {
    const BudgetSpec& b = inst.players[i].budget;
    if (!b.discrete || b.tickets.size() != 1) {
      throw MultiTicketPlayerError("player " + std::to_string(i) +
                                   " must hold exactly one indivisible ticket");
    }
  }
}

// score(j) = (w / (X_j + w)) * v_j. Compares score(j) > score(best) without
// division: v_j * (X_best + w) > v_best * (X_j + w).
bool ScoreStrictlyBetter(double v_j, double x_j, double v_best, double x_best,
                         double w) {
  return v_j * (x_best + w) > v_best * (x_j + w);
}

double CompositionCountD(int total, int parts) {
  double count = 1.0;
  for (int i = 1; i < parts; ++i) count = count * (total + i) / i;
  return count;
}

// Deduplicated strategy count of one player, without materializing anything.
double DedupStrategyCount(const AuctionInstance& inst, int player) {
  const std::vector<double>& tickets = inst.players[player].budget.tickets;
  std::vector<double> group_weight;
  std::vector<int> group_size;
  for (double t : tickets) {
    bool found = false;
    for (std::size_t g = 0; g < group_weight.size(); ++g) {
      if (group_weight[g] == t) {
        ++group_size[g];
        found = true;
        break;
      }
    }
    if (!found) {
      group_weight.push_back(t);
      group_size.push_back(1);
    }
  }
  double count = 1.0;
  for (int size : group_size) {
    count *= CompositionCountD(size, inst.num_items);
  }
  return count;
}

// Compositions of `total` into `parts` bins, first bin count descending.
std::vector<std::vector<int>> Compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(parts, 0);
  const std::function<void(int, int)> rec = [&](int slot, int remaining) {
    if (slot == parts - 1) {
      current[slot] = remaining;
      out.push_back(current);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      current[slot] = c;
      rec(slot + 1, remaining - c);
    }
  };
  if (parts > 0) rec(0, total);
  return out;
}

// Shared evaluation state for the exhaustive search and the deviation gaps.
struct PreparedGame {
  const AuctionInstance* inst = nullptr;
  int n = 0;
  int m = 0;
  std::vector<std::vector<std::vector<int>>> maps;    // [p][s][ticket] -> item
  std::vector<std::vector<std::vector<double>>> wd;   // [p][s][item] weights
  bool exact_ok = false;
  std::vector<std::vector<std::vector<Rational>>> wr;  // mirrors wd
  std::vector<std::vector<Rational>> vr;               // [i][j]
  std::vector<Rational> dr;                            // [j]
};

std::vector<double> AggregateStrategy(const std::vector<double>& tickets,
                                      const std::vector<int>& map, int m) {
  std::vector<double> w(m, 0.0);
  for (std::size_t t = 0; t < tickets.size(); ++t) w[map[t]] += tickets[t];
  return w;
}

std::optional<std::vector<Rational>> AggregateStrategyExact(
    const std::vector<double>& tickets, const std::vector<int>& map, int m) {
  std::vector<Rational> w(m, Rational{0, 1});
  for (std::size_t t = 0; t < tickets.size(); ++t) {
    const auto ticket = RationalFromDouble(tickets[t]);
    if (!ticket) return std::nullopt;
    const auto sum = RationalAdd(w[map[t]], *ticket);
    if (!sum) return std::nullopt;
    w[map[t]] = *sum;
  }
  return w;
}

PreparedGame PrepareGame(const AuctionInstance& inst) {
  PreparedGame g;
  g.inst = &inst;
  g.n = inst.num_players();
  g.m = inst.num_items;
  g.maps.resize(g.n);
  g.wd.resize(g.n);
  g.wr.resize(g.n);
  g.vr.assign(g.n, {});
  g.dr.assign(g.m, Rational{0, 1});

  bool exact = true;
  for (int j = 0; j < g.m; ++j) {
    const auto d = RationalFromDouble(inst.delta_at(j));
    if (!d) {
      exact = false;
      break;
    }
    g.dr[j] = *d;
  }
  for (int i = 0; exact && i < g.n; ++i) {
    g.vr[i].assign(g.m, Rational{0, 1});
    for (int j = 0; j < g.m; ++j) {
      const auto v = RationalFromDouble(inst.valuation(i, j));
      if (!v) {
        exact = false;
        break;
      }
      g.vr[i][j] = *v;
    }
  }

  for (int i = 0; i < g.n; ++i) {
    g.maps[i] = EnumeratePlayerStrategies(inst, i, /*dedup_equal_tickets=*/true);
    const std::vector<double>& tickets = inst.players[i].budget.tickets;
    g.wd[i].reserve(g.maps[i].size());
    g.wr[i].reserve(g.maps[i].size());
    for (const std::vector<int>& map : g.maps[i]) {
      g.wd[i].push_back(AggregateStrategy(tickets, map, g.m));
      if (exact) {
        auto wr = AggregateStrategyExact(tickets, map, g.m);
        if (!wr) {
          exact = false;
        } else {
          g.wr[i].push_back(std::move(*wr));
        }
      }
    }
  }
  g.exact_ok = exact;
  return g;
}

double UtilityFromTotalsD(const PreparedGame& g, int i,
                          const std::vector<double>& other_totals,
                          const std::vector<double>& own) {
  double u = 0.0;
  for (int j = 0; j < g.m; ++j) {
    const double total = other_totals[j] + own[j];
    if (own[j] > 0.0 && total > 0.0) {
      u += g.inst->valuation(i, j) * (own[j] / total);
    }
    if (g.inst->mode == Mode::kCostly) u -= own[j];
  }
  return u;
}

std::optional<Rational> UtilityFromTotalsR(const PreparedGame& g, int i,
                                           const std::vector<Rational>& other_totals,
                                           const std::vector<Rational>& own) {
  Rational u{0, 1};
  for (int j = 0; j < g.m; ++j) {
    if (own[j].num != 0) {
      const auto total = RationalAdd(other_totals[j], own[j]);
      if (!total) return std::nullopt;
      const auto share = RationalDiv(own[j], *total);
      if (!share) return std::nullopt;
      const auto term = RationalMul(g.vr[i][j], *share);
      if (!term) return std::nullopt;
      const auto sum = RationalAdd(u, *term);
      if (!sum) return std::nullopt;
      u = *sum;
    }
    if (g.inst->mode == Mode::kCostly) {
      const auto diff = RationalSub(u, own[j]);
      if (!diff) return std::nullopt;
      u = *diff;
    }
  }
  return u;
}

// Opposing totals (delta + everyone but `player`) for a concrete cell.
std::vector<double> OtherTotalsD(const PreparedGame& g,
                                 const std::vector<const std::vector<double>*>& w,
                                 int player) {
  std::vector<double> totals(g.m, 0.0);
  for (int j = 0; j < g.m; ++j) {
    double t = g.inst->delta_at(j);
    for (int p = 0; p < g.n; ++p) {
      if (p != player) t += (*w[p])[j];
    }
    totals[j] = t;
  }
  return totals;
}

std::optional<std::vector<Rational>> OtherTotalsR(
    const PreparedGame& g, const std::vector<const std::vector<Rational>*>& w,
    int player) {
  std::vector<Rational> totals(g.m, Rational{0, 1});
  for (int j = 0; j < g.m; ++j) {
    Rational t = g.dr[j];
    for (int p = 0; p < g.n; ++p) {
      if (p == player) continue;
      const auto sum = RationalAdd(t, (*w[p])[j]);
      if (!sum) return std::nullopt;
      t = *sum;
    }
    totals[j] = t;
  }
  return totals;
}

// Largest improvement for `player` over its strategy list, given fixed
// opponents. Exact when possible, else double with the 1e-12 clamp.
double BestGapAgainst(const PreparedGame& g, int player,
                      const std::vector<const std::vector<double>*>& cell_d,
                      const std::vector<const std::vector<Rational>*>* cell_r,
                      const std::vector<double>& current_d,
                      const std::vector<Rational>* current_r) {
  if (g.exact_ok && cell_r != nullptr && current_r != nullptr) {
    const auto totals = OtherTotalsR(g, *cell_r, player);
    if (totals) {
      const auto u_cur = UtilityFromTotalsR(g, player, *totals, *current_r);
      if (u_cur) {
        std::optional<Rational> best = *u_cur;
        bool ok = true;
        for (const std::vector<Rational>& alt : g.wr[player]) {
          const auto u_alt = UtilityFromTotalsR(g, player, *totals, alt);
          if (!u_alt) {
            ok = false;
            break;
          }
          if (RationalCompare(*u_alt, *best) > 0) best = *u_alt;
        }
        if (ok) {
          const auto gap = RationalSub(*best, *u_cur);
          if (gap) return RationalToDouble(*gap);
        }
      }
    }
  }
  const std::vector<double> totals = OtherTotalsD(g, cell_d, player);
  const double u_cur = UtilityFromTotalsD(g, player, totals, current_d);
  double best = u_cur;
  for (const std::vector<double>& alt : g.wd[player]) {
    best = std::max(best, UtilityFromTotalsD(g, player, totals, alt));
  }
  const double gap = best - u_cur;
  return gap <= kComparisonTol ? 0.0 : gap;
}

}  // namespace

GreedyResult GreedyByWeight(const AuctionInstance& inst) {
  RequireValidInstance(inst);
  RequireSingleTickets(inst);
  if (!inst.symmetric_valuations()) {
    throw AsymmetricValuationsError("valuations must be symmetric");
  }
  const int n = inst.num_players();
  const int m = inst.num_items;
  const std::vector<double>& values = inst.players[0].valuations;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.players[a].budget.tickets[0] > inst.players[b].budget.tickets[0];
  });

  std::vector<double> basket(m, 0.0);
  for (int j = 0; j < m; ++j) basket[j] = inst.delta_at(j);

  GreedyResult result;
  result.assignment.items.assign(n, std::vector<int>(1, 0));
  for (int k : order) {
    const double w = inst.players[k].budget.tickets[0];
    int best = 0;
    for (int j = 1; j < m; ++j) {
      if (ScoreStrictlyBetter(values[j], basket[j], values[best], basket[best], w)) {
        best = j;
      }
    }
    const double score = values[best] * (w / (basket[best] + w));
    result.assignment.items[k][0] = best;
    result.trace.steps.push_back(GreedyStep{k, 0, best, score});
    basket[best] += w;
  }
  return result;
}

DiscreteAssignment TwoItemRatioOrder(const AuctionInstance& inst) {
  RequireValidInstance(inst);
  if (inst.num_items != 2) {
    throw NotTwoItemsError("requires exactly two items");
  }
  RequireSingleTickets(inst);
  const int n = inst.num_players();

  // Phase 1: everyone starts on item 0; players move to item 1 in ascending
  // order of w_i * v_i0 / v_i1 whenever the move strictly improves them.
  // Players that place no value on item 1 never benefit and sort last.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto ratio = [&](int i) {
    const double v1 = inst.valuation(i, 1);
    if (v1 <= 0.0) return std::numeric_limits<double>::infinity();
    return inst.players[i].budget.tickets[0] * inst.valuation(i, 0) / v1;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ratio(a) < ratio(b); });

  double x0 = inst.delta_at(0);
  double x1 = inst.delta_at(1);
  for (int i = 0; i < n; ++i) x0 += inst.players[i].budget.tickets[0];

  DiscreteAssignment assignment;
  assignment.items.assign(n, std::vector<int>(1, 0));
  for (int i : order) {
    const double w = inst.players[i].budget.tickets[0];
    // Strict improvement, cross-multiplied: v1 * x0 > v0 * (x1 + w).
    if (inst.valuation(i, 1) * x0 > inst.valuation(i, 0) * (x1 + w)) {
      assignment.items[i][0] = 1;
      x0 -= w;
      x1 += w;
    }
  }

  // Phase 2: the one-way pass can overshoot when crowding at item 1 plus the
  // emptying of item 0 flips an earlier mover (a concrete failure mode of the
  // pure ascending pass). Settle with single-player best-response moves; a
  // mover strictly improves, and in practice this ends within a handful of
  // moves.
  const int move_cap = 4 * n * n + 16;
  for (int moves = 0; moves <= move_cap; ++moves) {
    int mover = -1;
    for (int i = 0; i < n; ++i) {
      const double w = inst.players[i].budget.tickets[0];
      const double v0 = inst.valuation(i, 0);
      const double v1 = inst.valuation(i, 1);
      const bool improves = assignment.items[i][0] == 1
                                ? v0 * x1 > v1 * (x0 + w)
                                : v1 * x0 > v0 * (x1 + w);
      if (improves) {
        mover = i;
        break;
      }
    }
    if (mover < 0) return assignment;
    const double w = inst.players[mover].budget.tickets[0];
    if (assignment.items[mover][0] == 1) {
      assignment.items[mover][0] = 0;
      x1 -= w;
      x0 += w;
    } else {
      assignment.items[mover][0] = 1;
      x0 -= w;
      x1 += w;
    }
  }

  // Never observed across large randomized sweeps; keep the operation total.
  const std::vector<DiscreteAssignment> all = ExhaustiveEquilibriumSearch(inst);
  if (all.empty()) {
    throw AuctionError("two-item settling found no pure equilibrium");
  }
  return all.front();
}

DiscreteAssignment ArrivalCascade(const AuctionInstance& inst) {
  RequireValidInstance(inst);
  RequireSingleTickets(inst);
  if (!inst.equal_ticket_weights()) {
    throw UnequalTicketWeightsError("ticket weights must be identical");
  }
  for (int j = 0; j < inst.num_items; ++j) {
    if (inst.delta_at(j) > 0.0) {
      throw AuctionError("arrival cascade requires zero auctioneer weight");
    }
  }
  const int n = inst.num_players();
  const int m = inst.num_items;

  std::vector<int> counts(m, 0);
  std::vector<int> location(n, -1);

  // Best item for `i` under share v / (count + 1); the `exclude` item uses its
  // post-departure count implicitly via the strict improvement test.
  const auto best_item = [&](int i, int exclude) {
    int best = -1;
    for (int j = 0; j < m; ++j) {
      if (j == exclude) continue;
      if (best < 0 ||
          inst.valuation(i, j) * (counts[best] + 1) >
              inst.valuation(i, best) * (counts[j] + 1)) {
        best = j;
      }
    }
    return best;
  };

  for (int i = 0; i < n; ++i) {
    int target = best_item(i, -1);
    location[i] = target;
    ++counts[target];
    int active = target;
    int moves = 0;
    while (true) {
      int mover = -1;
      int mover_target = -1;
      for (int l = 0; l < n; ++l) {
        if (location[l] != active) continue;
        const int k = best_item(l, active);
        if (k < 0) continue;
        // Deviating is profitable iff v_lk / (n_k + 1) > v_la / n_a.
        if (inst.valuation(l, k) * counts[active] >
            inst.valuation(l, active) * (counts[k] + 1)) {
          mover = l;
          mover_target = k;
          break;
        }
      }
      if (mover < 0) break;
      --counts[active];
      ++counts[mover_target];
      location[mover] = mover_target;
      active = mover_target;
      if (++moves > n) {
        throw std::logic_error("deviation cascade exceeded one move per player");
      }
    }
  }

  DiscreteAssignment assignment;
  assignment.items.assign(n, std::vector<int>(1, 0));
  for (int i = 0; i < n; ++i) assignment.items[i][0] = location[i];
  return assignment;
}

std::vector<std::vector<int>> EnumeratePlayerStrategies(
    const AuctionInstance& inst, int player, bool dedup_equal_tickets) {
  const BudgetSpec& budget = inst.players[player].budget;
  if (!budget.discrete) {
    throw AuctionError("player " + std::to_string(player) +
                       " has a continuous budget");
  }
  const int m = inst.num_items;
  const int k = static_cast<int>(budget.tickets.size());
  if (std::pow(static_cast<double>(m), k) > kStrategyCountGuard) {
    throw ExplosionGuardError("strategy space of player " +
                              std::to_string(player) + " exceeds the guard");
  }

  std::vector<std::vector<int>> out;
  if (!dedup_equal_tickets) {
    std::vector<int> map(k, 0);
    while (true) {
      out.push_back(map);
      int pos = k - 1;
      while (pos >= 0 && map[pos] == m - 1) map[pos--] = 0;
      if (pos < 0) break;
      ++map[pos];
    }
    return out;
  }

  // Group tickets of identical weight; within a group only the weight split
  // across items matters, so enumerate compositions per group.
  std::vector<double> group_weight;
  std::vector<std::vector<int>> group_tickets;
  for (int t = 0; t < k; ++t) {
    const double w = budget.tickets[t];
    bool found = false;
    for (std::size_t gidx = 0; gidx < group_weight.size(); ++gidx) {
      if (group_weight[gidx] == w) {
        group_tickets[gidx].push_back(t);
        found = true;
        break;
      }
    }
    if (!found) {
      group_weight.push_back(w);
      group_tickets.push_back({t});
    }
  }

  std::vector<std::vector<std::vector<int>>> group_splits;
  for (const std::vector<int>& tickets : group_tickets) {
    group_splits.push_back(Compositions(static_cast<int>(tickets.size()), m));
  }

  std::vector<std::size_t> pick(group_splits.size(), 0);
  while (true) {
    std::vector<int> map(k, 0);
    for (std::size_t gidx = 0; gidx < group_splits.size(); ++gidx) {
      const std::vector<int>& split = group_splits[gidx][pick[gidx]];
      std::size_t cursor = 0;
      for (int j = 0; j < m; ++j) {
        for (int c = 0; c < split[j]; ++c) {
          map[group_tickets[gidx][cursor++]] = j;
        }
      }
    }
    out.push_back(std::move(map));
    std::size_t pos = group_splits.size();
    while (pos > 0) {
      --pos;
      if (++pick[pos] < group_splits[pos].size()) break;
      pick[pos] = 0;
      if (pos == 0) return out;
    }
    if (group_splits.empty()) break;
  }
  return out;
}

std::vector<DiscreteAssignment> ExhaustiveEquilibriumSearch(
    const AuctionInstance& inst, int threads) {
  RequireValidInstance(inst);
  if (!inst.all_discrete()) {
    throw AuctionError("exhaustive search requires discrete budgets");
  }
  double joint = 1.0;
  for (int i = 0; i < inst.num_players(); ++i) {
    joint *= DedupStrategyCount(inst, i);
  }
  if (joint > kJointProfileGuard) {
    throw ExplosionGuardError("joint profile count exceeds the guard");
  }
  PreparedGame g = PrepareGame(inst);
  const auto total = static_cast<std::int64_t>(joint);

  std::vector<std::int64_t> stride(g.n, 1);
  for (int p = g.n - 2; p >= 0; --p) {
    stride[p] = stride[p + 1] * static_cast<std::int64_t>(g.maps[p + 1].size());
  }

  const int workers = std::max(1, std::min<int>(threads, 64));
  std::vector<std::vector<std::int64_t>> found(workers);
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  const std::int64_t chunk = (total + workers - 1) / workers;
  for (std::int64_t lo = 0; lo < total; lo += chunk) {
    ranges.emplace_back(lo, std::min(total, lo + chunk));
  }

  const auto scan_range = [&](std::size_t slot, std::int64_t lo, std::int64_t hi) {
    std::vector<int> choices(g.n, 0);
    std::vector<const std::vector<double>*> cell_d(g.n, nullptr);
    std::vector<const std::vector<Rational>*> cell_r(g.n, nullptr);
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      for (int p = 0; p < g.n; ++p) {
        choices[p] = static_cast<int>((idx / stride[p]) %
                                      static_cast<std::int64_t>(g.maps[p].size()));
        cell_d[p] = &g.wd[p][choices[p]];
        if (g.exact_ok) cell_r[p] = &g.wr[p][choices[p]];
      }
      bool stable = true;
      for (int p = 0; p < g.n && stable; ++p) {
        const double gap = BestGapAgainst(
            g, p, cell_d, g.exact_ok ? &cell_r : nullptr, *cell_d[p],
            g.exact_ok ? cell_r[p] : nullptr);
        if (gap > 0.0) stable = false;
      }
      if (stable) found[slot].push_back(idx);
    }
  };

  if (ranges.size() == 1) {
    scan_range(0, ranges[0].first, ranges[0].second);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t r = 0; r < ranges.size(); ++r) {
      pool.emplace_back([&, r] { scan_range(r, ranges[r].first, ranges[r].second); });
    }
    for (std::thread& t : pool) t.join();
  }

  std::vector<DiscreteAssignment> equilibria;
  for (const std::vector<std::int64_t>& part : found) {
    for (std::int64_t idx : part) {
      DiscreteAssignment a;
      a.items.resize(g.n);
      for (int p = 0; p < g.n; ++p) {
        const auto s = static_cast<std::size_t>(
            (idx / stride[p]) % static_cast<std::int64_t>(g.maps[p].size()));
        a.items[p] = g.maps[p][s];
      }
      equilibria.push_back(std::move(a));
    }
  }
  return equilibria;
}

std::vector<double> BestDeviationGaps(const AuctionInstance& inst,
                                      const DiscreteAssignment& assignment) {
  RequireValidInstance(inst);
  RequireValidAssignment(inst, assignment);
  PreparedGame g = PrepareGame(inst);

  std::vector<std::vector<double>> current_d(g.n);
  std::vector<std::vector<Rational>> current_r(g.n);
  bool exact = g.exact_ok;
  for (int i = 0; i < g.n; ++i) {
    current_d[i] = AggregateStrategy(inst.players[i].budget.tickets,
                                     assignment.items[i], g.m);
    if (exact) {
      auto wr = AggregateStrategyExact(inst.players[i].budget.tickets,
                                       assignment.items[i], g.m);
      if (!wr) {
        exact = false;
      } else {
        current_r[i] = std::move(*wr);
      }
    }
  }
  g.exact_ok = exact;

  std::vector<const std::vector<double>*> cell_d(g.n, nullptr);
  std::vector<const std::vector<Rational>*> cell_r(g.n, nullptr);
  for (int i = 0; i < g.n; ++i) {
    cell_d[i] = &current_d[i];
    if (exact) cell_r[i] = &current_r[i];
  }

  std::vector<double> gaps(g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    gaps[i] = BestGapAgainst(g, i, cell_d, exact ? &cell_r : nullptr,
                             current_d[i], exact ? &current_r[i] : nullptr);
  }
  return gaps;
}

}  // namespace chinese_auctions
