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

#include "chinese_auctions/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "chinese_auctions/continuous_solver.hpp"
#include "chinese_auctions/discrete_solver.hpp"
#include "chinese_auctions/parallel.hpp"
#include "chinese_auctions/rng.hpp"

namespace chinese_auctions {

namespace {

// Integer compositions of `total` into `parts`, first coordinate descending.
void ForEachComposition(int total, int parts,
                        const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> current(parts, 0);
  const std::function<void(int, int)> rec = [&](int slot, int remaining) {
    if (slot == parts - 1) {
      current[slot] = remaining;
      fn(current);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      current[slot] = c;
      rec(slot + 1, remaining - c);
    }
  };
  if (parts > 0) rec(0, total);
}

double CompositionCount(int total, int parts) {
  double count = 1.0;
  for (int i = 1; i < parts; ++i) {
    count = count * (total + i) / i;
  }
  return count;
}

}  // namespace

std::vector<std::vector<double>> AuditProfileGrid(const AuctionInstance& inst,
                                                  int player, double step) {
  const int m = inst.num_items;
  std::vector<std::vector<double>> strategies;
  if (inst.mode == Mode::kGiven) {
    const double w = inst.budget_weight(player);
    if (w <= 0.0) {
      strategies.emplace_back(m, 0.0);
      return strategies;
    }
    const int k = std::max<int>(1, static_cast<int>(std::llround(w / step)));
    const double unit = w / k;
    if (CompositionCount(k, m) > kJointProfileGuard) {
      throw ExplosionGuardError("profile grid of one player exceeds the guard");
    }
    ForEachComposition(k, m, [&](const std::vector<int>& counts) {
      std::vector<double> x(m, 0.0);
      for (int j = 0; j < m; ++j) x[j] = counts[j] * unit;
      strategies.push_back(std::move(x));
    });
    return strategies;
  }
  // Costly: independent per-item grids over [0, v_ij].
  std::vector<int> sizes(m, 1);
  double count = 1.0;
  for (int j = 0; j < m; ++j) {
    sizes[j] = static_cast<int>(std::floor(inst.valuation(player, j) / step)) + 1;
    count *= sizes[j];
    if (count > kJointProfileGuard) {
      throw ExplosionGuardError("profile grid of one player exceeds the guard");
    }
  }
  std::vector<int> idx(m, 0);
  while (true) {
    std::vector<double> x(m, 0.0);
    for (int j = 0; j < m; ++j) x[j] = idx[j] * step;
    strategies.push_back(std::move(x));
    int pos = m - 1;
    while (pos >= 0 && idx[pos] == sizes[pos] - 1) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return strategies;
}

namespace {

double GivenDeviationGridMax(const std::vector<double>& valuations,
                             const std::vector<double>& totals, double w,
                             double step, double work_budget) {
  const int m = static_cast<int>(valuations.size());
  if (w <= 0.0) return 0.0;
  const int k = std::max<int>(1, static_cast<int>(std::llround(w / step)));
  const double unit = w / k;
  const auto value_of = [&](const std::vector<double>& y) {
    double u = 0.0;
    for (int j = 0; j < m; ++j) {
      const double total = totals[j] + y[j];
      if (y[j] > 0.0 && total > 0.0) u += valuations[j] * (y[j] / total);
    }
    return u;
  };
  double best = -std::numeric_limits<double>::infinity();
  if (m == 1) {
    return value_of({w});
  }
  if (m == 2) {
    std::vector<double> y(2, 0.0);
    for (int c = 0; c <= k; ++c) {
      y[0] = c * unit;
      y[1] = w - y[0];
      best = std::max(best, value_of(y));
    }
    return best;
  }

  // With every valued item contested the per-item payoffs are concave in the
  // own mass, so a steepest-ascent exchange walk over the simplex lattice
  // ends in the exact lattice maximum.
  bool concave = true;
  for (int j = 0; j < m; ++j) {
    if (valuations[j] > 0.0 && totals[j] <= 0.0) concave = false;
  }
  if (concave) {
    const auto item_value = [&](int j, int count) {
      const double y = count * unit;
      return y > 0.0 ? valuations[j] * (y / (totals[j] + y)) : 0.0;
    };
    std::vector<int> counts(m, 0);
    counts[0] = k;
    long guard = 4L * k * m * m + 16;
    while (guard-- > 0) {
      double best_delta = 0.0;
      int best_from = -1;
      int best_to = -1;
      for (int f = 0; f < m; ++f) {
        if (counts[f] == 0) continue;
        const double lose = item_value(f, counts[f] - 1) - item_value(f, counts[f]);
        for (int t = 0; t < m; ++t) {
          if (t == f) continue;
          const double delta =
              item_value(t, counts[t] + 1) - item_value(t, counts[t]) + lose;
          if (delta > best_delta) {
            best_delta = delta;
            best_from = f;
            best_to = t;
          }
        }
      }
      if (best_from < 0) break;
      --counts[best_from];
      ++counts[best_to];
    }
    double value = 0.0;
    for (int j = 0; j < m; ++j) value += item_value(j, counts[j]);
    return value;
  }

  if (CompositionCount(k, m) > work_budget) {
    throw ExplosionGuardError("deviation grid exceeds the work guard");
  }
  std::vector<double> y(m, 0.0);
  ForEachComposition(k, m, [&](const std::vector<int>& counts) {
    for (int j = 0; j < m; ++j) y[j] = counts[j] * unit;
    best = std::max(best, value_of(y));
  });
  return best;
}

// Best grid value of the per-item costly payoff v y/(T+y) - y. For T > 0 the
// payoff is concave, so the grid maximum sits next to the continuous argmax;
// for T = 0 the payoff jumps at zero and then decreases.
double CostlyItemGridMax(double v, double total, double cap, double step) {
  if (v <= 0.0) return 0.0;
  const int max_idx = static_cast<int>(std::floor(cap / step));
  const auto payoff = [&](double y) {
    if (y <= 0.0) return 0.0;
    return v * (y / (total + y)) - y;
  };
  if (total <= 0.0) {
    return max_idx >= 1 ? std::max(0.0, payoff(step)) : 0.0;
  }
  const double y_star = std::sqrt(v * total) - total;
  double best = 0.0;
  const int base = static_cast<int>(std::floor(y_star / step));
  for (const int c : {0, base, base + 1, max_idx}) {
    if (c < 0 || c > max_idx) continue;
    best = std::max(best, payoff(c * step));
  }
  return best;
}

}  // namespace

EquilibriumCertificate CheckContinuousEpsilonNash(const AuctionInstance& inst,
                                                  const ContinuousProfile& profile) {
  RequireValidInstance(inst);
  RequireValidProfile(inst, profile);
  const int n = inst.num_players();
  const std::vector<double> utilities = ExpectedUtilities(inst, profile);
  EquilibriumCertificate cert;
  cert.gaps.resize(n);
  cert.attained.assign(n, true);
  cert.method = inst.mode == Mode::kGiven ? "continuous-given" : "continuous-costly";
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const BestResponseResult br = BestResponse(inst, profile, i);
    cert.gaps[i] = br.value - utilities[i];
    cert.attained[i] = br.attained;
    worst = std::max(worst, cert.gaps[i]);
  }
  cert.epsilon = std::max(0.0, worst);
  return cert;
}

EquilibriumCertificate CheckDiscreteExactNash(const AuctionInstance& inst,
                                              const DiscreteAssignment& assignment) {
  EquilibriumCertificate cert;
  cert.gaps = BestDeviationGaps(inst, assignment);
  cert.attained.assign(cert.gaps.size(), true);
  cert.method = "discrete-enumeration";
  cert.epsilon = 0.0;
  for (double g : cert.gaps) cert.epsilon = std::max(cert.epsilon, g);
  return cert;
}

AuditReport NonexistenceGridAudit(const AuctionInstance& inst,
                                  const AuditOptions& options) {
  RequireValidInstance(inst);
  if (inst.any_discrete()) {
    throw AuctionError("grid audit requires continuous budgets");
  }
  if (!(options.profile_step > 0.0) || !(options.deviation_step > 0.0) ||
      options.deviation_step > options.profile_step) {
    throw AuctionError("audit requires 0 < deviation_step <= profile_step");
  }
  const int n = inst.num_players();
  const int m = inst.num_items;

  std::vector<std::vector<std::vector<double>>> grids(n);
  double joint = 1.0;
  for (int i = 0; i < n; ++i) {
    grids[i] = AuditProfileGrid(inst, i, options.profile_step);
    joint *= static_cast<double>(grids[i].size());
    if (joint > kJointProfileGuard) {
      throw ExplosionGuardError("audit profile grid exceeds the guard");
    }
  }
  const auto total_cells = static_cast<std::int64_t>(joint);

  std::vector<std::int64_t> stride(n, 1);
  for (int p = n - 2; p >= 0; --p) {
    stride[p] = stride[p + 1] * static_cast<std::int64_t>(grids[p + 1].size());
  }

  AuditReport report;
  report.profile_step = options.profile_step;
  report.deviation_step = options.deviation_step;
  report.cells = total_cells;
  report.cell_gaps.assign(total_cells, 0.0);

  // Work guard for general-m simplex deviation scans.
  const double deviation_work_budget = 1e8 / std::max<double>(1.0, joint);

  ParallelFor(0, total_cells, options.threads, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<int> choice(n, 0);
    std::vector<double> bases(m, 0.0);
    std::vector<double> totals(m, 0.0);
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      for (int j = 0; j < m; ++j) bases[j] = inst.delta_at(j);
      for (int p = 0; p < n; ++p) {
        choice[p] = static_cast<int>((idx / stride[p]) %
                                     static_cast<std::int64_t>(grids[p].size()));
        const std::vector<double>& x = grids[p][choice[p]];
        for (int j = 0; j < m; ++j) bases[j] += x[j];
      }
      double cell_gap = 0.0;
      for (int i = 0; i < n; ++i) {
        const std::vector<double>& own = grids[i][choice[i]];
        double current = 0.0;
        for (int j = 0; j < m; ++j) {
          totals[j] = bases[j] - own[j];
          const double t = totals[j] + own[j];
          if (own[j] > 0.0 && t > 0.0) {
            current += inst.valuation(i, j) * (own[j] / t);
          }
          if (inst.mode == Mode::kCostly) current -= own[j];
        }
        double best = current;
        const std::vector<double>& v = inst.players[i].valuations;
        if (inst.mode == Mode::kGiven) {
          best = std::max(best, GivenDeviationGridMax(
                                    v, totals, inst.budget_weight(i),
                                    options.deviation_step, deviation_work_budget));
          const BestResponseResult br =
              BestResponseGiven(v, totals, inst.budget_weight(i));
          if (br.attained) best = std::max(best, br.value);
        } else {
          double dev = 0.0;
          for (int j = 0; j < m; ++j) {
            dev += CostlyItemGridMax(v[j], totals[j], v[j], options.deviation_step);
          }
          best = std::max(best, dev);
          const BestResponseResult br = BestResponseCostly(v, totals);
          if (br.attained) best = std::max(best, br.value);
        }
        cell_gap = std::max(cell_gap, best - current);
      }
      report.cell_gaps[idx] = cell_gap;
    }
  });

  report.min_gap = std::numeric_limits<double>::infinity();
  report.max_gap = 0.0;
  for (std::int64_t idx = 0; idx < total_cells; ++idx) {
    if (report.cell_gaps[idx] < report.min_gap) {
      report.min_gap = report.cell_gaps[idx];
      report.witness_index = idx;
    }
    report.max_gap = std::max(report.max_gap, report.cell_gaps[idx]);
  }

  report.witness.x = ZeroMatrix(n, m);
  for (int p = 0; p < n; ++p) {
    const auto s = static_cast<std::size_t>(
        (report.witness_index / stride[p]) %
        static_cast<std::int64_t>(grids[p].size()));
    report.witness.x[p] = grids[p][s];
  }
  return report;
}

MonteCarloResult SimulateUtilities(const AuctionInstance& inst,
                                   const ContinuousProfile& profile,
                                   const MonteCarloOptions& options) {
  RequireValidInstance(inst);
  RequireValidProfile(inst, profile);
  if (options.trials < 1) {
    throw AuctionError("simulation requires at least one trial");
  }
  const int n = inst.num_players();
  const int m = inst.num_items;

  std::vector<double> item_total(m, 0.0);
  for (int j = 0; j < m; ++j) {
    double t = inst.delta_at(j);
    for (int i = 0; i < n; ++i) t += profile.x[i][j];
    item_total[j] = t;
  }

  constexpr std::int64_t kChunk = 1 << 16;
  const std::int64_t num_chunks = (options.trials + kChunk - 1) / kChunk;

  struct ChunkStats {
    std::vector<std::int64_t> wins;        // n * m
    std::vector<std::int64_t> auction_wins;  // m
    std::vector<double> sum;               // n
    std::vector<double> sum_sq;            // n
  };
  std::vector<ChunkStats> stats(num_chunks);

  ParallelFor(0, num_chunks, options.threads, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t c = lo; c < hi; ++c) {
      ChunkStats& s = stats[c];
      s.wins.assign(static_cast<std::size_t>(n) * m, 0);
      s.auction_wins.assign(m, 0);
      s.sum.assign(n, 0.0);
      s.sum_sq.assign(n, 0.0);
      std::mt19937_64 rng = MakeRng(options.seed, static_cast<std::uint64_t>(c));
      const std::int64_t begin = c * kChunk;
      const std::int64_t end = std::min(options.trials, begin + kChunk);
      std::vector<double> value(n, 0.0);
      for (std::int64_t t = begin; t < end; ++t) {
        std::fill(value.begin(), value.end(), 0.0);
        for (int j = 0; j < m; ++j) {
          if (item_total[j] <= 0.0) continue;  // nobody wins this item
          const double draw = UniformDouble(rng) * item_total[j];
          double cum = 0.0;
          int winner = -1;
          for (int i = 0; i < n; ++i) {
            cum += profile.x[i][j];
            if (draw < cum) {
              winner = i;
              break;
            }
          }
          if (winner >= 0) {
            value[winner] += inst.valuation(winner, j);
            ++s.wins[static_cast<std::size_t>(winner) * m + j];
          } else {
            ++s.auction_wins[j];  // auctioneer ticket drawn
          }
        }
        for (int i = 0; i < n; ++i) {
          s.sum[i] += value[i];
          s.sum_sq[i] += value[i] * value[i];
        }
      }
    }
  });

  MonteCarloResult result;
  result.trials = options.trials;
  result.seed = options.seed;
  result.mean_utility.assign(n, 0.0);
  result.standard_error.assign(n, 0.0);
  result.sigma_hat = ZeroMatrix(n, m);
  result.auctioneer_share_hat.assign(m, 0.0);

  std::vector<double> sum(n, 0.0);
  std::vector<double> sum_sq(n, 0.0);
  for (const ChunkStats& s : stats) {
    for (int i = 0; i < n; ++i) {
      sum[i] += s.sum[i];
      sum_sq[i] += s.sum_sq[i];
      for (int j = 0; j < m; ++j) {
        result.sigma_hat[i][j] += static_cast<double>(s.wins[static_cast<std::size_t>(i) * m + j]);
      }
    }
    for (int j = 0; j < m; ++j) {
      result.auctioneer_share_hat[j] += static_cast<double>(s.auction_wins[j]);
    }
  }

  const auto trials = static_cast<double>(options.trials);
  for (int i = 0; i < n; ++i) {
    const double mean = sum[i] / trials;
    double spend = 0.0;
    if (inst.mode == Mode::kCostly) {
      for (int j = 0; j < m; ++j) spend += profile.x[i][j];
    }
    result.mean_utility[i] = mean - spend;
    if (options.trials > 1) {
      const double var = std::max(0.0, (sum_sq[i] - trials * mean * mean) / (trials - 1.0));
      result.standard_error[i] = std::sqrt(var / trials);
    }
    for (int j = 0; j < m; ++j) result.sigma_hat[i][j] /= trials;
  }
  for (int j = 0; j < m; ++j) result.auctioneer_share_hat[j] /= trials;
  return result;
}

MonteCarloResult SimulateUtilities(const AuctionInstance& inst,
                                   const DiscreteAssignment& assignment,
                                   const MonteCarloOptions& options) {
  return SimulateUtilities(inst, AggregateWeights(inst, assignment), options);
}

}  // namespace chinese_auctions
