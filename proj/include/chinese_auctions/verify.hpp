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
#include <string>
#include <vector>

#include "chinese_auctions/model.hpp"

// Certification of equilibria, grid-based evidence of non-existence, and
// Monte Carlo validation of the expected-utility model.
namespace chinese_auctions {

// Per-player best-response gaps g_i = u_i(BR_i, x_-i) - u_i(x). epsilon is
// max(0, max_i g_i); an epsilon of zero certifies the profile (exactly for
// discrete enumeration, up to solver accuracy for continuous responses).
// attained[i] is false when player i's best response is an open supremum, in
// which case g_i measures the gap to the supremum.
struct EquilibriumCertificate {
  std::vector<double> gaps;
  double epsilon = 0.0;
  std::vector<bool> attained;
  std::string method;
};

EquilibriumCertificate CheckContinuousEpsilonNash(const AuctionInstance& inst,
                                                  const ContinuousProfile& profile);

// Exact certification by enumerating every ticket redistribution of every
// player (subject to the strategy-space guards).
EquilibriumCertificate CheckDiscreteExactNash(const AuctionInstance& inst,
                                              const DiscreteAssignment& assignment);

struct AuditOptions {
  double profile_step = 0.01;    // grid resolution of candidate profiles
  double deviation_step = 0.001; // finer grid for unilateral deviations
  int threads = 1;
};

// Finite audit: for every grid-feasible profile, the best improvement any
// player can find (finer deviation grid plus the analytic best response when
// attained). A positive min_gap means no profile at this resolution is an
// eps-equilibrium for eps <= min_gap. Evidence, not proof.
struct AuditReport {
  double profile_step = 0.0;
  double deviation_step = 0.0;
  std::int64_t cells = 0;
  std::vector<double> cell_gaps;  // max-over-players improvement per cell
  double min_gap = 0.0;
  double max_gap = 0.0;
  std::int64_t witness_index = 0;
  ContinuousProfile witness;      // grid profile attaining min_gap
};

AuditReport NonexistenceGridAudit(const AuctionInstance& inst,
                                  const AuditOptions& options);

// Candidate strategies of one player at the audit resolution: the simplex
// grid in given mode, the per-item box grid in costly mode. Cell index
// decoding is mixed radix over players with player 0 slowest.
std::vector<std::vector<double>> AuditProfileGrid(const AuctionInstance& inst,
                                                  int player, double step);

struct MonteCarloOptions {
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct MonteCarloResult {
  std::vector<double> mean_utility;
  std::vector<double> standard_error;
  std::vector<std::vector<double>> sigma_hat;  // empirical win frequencies
  std::vector<double> auctioneer_share_hat;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

// Draws one winning ticket per item per trial with probability proportional
// to placed weight (the auctioneer wins with weight delta_j; items with zero
// total weight are skipped). Costly spending is subtracted analytically.
// Reproducible for a fixed seed, independent of thread count.
MonteCarloResult SimulateUtilities(const AuctionInstance& inst,
                                   const ContinuousProfile& profile,
                                   const MonteCarloOptions& options);
MonteCarloResult SimulateUtilities(const AuctionInstance& inst,
                                   const DiscreteAssignment& assignment,
                                   const MonteCarloOptions& options);

}  // namespace chinese_auctions
