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

#include <cmath>
#include <numeric>

#include "doctest.h"

#include "chinese_auctions/verify.hpp"
#include "test_support.hpp"

namespace chinese_auctions {
namespace {

TEST_CASE("proportional profile on asymmetric budgets") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 3.0}, {1.0, 3.0}}, {2.0, 1.0});
  const ContinuousProfile profile = ProportionalEquilibrium(inst);
  CHECK(profile.x[0][0] == 0.5);
  CHECK(profile.x[0][1] == 1.5);
  CHECK(profile.x[1][0] == 0.25);
  CHECK(profile.x[1][1] == 0.75);
}

TEST_CASE("proportional profile with equal values splits evenly") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}, {1.0, 1.0, 1.0});
  const ContinuousProfile profile = ProportionalEquilibrium(inst);
  for (const auto& row : profile.x) {
    for (double v : row) CHECK(v == 0.5);
  }
}

TEST_CASE("proportional profile certifies at 1e-9") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 3.0}, {1.0, 3.0}}, {1.0, 1.0});
  const EquilibriumCertificate cert =
      CheckContinuousEpsilonNash(inst, ProportionalEquilibrium(inst));
  CHECK(cert.epsilon <= 1e-9);
}

TEST_CASE("closed-form preconditions are enforced") {
  CHECK_THROWS_AS(ProportionalEquilibrium(MakeContinuousInstance(
                      Mode::kGiven, {{1.0, 2.0}, {2.0, 1.0}}, {1.0, 1.0})),
                  AsymmetricValuationsError);
  CHECK_THROWS_AS(ProportionalEquilibrium(MakeContinuousInstance(
                      Mode::kGiven, {{0.0, 0.0}}, {1.0})),
                  AllZeroValuationsError);
  CHECK_THROWS_AS(ProportionalEquilibrium(MakeContinuousInstance(
                      Mode::kCostly, {{1.0}}, {1.0})),
                  AuctionError);
  CHECK_THROWS_AS(CostlySymmetricEquilibrium(MakeContinuousInstance(
                      Mode::kCostly, {{1.0, 2.0}, {2.0, 1.0}}, {0.0, 0.0})),
                  AsymmetricValuationsError);
}

TEST_CASE("costly symmetric closed form") {
  const AuctionInstance two = MakeContinuousInstance(
      Mode::kCostly, {{4.0, 8.0}, {4.0, 8.0}}, {0.0, 0.0});
  const ContinuousProfile profile = CostlySymmetricEquilibrium(two);
  for (int i = 0; i < 2; ++i) {
    CHECK(profile.x[i][0] == 1.0);
    CHECK(profile.x[i][1] == 2.0);
  }

  SUBCASE("a single player spends nothing") {
    const AuctionInstance one = MakeContinuousInstance(Mode::kCostly, {{5.0}}, {0.0});
    const ContinuousProfile solo = CostlySymmetricEquilibrium(one);
    CHECK(solo.x[0][0] == 0.0);
  }

  SUBCASE("three players on one item") {
    const AuctionInstance three = MakeContinuousInstance(
        Mode::kCostly, {{9.0}, {9.0}, {9.0}}, {0.0, 0.0, 0.0});
    const ContinuousProfile profile3 = CostlySymmetricEquilibrium(three);
    for (int i = 0; i < 3; ++i) CHECK(profile3.x[i][0] == 2.0);
  }
}

TEST_CASE("budgeted best response matches the stated example") {
  const std::vector<double> v = {1.0, 3.0};
  const std::vector<double> a = {1.0, 1.0};
  const BestResponseResult br = BestResponseGiven(v, a, 1.0);
  REQUIRE(br.attained);
  CHECK(br.allocation[0] == doctest::Approx(0.0980762).epsilon(1e-4));
  CHECK(br.allocation[1] == doctest::Approx(0.9019238).epsilon(1e-4));
  CHECK(std::abs(br.allocation[0] + br.allocation[1] - 1.0) <= 1e-9);

  // Independent grid oracle over the simplex at step 1e-4.
  const double oracle = test_support::SimplexGridMax(v, a, 1.0, 10000);
  CHECK(std::abs(br.value - oracle) <= 1e-6);
}

TEST_CASE("zero-value items receive no budget") {
  const BestResponseResult br = BestResponseGiven(
      std::vector<double>{0.0, 5.0}, std::vector<double>{0.5, 2.0}, 1.5);
  REQUIRE(br.attained);
  CHECK(br.allocation[0] == 0.0);
  CHECK(br.allocation[1] == doctest::Approx(1.5));
}

TEST_CASE("best response against the proportional profile is the own row") {
  std::mt19937_64 rng = MakeRng(201);
  for (int trial = 0; trial < 20; ++trial) {
    const AuctionInstance inst =
        test_support::RandomSymmetricContinuous(rng, Mode::kGiven, 2, 5, 1, 5);
    const ContinuousProfile profile = ProportionalEquilibrium(inst);
    const int i = test_support::RandInt(rng, 0, inst.num_players() - 1);
    const BestResponseResult br = BestResponse(inst, profile, i);
    REQUIRE(br.attained);
    for (int j = 0; j < inst.num_items; ++j) {
      CHECK(br.allocation[j] == doctest::Approx(profile.x[i][j]).epsilon(1e-7));
    }
  }
}

TEST_CASE("open supremum is flagged with an eta witness") {
  const std::vector<double> v = {1.0, 3.0};
  const std::vector<double> a = {1.0, 0.0};
  const BestResponseResult br = BestResponseGiven(v, a, 1.0);
  CHECK_FALSE(br.attained);
  // Supremum: claim item 1 for free, spend everything on item 0.
  CHECK(br.value == doctest::Approx(3.0 + 1.0 * (1.0 / 2.0)).epsilon(1e-9));
  CHECK(br.allocation[1] > 0.0);
  CHECK(br.allocation[1] <= 1e-6);
  CHECK(std::abs(br.allocation[0] + br.allocation[1] - 1.0) <= 1e-9);

  SUBCASE("degenerate budgets still behave") {
    const BestResponseResult zero = BestResponseGiven(v, a, 0.0);
    CHECK(zero.attained);
    CHECK(zero.value == 0.0);
  }
}

TEST_CASE("costly best response boundary and interior") {
  CHECK(BestResponseCostly(std::vector<double>{1.0}, std::vector<double>{1.0})
            .allocation[0] == 0.0);

  const BestResponseResult br =
      BestResponseCostly(std::vector<double>{4.0}, std::vector<double>{1.0});
  REQUIRE(br.attained);
  CHECK(br.allocation[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(br.value == doctest::Approx(1.0).epsilon(1e-12));

  // 1-D grid oracle at step 1e-5.
  const double oracle = test_support::CostlyItemGridScan(4.0, 1.0, 1e-5, 4.0);
  CHECK(std::abs(br.value - oracle) <= 1e-6);
}

TEST_CASE("costly best response reproduces the symmetric profile") {
  std::mt19937_64 rng = MakeRng(202);
  for (int trial = 0; trial < 20; ++trial) {
    const AuctionInstance inst =
        test_support::RandomSymmetricContinuous(rng, Mode::kCostly, 2, 5, 1, 5);
    const ContinuousProfile profile = CostlySymmetricEquilibrium(inst);
    const int i = test_support::RandInt(rng, 0, inst.num_players() - 1);
    const BestResponseResult br = BestResponse(inst, profile, i);
    REQUIRE(br.attained);
    for (int j = 0; j < inst.num_items; ++j) {
      CHECK(br.allocation[j] == doctest::Approx(profile.x[i][j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("costly responses never spend more than half the net value") {
  std::mt19937_64 rng = MakeRng(203);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = test_support::RandInt(rng, 1, 4);
    std::vector<double> v(m, 0.0);
    std::vector<double> a(m, 0.0);
    for (int j = 0; j < m; ++j) {
      v[j] = test_support::RandUniform(rng, 0.0, 10.0);
      a[j] = test_support::RandUniform(rng, 0.01, 10.0);
    }
    const BestResponseResult br = BestResponseCostly(v, a);
    for (int j = 0; j < m; ++j) {
      if (br.allocation[j] > 0.0) {
        CHECK(br.allocation[j] <= (v[j] - a[j]) / 2.0 + 1e-12);
        CHECK(br.allocation[j] <= v[j]);
      }
    }
  }
}

TEST_CASE("negative inputs are rejected") {
  CHECK_THROWS_AS(BestResponseGiven(std::vector<double>{-1.0},
                                    std::vector<double>{1.0}, 1.0),
                  NegativeInputError);
  CHECK_THROWS_AS(BestResponseGiven(std::vector<double>{1.0},
                                    std::vector<double>{-0.1}, 1.0),
                  NegativeInputError);
  CHECK_THROWS_AS(BestResponseGiven(std::vector<double>{1.0},
                                    std::vector<double>{1.0}, -1.0),
                  NegativeInputError);
  CHECK_THROWS_AS(BestResponseCostly(std::vector<double>{1.0},
                                     std::vector<double>{-1.0}),
                  NegativeInputError);
}

TEST_CASE("water filling beats every grid point up to Lipschitz slack") {
  std::mt19937_64 rng = MakeRng(204);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = test_support::RandInt(rng, 1, 4);
    std::vector<double> v(m, 0.0);
    std::vector<double> a(m, 0.0);
    double lipschitz = 0.0;
    for (int j = 0; j < m; ++j) {
      v[j] = test_support::RandUniform(rng, 0.1, 10.0);
      a[j] = test_support::RandUniform(rng, 0.1, 10.0);
      lipschitz = std::max(lipschitz, v[j] / a[j]);
    }
    const double w = test_support::RandUniform(rng, 0.2, 3.0);
    const BestResponseResult br = BestResponseGiven(v, a, w);
    REQUIRE(br.attained);
    const double h = 1e-3 * w;
    const double oracle = test_support::SimplexGridMax(v, a, w, 1000);
    CHECK(br.value >= oracle - lipschitz * h);
  }
}

TEST_CASE("the exchange climb reproduces the scanned lattice maximum") {
  std::mt19937_64 rng = MakeRng(209);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = test_support::RandInt(rng, 2, 5);
    std::vector<double> v(m, 0.0);
    std::vector<double> a(m, 0.0);
    for (int j = 0; j < m; ++j) {
      v[j] = test_support::RandUniform(rng, 0.0, 10.0);
      a[j] = test_support::RandUniform(rng, 0.05, 10.0);
    }
    const double w = test_support::RandUniform(rng, 0.2, 5.0);
    const int steps = test_support::RandInt(rng, 1, 40);
    const double scan = test_support::SimplexGridScan(v, a, w, steps);
    const double climb = test_support::SimplexExchangeClimb(v, a, w, steps);
    CHECK(climb == doctest::Approx(scan).epsilon(1e-12));
  }
}

TEST_CASE("optimality conditions hold at the returned multiplier") {
  std::mt19937_64 rng = MakeRng(205);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = test_support::RandInt(rng, 1, 4);
    std::vector<double> v(m, 0.0);
    std::vector<double> a(m, 0.0);
    for (int j = 0; j < m; ++j) {
      v[j] = test_support::RandUniform(rng, 0.1, 10.0);
      a[j] = test_support::RandUniform(rng, 0.05, 10.0);
    }
    const double w = test_support::RandUniform(rng, 0.1, 10.0);
    const BestResponseResult br = BestResponseGiven(v, a, w);
    REQUIRE(br.attained);
    REQUIRE(br.lambda > 0.0);
    for (int j = 0; j < m; ++j) {
      const double y = br.allocation[j];
      if (y > 0.0) {
        CHECK(std::abs(br.lambda - v[j] * a[j] / ((a[j] + y) * (a[j] + y))) <= 1e-8);
      } else {
        CHECK(v[j] / a[j] <= br.lambda + 1e-8);
      }
    }
  }
}

TEST_CASE("the reciprocal-sum objective is strictly convex") {
  std::mt19937_64 rng = MakeRng(206);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = test_support::RandInt(rng, 2, 5);
    std::vector<double> a(m, 0.0);
    std::vector<double> b(m, 0.0);
    for (int j = 0; j < m; ++j) {
      a[j] = test_support::RandUniform(rng, 0.1, 5.0);
      b[j] = test_support::RandUniform(rng, 0.1, 5.0);
    }
    const double w = test_support::RandUniform(rng, 0.5, 3.0);
    std::vector<double> y(m, 0.0);
    std::vector<double> z(m, 0.0);
    double sy = 0.0;
    double sz = 0.0;
    for (int j = 0; j < m; ++j) {
      y[j] = UniformDouble(rng) + 1e-3;
      z[j] = UniformDouble(rng) + 1e-3;
      sy += y[j];
      sz += z[j];
    }
    double distance = 0.0;
    for (int j = 0; j < m; ++j) {
      y[j] *= w / sy;
      z[j] *= w / sz;
      distance = std::max(distance, std::abs(y[j] - z[j]));
    }
    if (distance < 1e-6) continue;
    const auto f = [&](const std::vector<double>& p) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += b[j] / (a[j] + p[j]);
      return s;
    };
    std::vector<double> mid(m, 0.0);
    for (int j = 0; j < m; ++j) mid[j] = 0.5 * (y[j] + z[j]);
    CHECK(f(mid) < 0.5 * f(y) + 0.5 * f(z));
  }
}

TEST_CASE("closed-form profiles certify on random symmetric instances") {
  std::mt19937_64 rng = MakeRng(207);
  for (int trial = 0; trial < 20; ++trial) {
    const AuctionInstance given =
        test_support::RandomSymmetricContinuous(rng, Mode::kGiven);
    CHECK(CheckContinuousEpsilonNash(given, ProportionalEquilibrium(given)).epsilon <=
          1e-9);
    const AuctionInstance costly =
        test_support::RandomSymmetricContinuous(rng, Mode::kCostly);
    CHECK(CheckContinuousEpsilonNash(costly, CostlySymmetricEquilibrium(costly))
              .epsilon <= 1e-9);
  }
}

TEST_CASE("a lone player is certified despite the open-supremum flags") {
  // Given mode: the proportional profile puts mass on every valued item, so
  // the lone player already collects the full value; the gap is zero even
  // though the responses are flagged as suprema (nobody opposes them).
  const AuctionInstance given = MakeContinuousInstance(
      Mode::kGiven, {{2.0, 6.0}}, {1.0});
  const EquilibriumCertificate cg =
      CheckContinuousEpsilonNash(given, ProportionalEquilibrium(given));
  CHECK(cg.epsilon <= 1e-9);
  CHECK_FALSE(cg.attained[0]);

  // Costly mode: the closed form spends nothing, yet any positive bid would
  // claim an item outright, so the certificate honestly reports the open gap.
  const AuctionInstance costly = MakeContinuousInstance(
      Mode::kCostly, {{2.0, 6.0}}, {0.0});
  const EquilibriumCertificate cc =
      CheckContinuousEpsilonNash(costly, CostlySymmetricEquilibrium(costly));
  CHECK(cc.epsilon == doctest::Approx(8.0).epsilon(1e-9));
  CHECK_FALSE(cc.attained[0]);
}

TEST_CASE("dynamics converge to the proportional profile") {
  std::mt19937_64 rng = MakeRng(208);
  for (int trial = 0; trial < 5; ++trial) {
    const AuctionInstance inst =
        test_support::RandomSymmetricContinuous(rng, Mode::kGiven, 2, 4, 2, 4);
    const ContinuousProfile start = test_support::RandomInteriorProfile(rng, inst);
    DynamicsConfig cfg;
    cfg.epsilon = 1e-6;
    const DynamicsResult result = BestResponseDynamics(inst, start, cfg);
    REQUIRE(result.converged);
    // A gap of eps bounds the distance to the optimum through the curvature,
    // which can be shallow for low-value items; 0.02 holds with wide margin
    // across seed sweeps.
    const ContinuousProfile target = ProportionalEquilibrium(inst);
    for (int i = 0; i < inst.num_players(); ++i) {
      for (int j = 0; j < inst.num_items; ++j) {
        CHECK(std::abs(result.profile.x[i][j] - target.x[i][j]) <= 0.02);
      }
    }
  }
}

TEST_CASE("auctioneer weight lets dynamics settle on the counterexample") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{0.0, 1.0}, {1.0, 3.0}}, {1.0, 1.0}, {0.01, 0.01});
  ContinuousProfile start;
  start.x = {{0.5, 0.5}, {0.5, 0.5}};
  DynamicsConfig cfg;
  cfg.epsilon = 1e-6;
  const DynamicsResult result = BestResponseDynamics(inst, start, cfg);
  REQUIRE(result.converged);
  CHECK(CheckContinuousEpsilonNash(inst, result.profile).epsilon <= 1e-6);
}

TEST_CASE("dynamics config is validated") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{1.0, 2.0}}, {1.0});
  ContinuousProfile start;
  start.x = {{0.5, 0.5}};
  DynamicsConfig cfg;
  cfg.max_rounds = 0;
  CHECK_THROWS_AS(BestResponseDynamics(inst, start, cfg), InvalidConfigError);
  cfg.max_rounds = 10;
  cfg.damping = 0.0;
  CHECK_THROWS_AS(BestResponseDynamics(inst, start, cfg), InvalidConfigError);
  cfg.damping = 0.5;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(BestResponseDynamics(inst, start, cfg), InvalidConfigError);
}

TEST_CASE("dynamics surface open suprema instead of approximating them") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{0.0, 1.0}, {1.0, 3.0}}, {1.0, 1.0});
  ContinuousProfile start;
  start.x = {{0.0, 1.0}, {0.5, 0.5}};  // nobody opposes player 1 on item 0
  DynamicsConfig cfg;
  cfg.epsilon = 1e-6;
  CHECK_THROWS_AS(BestResponseDynamics(inst, start, cfg),
                  BestResponseNotAttainedError);
}

TEST_CASE("zero-valuation players are skipped in given-mode dynamics") {
  const AuctionInstance inst = MakeContinuousInstance(
      Mode::kGiven, {{0.0, 0.0}, {1.0, 3.0}}, {1.0, 1.0});
  ContinuousProfile start;
  start.x = {{0.5, 0.5}, {0.5, 0.5}};
  DynamicsConfig cfg;
  cfg.epsilon = 1e-6;
  const DynamicsResult result = BestResponseDynamics(inst, start, cfg);
  REQUIRE(result.converged);
  CHECK(result.profile.x[0][0] == 0.5);
  CHECK(result.profile.x[0][1] == 0.5);
}

}  // namespace
}  // namespace chinese_auctions
