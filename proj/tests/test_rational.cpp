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

#include "chinese_auctions/rational.hpp"

#include <cstdint>
#include <limits>

#include "doctest.h"

namespace chinese_auctions {
namespace {

TEST_CASE("construction reduces and normalizes the sign") {
  const auto r = MakeRational(6, -4);
  REQUIRE(r.has_value());
  CHECK(r->num == -3);
  CHECK(r->den == 2);
  CHECK_FALSE(MakeRational(1, 0).has_value());
}

TEST_CASE("doubles convert exactly") {
  const auto quarter = RationalFromDouble(0.25);
  REQUIRE(quarter.has_value());
  CHECK(quarter->num == 1);
  CHECK(quarter->den == 4);

  const auto three = RationalFromDouble(3.0);
  REQUIRE(three.has_value());
  CHECK(three->num == 3);
  CHECK(three->den == 1);

  const auto negative = RationalFromDouble(-1.5);
  REQUIRE(negative.has_value());
  CHECK(negative->num == -3);
  CHECK(negative->den == 2);

  // 0.1 is a dyadic rational with a 55-bit denominator.
  const auto tenth = RationalFromDouble(0.1);
  REQUIRE(tenth.has_value());
  CHECK(tenth->num == 3602879701896397LL);
  CHECK(tenth->den == (1LL << 55));

  CHECK_FALSE(RationalFromDouble(std::numeric_limits<double>::infinity()).has_value());
  CHECK_FALSE(RationalFromDouble(1e300).has_value());
}

TEST_CASE("arithmetic is exact") {
  const Rational third{1, 3};
  const Rational sixth{1, 6};
  const auto half = RationalAdd(third, sixth);
  REQUIRE(half.has_value());
  CHECK(half->num == 1);
  CHECK(half->den == 2);

  const auto eighteenth = RationalMul(third, sixth);
  REQUIRE(eighteenth.has_value());
  CHECK(eighteenth->den == 18);

  const auto two = RationalDiv(third, sixth);
  REQUIRE(two.has_value());
  CHECK(two->num == 2);
  CHECK(two->den == 1);

  const auto diff = RationalSub(Rational{1, 2}, third);
  REQUIRE(diff.has_value());
  CHECK(diff->num == 1);
  CHECK(diff->den == 6);
  CHECK(RationalToDouble(*diff) == 1.0 / 6.0);
}

TEST_CASE("comparison never overflows") {
  const Rational big_a{std::numeric_limits<std::int64_t>::max(), 3};
  const Rational big_b{std::numeric_limits<std::int64_t>::max() - 1, 3};
  CHECK(RationalCompare(big_a, big_b) == 1);
  CHECK(RationalCompare(big_b, big_a) == -1);
  CHECK(RationalCompare(big_a, big_a) == 0);
  CHECK(RationalCompare(Rational{1, 3}, Rational{2, 6}) == 0);
}

TEST_CASE("overflow reports failure instead of wrapping") {
  const Rational huge{std::numeric_limits<std::int64_t>::max() / 2, 1};
  CHECK_FALSE(RationalMul(huge, huge).has_value());
  const Rational dense_a{1, (1LL << 40) + 1};
  const Rational dense_b{1, (1LL << 40) - 1};
  CHECK_FALSE(RationalAdd(dense_a, dense_b).has_value());
  CHECK_FALSE(RationalDiv(huge, Rational{0, 1}).has_value());
}

}  // namespace
}  // namespace chinese_auctions
