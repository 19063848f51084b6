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
#include <optional>

// Small exact-rational layer for discrete equilibrium comparisons. Every
// operation reports overflow via std::nullopt instead of wrapping, so callers
// can fall back to tolerance-based floating point when 64-bit numerators or
// denominators no longer suffice.
namespace chinese_auctions {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // always > 0 in normalized form
};

// Reduces num/den to lowest terms with a positive denominator.
std::optional<Rational> MakeRational(std::int64_t num, std::int64_t den);

// Exact conversion of a finite double (doubles are dyadic rationals). Fails
// when the reduced fraction does not fit in 64 bits.
std::optional<Rational> RationalFromDouble(double x);

std::optional<Rational> RationalAdd(const Rational& a, const Rational& b);
std::optional<Rational> RationalSub(const Rational& a, const Rational& b);
std::optional<Rational> RationalMul(const Rational& a, const Rational& b);
std::optional<Rational> RationalDiv(const Rational& a, const Rational& b);

// Exact three-way comparison; never overflows.
int RationalCompare(const Rational& a, const Rational& b);

double RationalToDouble(const Rational& r);

}  // namespace chinese_auctions
