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

#include <cmath>
#include <limits>
#include <numeric>

namespace chinese_auctions {

namespace {

using Int128 = __int128;

constexpr std::int64_t kMaxInt64 = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMinInt64 = std::numeric_limits<std::int64_t>::min();

bool FitsInt64(Int128 v) { return v >= kMinInt64 && v <= kMaxInt64; }

std::optional<Rational> FromInt128(Int128 num, Int128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int128 a = num < 0 ? -num : num;
  Int128 b = den;
  while (b != 0) {
    Int128 t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    num /= a;
    den /= a;
  }
  if (!FitsInt64(num) || !FitsInt64(den)) return std::nullopt;
  return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

}  // namespace

std::optional<Rational> MakeRational(std::int64_t num, std::int64_t den) {
  return FromInt128(num, den);
}

std::optional<Rational> RationalFromDouble(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == 0.0) return Rational{0, 1};
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5,1)
  const double scaled = std::ldexp(mant, 53);
  const auto m = static_cast<std::int64_t>(scaled);  // exact: 53-bit mantissa
  const int e2 = exp - 53;
  if (e2 >= 0) {
    if (e2 >= 63) return std::nullopt;
    Int128 num = static_cast<Int128>(m) << e2;
    return FromInt128(num, 1);
  }
  if (-e2 >= 63) {
    // Reduce first: trailing zero bits of the mantissa may rescue the range.
    Int128 den = 1;
    std::int64_t num = m;
    int shift = -e2;
    while (shift > 0 && num % 2 == 0) {
      num /= 2;
      --shift;
    }
    if (shift >= 63) return std::nullopt;
    den <<= shift;
    return FromInt128(num, den);
  }
  return FromInt128(m, static_cast<Int128>(1) << (-e2));
}

std::optional<Rational> RationalAdd(const Rational& a, const Rational& b) {
  const Int128 num = static_cast<Int128>(a.num) * b.den +
                     static_cast<Int128>(b.num) * a.den;
  const Int128 den = static_cast<Int128>(a.den) * b.den;
  return FromInt128(num, den);
}

std::optional<Rational> RationalSub(const Rational& a, const Rational& b) {
  const Int128 num = static_cast<Int128>(a.num) * b.den -
                     static_cast<Int128>(b.num) * a.den;
  const Int128 den = static_cast<Int128>(a.den) * b.den;
  return FromInt128(num, den);
}

std::optional<Rational> RationalMul(const Rational& a, const Rational& b) {
  const Int128 num = static_cast<Int128>(a.num) * b.num;
  const Int128 den = static_cast<Int128>(a.den) * b.den;
  return FromInt128(num, den);
}

std::optional<Rational> RationalDiv(const Rational& a, const Rational& b) {
  if (b.num == 0) return std::nullopt;
  const Int128 num = static_cast<Int128>(a.num) * b.den;
  const Int128 den = static_cast<Int128>(a.den) * b.num;
  return FromInt128(num, den);
}

int RationalCompare(const Rational& a, const Rational& b) {
  const Int128 lhs = static_cast<Int128>(a.num) * b.den;
  const Int128 rhs = static_cast<Int128>(b.num) * a.den;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

double RationalToDouble(const Rational& r) {
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

}  // namespace chinese_auctions
