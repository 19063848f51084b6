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

#include "chinese_auctions/repro.hpp"

#include <set>
#include <string>

#include "doctest.h"

#include "chinese_auctions/model.hpp"

namespace chinese_auctions {
namespace {

TEST_CASE("every registry scenario holds") {
  for (const ReproCase& c : ReproRegistry()) {
    const ReproOutcome outcome = c.run();
    INFO(c.name, ": ", outcome.detail);
    CHECK(outcome.ok);
  }
}

TEST_CASE("registry names are unique and resolvable") {
  std::set<std::string> names;
  for (const ReproCase& c : ReproRegistry()) {
    CHECK(names.insert(c.name).second);
    CHECK_FALSE(c.summary.empty());
  }
  CHECK(names.size() == 12);
  CHECK(RunRepro("thm32").ok);
  CHECK_THROWS_AS(RunRepro("unknown-case"), AuctionError);
}

}  // namespace
}  // namespace chinese_auctions
