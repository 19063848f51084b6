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

#include <string>
#include <vector>

// Named end-to-end reproduction scenarios with pinned instances, parameters
// and expected verdicts. `chauct repro <name>` runs one; `repro --all` runs
// the whole registry.
namespace chinese_auctions {

struct ReproOutcome {
  bool ok = false;
  std::string detail;
};

struct ReproCase {
  std::string name;
  std::string summary;
  ReproOutcome (*run)();
};

const std::vector<ReproCase>& ReproRegistry();

// Runs one case by name. Throws AuctionError for unknown names.
ReproOutcome RunRepro(const std::string& name);

}  // namespace chinese_auctions
