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

#include "json.hpp"

#include "chinese_auctions/continuous_solver.hpp"
#include "chinese_auctions/model.hpp"
#include "chinese_auctions/verify.hpp"

// JSON file formats.
//
// Instance:
//   { "mode": "given" | "costly",
//     "items": m,
//     "delta": [d_0, ..., d_{m-1}],            (optional, defaults to zeros)
//     "players": [ {"valuations": [...], "budget": w}
//                | {"valuations": [...], "tickets": [t_0, ...]} ] }
//
// Profiles are row-major weight matrices {"x": [[...], ...]}; discrete
// assignments are per-player item-index arrays {"assignment": [[...], ...]}.
namespace chinese_auctions {

class ParseError : public AuctionError {
 public:
  using AuctionError::AuctionError;
};

AuctionInstance InstanceFromJson(const nlohmann::json& j);
nlohmann::json InstanceToJson(const AuctionInstance& inst);
AuctionInstance LoadInstance(const std::string& path);
void SaveInstance(const AuctionInstance& inst, const std::string& path);

ContinuousProfile ProfileFromJson(const nlohmann::json& j);
nlohmann::json ProfileToJson(const ContinuousProfile& profile);
DiscreteAssignment AssignmentFromJson(const nlohmann::json& j);
nlohmann::json AssignmentToJson(const DiscreteAssignment& assignment);

nlohmann::json CertificateToJson(const EquilibriumCertificate& cert);
nlohmann::json DynamicsToJson(const DynamicsResult& result);
// Summary only; per-cell gaps go to WriteAuditCsv.
nlohmann::json AuditToJson(const AuditReport& report);
nlohmann::json MonteCarloToJson(const MonteCarloResult& result);

nlohmann::json LoadJson(const std::string& path);
void WriteJson(const nlohmann::json& j, const std::string& path);

// One row per grid cell: flattened profile coordinates plus the cell gap.
void WriteAuditCsv(const AuctionInstance& inst, const AuditReport& report,
                   const std::string& path);

}  // namespace chinese_auctions
