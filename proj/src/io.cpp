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

#include "chinese_auctions/io.hpp"

#include <fstream>

namespace chinese_auctions {

namespace {

using nlohmann::json;

std::vector<double> DoubleArray(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& v : j) {
    if (!v.is_number()) throw ParseError(what + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

AuctionInstance InstanceFromJson(const json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  AuctionInstance inst;
  if (!j.contains("mode") || !j.at("mode").is_string()) {
    throw ParseError("instance requires a \"mode\" string");
  }
  try {
    inst.mode = ModeFromString(j.at("mode").get<std::string>());
  } catch (const AuctionError& e) {
    throw ParseError(e.what());
  }
  if (!j.contains("items") || !j.at("items").is_number_integer()) {
    throw ParseError("instance requires an integer \"items\" count");
  }
  inst.num_items = j.at("items").get<int>();
  if (j.contains("delta")) {
    inst.delta = DoubleArray(j.at("delta"), "delta");
  }
  if (!j.contains("players") || !j.at("players").is_array()) {
    throw ParseError("instance requires a \"players\" array");
  }
  for (const json& pj : j.at("players")) {
    if (!pj.is_object()) throw ParseError("each player must be an object");
    PlayerSpec p;
    if (!pj.contains("valuations")) {
      throw ParseError("each player requires \"valuations\"");
    }
    p.valuations = DoubleArray(pj.at("valuations"), "valuations");
    const bool has_budget = pj.contains("budget");
    const bool has_tickets = pj.contains("tickets");
    if (has_budget && has_tickets) {
      throw ParseError("player cannot carry both \"budget\" and \"tickets\"");
    }
    if (has_tickets) {
      p.budget = BudgetSpec::Discrete(DoubleArray(pj.at("tickets"), "tickets"));
    } else if (has_budget) {
      if (!pj.at("budget").is_number()) {
        throw ParseError("\"budget\" must be a number");
      }
      p.budget = BudgetSpec::Continuous(pj.at("budget").get<double>());
    } else if (inst.mode == Mode::kCostly) {
      // Costly play is not budget capped, so the field is optional.
      p.budget = BudgetSpec::Continuous(0.0);
    } else {
      throw ParseError("player requires \"budget\" or \"tickets\"");
    }
    inst.players.push_back(std::move(p));
  }
  return inst;
}

json InstanceToJson(const AuctionInstance& inst) {
  json j;
  j["mode"] = ModeToString(inst.mode);
  j["items"] = inst.num_items;
  json delta = json::array();
  for (int k = 0; k < inst.num_items; ++k) delta.push_back(inst.delta_at(k));
  j["delta"] = delta;
  json players = json::array();
  for (const PlayerSpec& p : inst.players) {
    json pj;
    pj["valuations"] = p.valuations;
    if (p.budget.discrete) {
      pj["tickets"] = p.budget.tickets;
    } else {
      pj["budget"] = p.budget.weight;
    }
    players.push_back(std::move(pj));
  }
  j["players"] = players;
  return j;
}

json LoadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
}

void WriteJson(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw AuctionError("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

AuctionInstance LoadInstance(const std::string& path) {
  return InstanceFromJson(LoadJson(path));
}

void SaveInstance(const AuctionInstance& inst, const std::string& path) {
  WriteJson(InstanceToJson(inst), path);
}

ContinuousProfile ProfileFromJson(const json& j) {
  const json* rows = nullptr;
  if (j.is_object() && j.contains("x")) {
    rows = &j.at("x");
  } else if (j.is_object() && j.contains("profile") &&
             j.at("profile").is_object() && j.at("profile").contains("x")) {
    rows = &j.at("profile").at("x");
  } else {
    throw ParseError("profile requires an \"x\" matrix");
  }
  if (!rows->is_array()) throw ParseError("\"x\" must be a matrix");
  ContinuousProfile profile;
  for (const json& row : *rows) {
    profile.x.push_back(DoubleArray(row, "profile row"));
  }
  return profile;
}

json ProfileToJson(const ContinuousProfile& profile) {
  json j;
  j["x"] = profile.x;
  return j;
}

DiscreteAssignment AssignmentFromJson(const json& j) {
  const json* rows = nullptr;
  if (j.is_object() && j.contains("assignment")) {
    rows = &j.at("assignment");
  } else {
    throw ParseError("assignment requires an \"assignment\" array");
  }
  if (rows->is_object() && rows->contains("assignment")) {
    rows = &rows->at("assignment");
  }
  if (!rows->is_array()) throw ParseError("\"assignment\" must be an array");
  DiscreteAssignment assignment;
  for (const json& row : *rows) {
    if (!row.is_array()) throw ParseError("assignment rows must be arrays");
    std::vector<int> items;
    for (const json& v : row) {
      if (!v.is_number_integer()) {
        throw ParseError("assignment entries must be item indices");
      }
      items.push_back(v.get<int>());
    }
    assignment.items.push_back(std::move(items));
  }
  return assignment;
}

json AssignmentToJson(const DiscreteAssignment& assignment) {
  json j;
  j["assignment"] = assignment.items;
  return j;
}

json CertificateToJson(const EquilibriumCertificate& cert) {
  json j;
  j["method"] = cert.method;
  j["epsilon"] = cert.epsilon;
  j["gaps"] = cert.gaps;
  j["attained"] = cert.attained;
  return j;
}

json DynamicsToJson(const DynamicsResult& result) {
  json j;
  j["converged"] = result.converged;
  j["rounds"] = result.rounds;
  j["final_gap"] = result.final_gap;
  j["profile"] = ProfileToJson(result.profile);
  return j;
}

json AuditToJson(const AuditReport& report) {
  json j;
  j["profile_step"] = report.profile_step;
  j["deviation_step"] = report.deviation_step;
  j["cells"] = report.cells;
  j["min_gap"] = report.min_gap;
  j["max_gap"] = report.max_gap;
  j["witness_index"] = report.witness_index;
  j["witness"] = ProfileToJson(report.witness);
  return j;
}

json MonteCarloToJson(const MonteCarloResult& result) {
  json j;
  j["trials"] = result.trials;
  j["seed"] = result.seed;
  j["mean_utility"] = result.mean_utility;
  j["standard_error"] = result.standard_error;
  j["sigma_hat"] = result.sigma_hat;
  j["auctioneer_share_hat"] = result.auctioneer_share_hat;
  return j;
}

void WriteAuditCsv(const AuctionInstance& inst, const AuditReport& report,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw AuctionError("cannot write file: " + path);
  const int n = inst.num_players();
  const int m = inst.num_items;

  std::vector<std::vector<std::vector<double>>> grids(n);
  std::vector<std::int64_t> sizes(n, 1);
  for (int i = 0; i < n; ++i) {
    grids[i] = AuditProfileGrid(inst, i, report.profile_step);
    sizes[i] = static_cast<std::int64_t>(grids[i].size());
  }
  std::vector<std::int64_t> stride(n, 1);
  for (int p = n - 2; p >= 0; --p) stride[p] = stride[p + 1] * sizes[p + 1];

  out << "cell";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) out << ",x_" << i << '_' << j;
  }
  out << ",gap\n";
  out.precision(17);
  for (std::int64_t idx = 0; idx < report.cells; ++idx) {
    out << idx;
    for (int i = 0; i < n; ++i) {
      const auto s = static_cast<std::size_t>((idx / stride[i]) % sizes[i]);
      for (int j = 0; j < m; ++j) out << ',' << grids[i][s][j];
    }
    out << ',' << report.cell_gaps[idx] << '\n';
  }
}

}  // namespace chinese_auctions
