// Copyright 2026 The ipgkit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipgkit/instance_io.h"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ipgkit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, where + ": " + what);
}

void requireKeys(const json& node, const std::string& where, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
  if (!node.is_object()) fail(where, "expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!node.contains(k)) fail(where, std::string("missing field '") + k + "'");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [key, value] : node.items()) {
    if (!known.count(key)) fail(where, "unknown field '" + key + "'");
  }
}

Rational readRational(const json& node, const std::string& where) {
  try {
    if (node.is_number_integer()) {
      return node.is_number_unsigned() ? Rational(node.get<std::uint64_t>()) : Rational(node.get<std::int64_t>());
    }
    if (node.is_number_float()) return rationalFromDouble(node.get<double>());
    if (node.is_string()) return parseRational(node.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected a number or a \"p/q\" string");
}

std::int64_t readInteger(const json& node, const std::string& where) {
  Rational r = readRational(node, where);
  if (boost::multiprecision::denominator(r) != 1) fail(where, "expected an integer");
  auto num = boost::multiprecision::numerator(r);
  if (abs(num) > std::numeric_limits<std::int64_t>::max()) fail(where, "integer out of range");
  return num.convert_to<std::int64_t>();
}

RationalVector readVector(const json& node, const std::string& where, std::optional<std::size_t> size) {
  if (!node.is_array()) fail(where, "expected an array");
  if (size && node.size() != *size) {
    fail(where, "expected " + std::to_string(*size) + " entries, found " + std::to_string(node.size()));
  }
  RationalVector out;
  for (std::size_t k = 0; k < node.size(); ++k) out.push_back(readRational(node[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<std::int64_t> readIntegers(const json& node, const std::string& where) {
  if (!node.is_array()) fail(where, "expected an array");
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < node.size(); ++k) out.push_back(readInteger(node[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

int readPlayerKey(const std::string& key, const std::string& where) {
  int value = 0;
  std::istringstream in(key);
  if (!(in >> value) || !in.eof() || std::to_string(value) != key) fail(where, "player key '" + key + "' is not an index");
  return value;
}

Sense readSense(const json& node, const std::string& where) {
  if (node == "<=") return Sense::kLessEqual;
  if (node == ">=") return Sense::kGreaterEqual;
  if (node == "=" || node == "==") return Sense::kEqual;
  fail(where, "sense must be one of \"<=\", \">=\", \"=\"");
}

ordered_json writeRational(const Rational& value) {
  static const Rational kExactDoubleLimit(std::int64_t{1} << 53);
  if (boost::multiprecision::denominator(value) == 1 && abs(value) < kExactDoubleLimit) {
    return boost::multiprecision::numerator(value).convert_to<std::int64_t>();
  }
  return toString(value);
}

ordered_json writeVector(const RationalVector& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(writeRational(v));
  return out;
}

CngInstance readCng(const json& node) {
  const std::string where = "cng";
  requireKeys(node, where,
              {"defenderCriticality", "attackerCriticality", "defenderCost", "attackerCost", "defenderBudget",
               "attackerBudget", "delta", "eta", "epsilon", "gamma"});
  CngInstance cng;
  cng.defenderCriticality = readVector(node["defenderCriticality"], where + ".defenderCriticality", std::nullopt);
  cng.attackerCriticality = readVector(node["attackerCriticality"], where + ".attackerCriticality", std::nullopt);
  cng.defenderCost = readIntegers(node["defenderCost"], where + ".defenderCost");
  cng.attackerCost = readIntegers(node["attackerCost"], where + ".attackerCost");
  cng.defenderBudget = readInteger(node["defenderBudget"], where + ".defenderBudget");
  cng.attackerBudget = readInteger(node["attackerBudget"], where + ".attackerBudget");
  cng.delta = readRational(node["delta"], where + ".delta");
  cng.eta = readRational(node["eta"], where + ".eta");
  cng.epsilon = readRational(node["epsilon"], where + ".epsilon");
  cng.gamma = readRational(node["gamma"], where + ".gamma");
  try {
    cng.validate();
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return cng;
}

ordered_json writeCng(const CngInstance& cng) {
  ordered_json out;
  out["defenderCriticality"] = writeVector(cng.defenderCriticality);
  out["attackerCriticality"] = writeVector(cng.attackerCriticality);
  out["defenderCost"] = cng.defenderCost;
  out["attackerCost"] = cng.attackerCost;
  out["defenderBudget"] = cng.defenderBudget;
  out["attackerBudget"] = cng.attackerBudget;
  out["delta"] = writeRational(cng.delta);
  out["eta"] = writeRational(cng.eta);
  out["epsilon"] = writeRational(cng.epsilon);
  out["gamma"] = writeRational(cng.gamma);
  return out;
}

}  // namespace

InstanceFile parseInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail("instance", e.what());
  }
  requireKeys(doc, "instance", {"name", "players"}, {"cng"});
  if (!doc["name"].is_string()) fail("name", "expected a string");
  const json& players_node = doc["players"];
  if (!players_node.is_array()) fail("players", "expected an array");

  std::vector<int> sizes;
  for (std::size_t i = 0; i < players_node.size(); ++i) {
    const std::string where = "players[" + std::to_string(i) + "]";
    requireKeys(players_node[i], where, {"numVars", "constraints", "payoff"});
    std::int64_t n = readInteger(players_node[i]["numVars"], where + ".numVars");
    if (n < 1 || n > 1'000'000) fail(where + ".numVars", "must be positive");
    sizes.push_back(static_cast<int>(n));
  }

  std::vector<Player> players;
  for (std::size_t i = 0; i < players_node.size(); ++i) {
    const std::string where = "players[" + std::to_string(i) + "]";
    const json& node = players_node[i];
    const std::size_t n = sizes[i];
    std::vector<LinearConstraint> constraints;
    if (!node["constraints"].is_array()) fail(where + ".constraints", "expected an array");
    for (std::size_t r = 0; r < node["constraints"].size(); ++r) {
      const std::string cw = where + ".constraints[" + std::to_string(r) + "]";
      const json& c = node["constraints"][r];
      requireKeys(c, cw, {"coeffs", "sense", "rhs"});
      constraints.push_back({readVector(c["coeffs"], cw + ".coeffs", n), readSense(c["sense"], cw + ".sense"),
                             readRational(c["rhs"], cw + ".rhs")});
    }
    const std::string pw = where + ".payoff";
    const json& pay = node["payoff"];
    requireKeys(pay, pw, {"ownLinear"}, {"constant", "oppLinear", "bilinear"});
    PayoffSpec spec;
    if (pay.contains("constant")) spec.constant = readRational(pay["constant"], pw + ".constant");
    spec.ownLinear = readVector(pay["ownLinear"], pw + ".ownLinear", n);
    auto readOpponent = [&](const std::string& key, const std::string& field) {
      int j = readPlayerKey(key, pw + "." + field);
      if (j < 0 || j >= static_cast<int>(sizes.size()) || j == static_cast<int>(i)) {
        fail(pw + "." + field, "invalid opponent index " + key);
      }
      return j;
    };
    if (pay.contains("oppLinear")) {
      if (!pay["oppLinear"].is_object()) fail(pw + ".oppLinear", "expected an object");
      for (const auto& [key, value] : pay["oppLinear"].items()) {
        int j = readOpponent(key, "oppLinear");
        spec.oppLinear[j] = readVector(value, pw + ".oppLinear." + key, sizes[j]);
      }
    }
    if (pay.contains("bilinear")) {
      if (!pay["bilinear"].is_object()) fail(pw + ".bilinear", "expected an object");
      for (const auto& [key, value] : pay["bilinear"].items()) {
        int j = readOpponent(key, "bilinear");
        const std::string mw = pw + ".bilinear." + key;
        if (!value.is_array() || value.size() != n) fail(mw, "expected " + std::to_string(n) + " rows");
        RationalMatrix q;
        for (std::size_t a = 0; a < n; ++a) q.push_back(readVector(value[a], mw + "[" + std::to_string(a) + "]", sizes[j]));
        spec.bilinear[j] = std::move(q);
      }
    }
    players.push_back({StrategySet(static_cast<int>(n), std::move(constraints)), std::move(spec)});
  }

  std::optional<GameInstance> game;
  try {
    game.emplace(doc["name"].get<std::string>(), std::move(players));
  } catch (const Error& e) {
    fail("instance", e.what());
  }
  InstanceFile file{std::move(*game), std::nullopt};
  if (doc.contains("cng")) {
    file.cng = readCng(doc["cng"]);
    if (!sameGame(file.game, toGameInstance(*file.cng, file.game.name()))) {
      fail("cng", "players disagree with the cng section");
    }
  }
  return file;
}

InstanceFile loadInstance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseInstance(buffer.str());
}

std::string emitInstance(const GameInstance& game, const std::optional<CngInstance>& cng) {
  ordered_json doc;
  doc["name"] = game.name();
  doc["players"] = ordered_json::array();
  for (int i = 0; i < game.numPlayers(); ++i) {
    ordered_json player;
    player["numVars"] = game.numVars(i);
    player["constraints"] = ordered_json::array();
    for (const auto& c : game.strategySet(i).constraints()) {
      ordered_json row;
      row["coeffs"] = writeVector(c.coeffs);
      row["sense"] = std::string(senseSymbol(c.sense));
      row["rhs"] = writeRational(c.rhs);
      player["constraints"].push_back(std::move(row));
    }
    const PayoffSpec& pay = game.payoff(i);
    ordered_json payoff;
    payoff["constant"] = writeRational(pay.constant);
    payoff["ownLinear"] = writeVector(pay.ownLinear);
    payoff["oppLinear"] = ordered_json::object();
    for (const auto& [j, e] : pay.oppLinear) payoff["oppLinear"][std::to_string(j)] = writeVector(e);
    payoff["bilinear"] = ordered_json::object();
    for (const auto& [j, q] : pay.bilinear) {
      ordered_json rows = ordered_json::array();
      for (const auto& r : q) rows.push_back(writeVector(r));
      payoff["bilinear"][std::to_string(j)] = std::move(rows);
    }
    player["payoff"] = std::move(payoff);
    doc["players"].push_back(std::move(player));
  }
  if (cng) doc["cng"] = writeCng(*cng);
  return doc.dump(2) + "\n";
}

std::string emitInstance(const CngInstance& cng, const std::string& name) {
  return emitInstance(toGameInstance(cng, name), cng);
}

void saveText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

bool sameGame(const GameInstance& a, const GameInstance& b) {
  if (a.name() != b.name() || a.numPlayers() != b.numPlayers() || a.tolerance() != b.tolerance()) return false;
  for (int i = 0; i < a.numPlayers(); ++i) {
    const auto& ca = a.strategySet(i).constraints();
    const auto& cb = b.strategySet(i).constraints();
    if (a.numVars(i) != b.numVars(i) || ca.size() != cb.size()) return false;
    for (std::size_t r = 0; r < ca.size(); ++r) {
      if (ca[r].coeffs != cb[r].coeffs || ca[r].sense != cb[r].sense || ca[r].rhs != cb[r].rhs) return false;
    }
    const PayoffSpec& pa = a.payoff(i);
    const PayoffSpec& pb = b.payoff(i);
    if (pa.constant != pb.constant || pa.ownLinear != pb.ownLinear || pa.oppLinear != pb.oppLinear ||
        pa.bilinear != pb.bilinear) {
      return false;
    }
  }
  return true;
}

bool sameCng(const CngInstance& a, const CngInstance& b) {
  return a.defenderCriticality == b.defenderCriticality && a.attackerCriticality == b.attackerCriticality &&
         a.defenderCost == b.defenderCost && a.attackerCost == b.attackerCost &&
         a.defenderBudget == b.defenderBudget && a.attackerBudget == b.attackerBudget && a.delta == b.delta &&
         a.eta == b.eta && a.epsilon == b.epsilon && a.gamma == b.gamma;
}

}  // namespace ipgkit
