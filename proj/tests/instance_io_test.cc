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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "test_util.h"

namespace ipgkit {
namespace {

const std::filesystem::path kData = IPGKIT_DATA_DIR;

ErrorCode parseFailure(const std::string& text) {
  try {
    parseInstance(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::kNumerical;
}

const char* kTiny = R"({"name": "t", "players": [
  {"numVars": 1, "constraints": [], "payoff": {"ownLinear": [1]}},
  {"numVars": 1, "constraints": [], "payoff": {"ownLinear": [1]}}]})";

TEST(InstanceIo, KnapsackGameFile) {
  InstanceFile f = loadInstance(kData / "knapsack_game.json");
  EXPECT_TRUE(sameGame(f.game, testing::knapsackGame()));
  EXPECT_FALSE(f.cng);
}

TEST(InstanceIo, OneResourceFile) {
  InstanceFile f = loadInstance(kData / "cng_one_resource.json");
  ASSERT_TRUE(f.cng);
  EXPECT_TRUE(sameCng(*f.cng, testing::oneResourceCng()));
  EXPECT_TRUE(sameGame(f.game, toGameInstance(testing::oneResourceCng(), f.game.name())));
}

TEST(InstanceIo, RationalSpellings) {
  InstanceFile f = parseInstance(R"({"name": "r", "players": [
    {"numVars": 2, "constraints": [{"coeffs": ["3/6", 0.25], "sense": ">=", "rhs": "-1/3"}],
     "payoff": {"constant": "7", "ownLinear": [1e-3, "-2.5"], "oppLinear": {"1": [2]}, "bilinear": {"1": [[1], [2]]}}},
    {"numVars": 1, "constraints": [{"coeffs": [1], "sense": "==", "rhs": 1}], "payoff": {"ownLinear": [0]}}]})");
  const auto& c = f.game.strategySet(0).constraints()[0];
  EXPECT_EQ(c.coeffs, (RationalVector{Rational(1, 2), Rational(1, 4)}));
  EXPECT_EQ(c.sense, Sense::kGreaterEqual);
  EXPECT_EQ(c.rhs, Rational(-1, 3));
  EXPECT_EQ(f.game.payoff(0).constant, 7);
  EXPECT_EQ(f.game.payoff(0).ownLinear, (RationalVector{Rational(1, 1000), Rational(-5, 2)}));
  EXPECT_EQ(f.game.strategySet(1).constraints()[0].sense, Sense::kEqual);
}

TEST(InstanceIo, RoundTripsRandomGames) {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 60; ++trial) {
    testing::RandomGameSpec spec;
    spec.players = trial % 3 == 0 ? 3 : 2;
    spec.maxDen = 7;
    spec.maxConstraints = 2;
    spec.generalConstraint = 0.5;
    GameInstance g = testing::randomGame(rng, spec, "game-" + std::to_string(trial));
    const std::string text = emitInstance(g);
    InstanceFile back = parseInstance(text);
    EXPECT_TRUE(sameGame(g, back.game)) << text;
    EXPECT_EQ(emitInstance(back.game), text);
    EXPECT_EQ(text.back(), '\n');
  }
}

TEST(InstanceIo, RoundTripsGeneratedCng) {
  for (const auto& c : generateInstances(12, 5, 3)) {
    const std::string text = emitInstance(c, "cng");
    InstanceFile back = parseInstance(text);
    ASSERT_TRUE(back.cng);
    EXPECT_TRUE(sameCng(c, *back.cng));
    EXPECT_TRUE(sameGame(toGameInstance(c, "cng"), back.game));
    EXPECT_EQ(emitInstance(back.game, back.cng), text);
  }
}

TEST(InstanceIo, LargeValuesSurvive) {
  PayoffSpec p;
  p.constant = Rational(boost::multiprecision::mpz_int(1) << 80);
  p.ownLinear = {Rational(1, 3)};
  std::vector<Player> players;
  players.push_back(testing::makePlayer(1, {}, p));
  players.push_back(testing::makePlayer(1, {}, p));
  GameInstance g("big", std::move(players));
  EXPECT_TRUE(sameGame(g, parseInstance(emitInstance(g)).game));
}

TEST(InstanceIo, RejectsMalformedDocuments) {
  EXPECT_NO_THROW(parseInstance(kTiny));
  EXPECT_EQ(parseFailure("{"), ErrorCode::kParse);
  EXPECT_EQ(parseFailure(R"({"name": "t"})"), ErrorCode::kParse);
  EXPECT_EQ(parseFailure(R"({"name": "t", "players": [], "extra": 1})"), ErrorCode::kParse);
  std::string text = kTiny;
  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string s = text;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_EQ(parseFailure(replaced(R"("ownLinear": [1]})", R"("ownLinear": [1], "cubic": 1})")), ErrorCode::kParse);
  EXPECT_EQ(parseFailure(replaced(R"("ownLinear": [1]})", R"("ownLinear": ["x"]})")), ErrorCode::kParse);
  EXPECT_EQ(parseFailure(replaced(R"("ownLinear": [1]})", R"("ownLinear": [1, 2]})")), ErrorCode::kParse);
  EXPECT_EQ(parseFailure(replaced(R"("constraints": [])", R"("constraints": [{"coeffs": [1], "sense": "<", "rhs": 1}])")),
            ErrorCode::kParse);
  EXPECT_EQ(parseFailure(replaced(R"("ownLinear": [1]})", R"("ownLinear": [1], "oppLinear": {"7": [1]}})")),
            ErrorCode::kParse);
  EXPECT_EQ(parseFailure(replaced(R"("numVars": 1)", R"("numVars": 1.5)")), ErrorCode::kParse);
  try {
    loadInstance(kData / "does_not_exist.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(InstanceIo, CngSectionMustMatchPlayers) {
  std::string text = emitInstance(testing::oneResourceCng(), "one");
  const std::string from = "\"constant\": 10";
  ASSERT_NE(text.find(from), std::string::npos);
  text.replace(text.find(from), from.size(), "\"constant\": 11");
  EXPECT_EQ(parseFailure(text), ErrorCode::kParse);
}

}  // namespace
}  // namespace ipgkit
