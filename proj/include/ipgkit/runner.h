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

#ifndef IPGKIT_RUNNER_H_
#define IPGKIT_RUNNER_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ipgkit/cng.h"
#include "ipgkit/game.h"
#include "ipgkit/instance_io.h"

namespace ipgkit {

enum class Algorithm { kSgm, kZeroRegrets, kMcnp };

std::string_view algorithmName(Algorithm algorithm);  // "sgm", "zeror", "mcnp"
Algorithm parseAlgorithm(std::string_view name);

// kBilevelOpt marks a sequential (leader-follower) optimum, which is not an
// equilibrium of the simultaneous game.
enum class ResultStatus { kEq, kPureEq, kNoPureEq, kTimeLimit, kIterLimit, kBilevelOpt };

std::string_view statusName(ResultStatus status);
ResultStatus parseStatus(std::string_view name);

struct ResultRecord {
  std::string instance;
  Algorithm algorithm = Algorithm::kSgm;
  ResultStatus status = ResultStatus::kEq;
  // Absent only for kNoPureEq and for limits hit before any candidate.
  std::optional<MixedProfile> payload;
  std::optional<Rational> epsilon;
  // Selection value (zeror) or leader value (mcnp).
  std::optional<Rational> objective;
  double wallTime = 0.0;
  int iterations = 0;
  // Only for instances with a cng section and a payload of positive
  // defender payoff.
  std::optional<Rational> pos;

  void validate() const;
};

std::string toJson(const ResultRecord& record, int indent = 2);
ResultRecord parseResultRecord(std::string_view text);

struct SolveRequest {
  Algorithm algorithm = Algorithm::kSgm;
  // Player whose payoff zeror maximizes; welfare when empty.
  std::optional<int> selectionPlayer;
  std::optional<double> timeLimit;
  std::optional<int> maxIterations;
  TieBreak tieBreak = TieBreak::kOptimistic;
};

// Solver failures propagate as Error.
ResultRecord runSolver(const InstanceFile& instance, const SolveRequest& request);

// Human-readable summary of a record.
std::string formatTable(const ResultRecord& record);

struct BenchRow {
  std::string instance;
  std::string algo;
  std::string status;  // a status name, or "error"
  std::optional<double> epsilon;
  double timeSeconds = 0.0;
  int iterations = 0;
  std::optional<double> pos;
  // Diagnostic for status "error"; not part of the CSV.
  std::string error;
};

// Group key of a row: N for instance names of the form cng_N_..., else 0.
int instanceSize(std::string_view instance);

struct BenchAggregate {
  int size = 0;
  std::string algo;
  int count = 0;
  int equilibria = 0;      // eq or pureEq
  int pureEquilibria = 0;  // pureEq
  int timeLimits = 0;
  double meanTime = 0.0;
  double meanIterations = 0.0;
  // Over rows carrying a pos value; empty when none do.
  std::optional<double> meanPos;
};

struct BenchOptions {
  std::vector<Algorithm> algorithms;
  std::optional<double> timeLimit;
  // 0 picks IPGKIT_THREADS, else hardware concurrency.
  int threads = 0;
};

// Rows ordered by instance file name, then by the order of `algorithms`.
std::vector<BenchRow> runBench(const std::filesystem::path& dir, const BenchOptions& options);
std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows);

std::string benchCsv(const std::vector<BenchRow>& rows);
std::string summaryCsv(const std::vector<BenchAggregate>& aggregates);
std::vector<BenchRow> parseBenchCsv(std::string_view text);

}  // namespace ipgkit

#endif  // IPGKIT_RUNNER_H_
