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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ipgkit/cng.h"
#include "ipgkit/instance_io.h"
#include "ipgkit/runner.h"

namespace {

constexpr int kUsageError = 2;
constexpr int kSolverError = 3;

struct SolveArgs {
  std::string algo;
  std::string instance;
  std::string selection = "welfare";
  std::optional<double> timeLimit;
  std::optional<int> maxIter;
  std::string tieBreak = "opt";
  bool pretty = false;
};

struct GenArgs {
  int size = 0;
  int count = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct BenchArgs {
  std::string dir;
  std::string algos = "sgm,zeror,mcnp";
  std::optional<double> timeLimit;
  std::string out;
};

// "player:i" counts players from 1.
std::optional<int> parseSelection(const std::string& text, int numPlayers) {
  if (text == "welfare") return std::nullopt;
  const std::string prefix = "player:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      int index = std::stoi(text.substr(prefix.size()), &used);
      if (used == text.size() - prefix.size() && index >= 1 && index <= numPlayers) return index - 1;
    } catch (const std::logic_error&) {
    }
  }
  throw CLI::ValidationError("--selection", "expected welfare or player:i with 1 <= i <= " + std::to_string(numPlayers));
}

int runSolve(const SolveArgs& args) {
  ipgkit::InstanceFile instance = ipgkit::loadInstance(args.instance);
  ipgkit::SolveRequest request;
  request.algorithm = ipgkit::parseAlgorithm(args.algo);
  request.selectionPlayer = parseSelection(args.selection, instance.game.numPlayers());
  request.timeLimit = args.timeLimit;
  request.maxIterations = args.maxIter;
  request.tieBreak = args.tieBreak == "pess" ? ipgkit::TieBreak::kPessimistic : ipgkit::TieBreak::kOptimistic;
  ipgkit::ResultRecord record;
  try {
    record = ipgkit::runSolver(instance, request);
  } catch (const ipgkit::Error& e) {
    std::cerr << "ipgkit: solver failure (" << ipgkit::errorCodeName(e.code()) << "): " << e.what() << "\n";
    return kSolverError;
  }
  std::cout << ipgkit::toJson(record);
  if (args.pretty) std::cerr << ipgkit::formatTable(record);
  return 0;
}

int runGen(const GenArgs& args) {
  std::filesystem::create_directories(args.out);
  auto instances = ipgkit::generateInstances(args.size, args.count, args.seed);
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const std::string name =
        "cng_" + std::to_string(args.size) + "_" + std::to_string(args.seed) + "_" + std::to_string(k);
    ipgkit::saveText(std::filesystem::path(args.out) / (name + ".json"), ipgkit::emitInstance(instances[k], name));
  }
  return 0;
}

int runBenchCommand(const BenchArgs& args) {
  ipgkit::BenchOptions options;
  std::stringstream list(args.algos);
  for (std::string item; std::getline(list, item, ',');) {
    if (!item.empty()) options.algorithms.push_back(ipgkit::parseAlgorithm(item));
  }
  if (options.algorithms.empty()) throw CLI::ValidationError("--algos", "no algorithm given");
  options.timeLimit = args.timeLimit;
  auto rows = ipgkit::runBench(args.dir, options);
  for (const auto& row : rows) {
    if (row.status == "error") std::cerr << "ipgkit: " << row.instance << " [" << row.algo << "]: " << row.error << "\n";
  }
  const std::string csv = ipgkit::benchCsv(rows);
  // Aggregates come from the rows as written, so they can be recomputed
  // from the CSV alone.
  const std::string summary = ipgkit::summaryCsv(ipgkit::aggregate(ipgkit::parseBenchCsv(csv)));
  ipgkit::saveText(args.out, csv);
  ipgkit::saveText(args.out + ".summary.csv", summary);
  std::cerr << summary;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of integer programming games"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve one instance and print a JSON result record");
  solve->add_option("--algo", solve_args.algo, "sgm, zeror or mcnp")->required()->check(CLI::IsMember({"sgm", "zeror", "mcnp"}));
  solve->add_option("--instance", solve_args.instance, "Instance JSON file")->required();
  solve->add_option("--selection", solve_args.selection, "welfare or player:i (zeror)");
  solve->add_option("--time-limit", solve_args.timeLimit, "Seconds; SGM also checks it during the play phase")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", solve_args.maxIter, "Iteration limit")->check(CLI::PositiveNumber);
  solve->add_option("--tie-break", solve_args.tieBreak, "Follower tie-break for mcnp")->check(CLI::IsMember({"opt", "pess"}));
  solve->add_flag("--pretty", solve_args.pretty, "Also print a table on standard error");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen-cng", "Generate random critical node game instances");
  gen->add_option("--size", gen_args.size, "Number of resources")->required()->check(CLI::PositiveNumber);
  gen->add_option("--count", gen_args.count, "Number of instances")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_args.seed, "Random seed")->required();
  gen->add_option("--out", gen_args.out, "Output directory")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a directory of instances");
  bench->add_option("--dir", bench_args.dir, "Directory of instance files")->required();
  bench->add_option("--algos", bench_args.algos, "Comma-separated algorithms");
  bench->add_option("--time-limit", bench_args.timeLimit, "Seconds per run")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_args.out, "Output CSV; aggregates go to <out>.summary.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*solve) return runSolve(solve_args);
    if (*gen) return runGen(gen_args);
    if (*bench) return runBenchCommand(bench_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "ipgkit: " << e.what() << "\n";
    return kUsageError;
  } catch (const ipgkit::Error& e) {
    std::cerr << "ipgkit: " << ipgkit::errorCodeName(e.code()) << ": " << e.what() << "\n";
    bool usage = e.code() == ipgkit::ErrorCode::kParse || e.code() == ipgkit::ErrorCode::kIo ||
                 e.code() == ipgkit::ErrorCode::kInvalidArgument;
    return usage ? kUsageError : kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "ipgkit: " << e.what() << "\n";
    return kSolverError;
  }
  return kUsageError;
}
