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

#include "ipgkit/runner.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ipgkit/oracle.h"
#include "ipgkit/sgm.h"
#include "ipgkit/zero_regrets.h"

namespace ipgkit {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::kParse, "result record: " + what); }

Rational readRational(const json& node, const std::string& field) {
  if (!node.is_string()) fail(field + " must be a \"p/q\" string");
  return parseRational(node.get<std::string>());
}

std::string formatDouble(double value, const char* format) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

std::string csvField(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> splitCsvLine(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        fields.back() += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

int threadCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("IPGKIT_THREADS")) {
    int value = std::atoi(env);
    if (value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::string_view algorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSgm: return "sgm";
    case Algorithm::kZeroRegrets: return "zeror";
    case Algorithm::kMcnp: return "mcnp";
  }
  return "?";
}

Algorithm parseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kSgm, Algorithm::kZeroRegrets, Algorithm::kMcnp}) {
    if (algorithmName(a) == name) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

std::string_view statusName(ResultStatus status) {
  switch (status) {
    case ResultStatus::kEq: return "eq";
    case ResultStatus::kPureEq: return "pureEq";
    case ResultStatus::kNoPureEq: return "noPureEq";
    case ResultStatus::kTimeLimit: return "timeLimit";
    case ResultStatus::kIterLimit: return "iterLimit";
    case ResultStatus::kBilevelOpt: return "bilevelOpt";
  }
  return "?";
}

ResultStatus parseStatus(std::string_view name) {
  for (ResultStatus s : {ResultStatus::kEq, ResultStatus::kPureEq, ResultStatus::kNoPureEq, ResultStatus::kTimeLimit,
                         ResultStatus::kIterLimit, ResultStatus::kBilevelOpt}) {
    if (statusName(s) == name) return s;
  }
  throw Error(ErrorCode::kParse, "unknown status '" + std::string(name) + "'");
}

void ResultRecord::validate() const {
  switch (status) {
    case ResultStatus::kEq:
    case ResultStatus::kBilevelOpt:
      if (!payload) throw Error(ErrorCode::kInvalidArgument, "result record: status requires a payload");
      break;
    case ResultStatus::kPureEq:
      if (!payload || !payload->isPure()) {
        throw Error(ErrorCode::kInvalidArgument, "result record: pureEq requires a pure payload");
      }
      break;
    case ResultStatus::kNoPureEq:
      if (payload) throw Error(ErrorCode::kInvalidArgument, "result record: noPureEq carries no payload");
      break;
    case ResultStatus::kTimeLimit:
    case ResultStatus::kIterLimit:
      break;
  }
  if (payload && !epsilon) throw Error(ErrorCode::kInvalidArgument, "result record: payload without epsilon");
}

std::string toJson(const ResultRecord& record, int indent) {
  record.validate();
  ordered_json doc;
  doc["instance"] = record.instance;
  doc["algorithm"] = std::string(algorithmName(record.algorithm));
  doc["status"] = std::string(statusName(record.status));
  if (record.payload) {
    ordered_json players = ordered_json::array();
    for (const auto& mixed : record.payload->players) {
      ordered_json p;
      p["support"] = mixed.support;
      p["probabilities"] = ordered_json::array();
      for (const auto& q : mixed.probabilities) p["probabilities"].push_back(toString(q));
      players.push_back(std::move(p));
    }
    doc["payload"] = {{"players", std::move(players)}};
  }
  if (record.epsilon) doc["epsilon"] = toString(*record.epsilon);
  if (record.objective) doc["objective"] = toString(*record.objective);
  doc["wallTime"] = record.wallTime;
  doc["iterations"] = record.iterations;
  if (record.pos) doc["pos"] = toString(*record.pos);
  return doc.dump(indent) + "\n";
}

ResultRecord parseResultRecord(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  if (!doc.is_object()) fail("expected an object");
  static const std::vector<std::string> known{"instance", "algorithm", "status", "payload", "epsilon",
                                              "objective", "wallTime", "iterations", "pos"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) fail("unknown field '" + key + "'");
  }
  ResultRecord record;
  try {
    record.instance = doc.at("instance").get<std::string>();
    record.algorithm = parseAlgorithm(doc.at("algorithm").get<std::string>());
    record.status = parseStatus(doc.at("status").get<std::string>());
    record.wallTime = doc.at("wallTime").get<double>();
    record.iterations = doc.at("iterations").get<int>();
    if (doc.contains("payload")) {
      MixedProfile profile;
      for (const auto& p : doc["payload"].at("players")) {
        MixedStrategy mixed;
        mixed.support = p.at("support").get<std::vector<Strategy>>();
        for (const auto& q : p.at("probabilities")) mixed.probabilities.push_back(readRational(q, "probability"));
        profile.players.push_back(std::move(mixed));
      }
      record.payload = std::move(profile);
    }
    if (doc.contains("epsilon")) record.epsilon = readRational(doc["epsilon"], "epsilon");
    if (doc.contains("objective")) record.objective = readRational(doc["objective"], "objective");
    if (doc.contains("pos")) record.pos = readRational(doc["pos"], "pos");
  } catch (const json::exception& e) {
    fail(e.what());
  }
  try {
    record.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
  return record;
}

ResultRecord runSolver(const InstanceFile& instance, const SolveRequest& request) {
  const GameInstance& game = instance.game;
  const auto start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (request.timeLimit) {
    if (*request.timeLimit <= 0) throw Error(ErrorCode::kInvalidArgument, "time limit must be positive");
    deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*request.timeLimit));
  }
  if (request.maxIterations && *request.maxIterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "iteration limit must be positive");
  }

  ResultRecord record;
  record.instance = game.name();
  record.algorithm = request.algorithm;
  switch (request.algorithm) {
    case Algorithm::kSgm: {
      SgmOptions options;
      if (request.maxIterations) options.maxIterations = *request.maxIterations;
      options.deadline = deadline;
      SgmResult result = solveSgm(game, options);
      switch (result.status) {
        case SgmResult::Status::kEquilibrium:
          record.status = result.profile.isPure() ? ResultStatus::kPureEq : ResultStatus::kEq;
          break;
        case SgmResult::Status::kIterationLimit: record.status = ResultStatus::kIterLimit; break;
        case SgmResult::Status::kTimeLimit: record.status = ResultStatus::kTimeLimit; break;
      }
      if (!result.profile.players.empty()) {
        record.payload = result.profile;
        record.epsilon = result.epsilon;
      }
      record.iterations = result.iterations;
      break;
    }
    case Algorithm::kZeroRegrets: {
      SelectionFunction selection = request.selectionPlayer
                                        ? SelectionFunction::playerPayoff(game, *request.selectionPlayer)
                                        : SelectionFunction::welfare(game);
      ZeroRegretsOptions options;
      if (request.maxIterations) options.maxIterations = *request.maxIterations;
      options.deadline = deadline;
      ZeroRegretsResult result = solveZeroRegrets(game, selection, options);
      switch (result.status) {
        case ZeroRegretsResult::Status::kOptimalPureNE:
          record.status = ResultStatus::kPureEq;
          record.objective = result.hValue;
          break;
        case ZeroRegretsResult::Status::kNoPureNE: record.status = ResultStatus::kNoPureEq; break;
        case ZeroRegretsResult::Status::kIterationLimit: record.status = ResultStatus::kIterLimit; break;
        case ZeroRegretsResult::Status::kTimeLimit: record.status = ResultStatus::kTimeLimit; break;
      }
      if (result.profile && record.status != ResultStatus::kNoPureEq) {
        record.payload = MixedProfile::pointMass(*result.profile);
        record.epsilon = result.epsilon;
      }
      record.iterations = result.iterations;
      break;
    }
    case Algorithm::kMcnp: {
      if (!instance.cng) throw Error(ErrorCode::kInvalidArgument, "mcnp requires cng section");
      McnpOptions options;
      options.tieBreak = request.tieBreak;
      options.deadline = deadline;
      McnpSolution solution = solveMcnp(*instance.cng, options);
      record.status = solution.complete ? ResultStatus::kBilevelOpt : ResultStatus::kTimeLimit;
      PureProfile profile{{solution.protect, solution.attack}};
      record.payload = MixedProfile::pointMass(profile);
      record.epsilon = epsilonOf(game, profile);
      record.objective = solution.leaderValue;
      record.iterations = static_cast<int>(std::min<std::int64_t>(solution.leaderStrategies, 1 << 30));
      break;
    }
  }
  if (instance.cng && record.payload) {
    Rational value = evaluateMixed(game, *record.payload, 0);
    if (value > 0) record.pos = bestDefenderOutcome(*instance.cng) / value;
  }
  record.wallTime = std::chrono::duration<double>(Clock::now() - start).count();
  record.validate();
  return record;
}

std::string formatTable(const ResultRecord& record) {
  std::ostringstream out;
  auto line = [&](const std::string& key, const std::string& value) {
    out << key << std::string(key.size() < 12 ? 12 - key.size() : 1, ' ') << value << "\n";
  };
  line("instance", record.instance);
  line("algorithm", std::string(algorithmName(record.algorithm)));
  line("status", std::string(statusName(record.status)));
  if (record.epsilon) line("epsilon", toString(*record.epsilon));
  if (record.objective) line("objective", toString(*record.objective));
  if (record.pos) line("pos", toString(*record.pos) + " (" + formatDouble(toDouble(*record.pos), "%.6g") + ")");
  line("iterations", std::to_string(record.iterations));
  line("time [s]", formatDouble(record.wallTime, "%.6f"));
  if (record.payload) {
    for (std::size_t i = 0; i < record.payload->players.size(); ++i) {
      const auto& mixed = record.payload->players[i];
      for (std::size_t k = 0; k < mixed.support.size(); ++k) {
        line(k == 0 ? "player " + std::to_string(i + 1) : "",
             toString(mixed.support[k]) + "  p=" + toString(mixed.probabilities[k]));
      }
    }
  }
  return out.str();
}

int instanceSize(std::string_view instance) {
  if (instance.substr(0, 4) != "cng_") return 0;
  std::size_t end = instance.find('_', 4);
  if (end == std::string_view::npos || end == 4) return 0;
  int size = 0;
  for (std::size_t k = 4; k < end; ++k) {
    if (instance[k] < '0' || instance[k] > '9') return 0;
    size = size * 10 + (instance[k] - '0');
  }
  return size;
}

std::vector<BenchRow> runBench(const std::filesystem::path& dir, const BenchOptions& options) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  const std::size_t num_algos = options.algorithms.size();
  std::vector<BenchRow> rows(files.size() * num_algos);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t job = next++; job < rows.size(); job = next++) {
      const auto& path = files[job / num_algos];
      const Algorithm algo = options.algorithms[job % num_algos];
      BenchRow& row = rows[job];
      row.instance = path.stem().string();
      row.algo = std::string(algorithmName(algo));
      const auto start = Clock::now();
      try {
        InstanceFile instance = loadInstance(path);
        SolveRequest request;
        request.algorithm = algo;
        request.timeLimit = options.timeLimit;
        if (algo == Algorithm::kZeroRegrets && instance.cng) request.selectionPlayer = 0;
        ResultRecord record = runSolver(instance, request);
        row.status = std::string(statusName(record.status));
        if (record.epsilon) row.epsilon = toDouble(*record.epsilon);
        row.timeSeconds = record.wallTime;
        row.iterations = record.iterations;
        if (record.pos) row.pos = toDouble(*record.pos);
      } catch (const std::exception& e) {
        row.status = "error";
        row.error = e.what();
        row.timeSeconds = std::chrono::duration<double>(Clock::now() - start).count();
      }
    }
  };
  const int threads = std::min<int>(threadCount(options.threads), std::max<std::size_t>(rows.size(), 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows) {
  struct Sums {
    BenchAggregate agg;
    double time = 0, iterations = 0, pos = 0;
    int posCount = 0;
  };
  std::map<std::pair<int, std::string>, Sums> groups;
  for (const auto& row : rows) {
    Sums& s = groups[{instanceSize(row.instance), row.algo}];
    s.agg.count += 1;
    if (row.status == "eq" || row.status == "pureEq") s.agg.equilibria += 1;
    if (row.status == "pureEq") s.agg.pureEquilibria += 1;
    if (row.status == "timeLimit") s.agg.timeLimits += 1;
    s.time += row.timeSeconds;
    s.iterations += row.iterations;
    if (row.pos) {
      s.pos += *row.pos;
      s.posCount += 1;
    }
  }
  std::vector<BenchAggregate> out;
  for (auto& [key, s] : groups) {
    s.agg.size = key.first;
    s.agg.algo = key.second;
    s.agg.meanTime = s.time / s.agg.count;
    s.agg.meanIterations = s.iterations / s.agg.count;
    if (s.posCount > 0) s.agg.meanPos = s.pos / s.posCount;
    out.push_back(s.agg);
  }
  return out;
}

std::string benchCsv(const std::vector<BenchRow>& rows) {
  std::string out = "instance,algo,status,epsilon,time_s,iterations,pos\n";
  for (const auto& row : rows) {
    out += csvField(row.instance) + "," + row.algo + "," + row.status + ",";
    if (row.epsilon) out += formatDouble(*row.epsilon, "%.17g");
    out += "," + formatDouble(row.timeSeconds, "%.6f") + "," + std::to_string(row.iterations) + ",";
    if (row.pos) out += formatDouble(*row.pos, "%.17g");
    out += "\n";
  }
  return out;
}

std::string summaryCsv(const std::vector<BenchAggregate>& aggregates) {
  std::string out = "size,algo,count,eq,pure_eq,tl,mean_time_s,mean_iterations,mean_pos\n";
  for (const auto& a : aggregates) {
    out += std::to_string(a.size) + "," + a.algo + "," + std::to_string(a.count) + "," +
           std::to_string(a.equilibria) + "," + std::to_string(a.pureEquilibria) + "," +
           std::to_string(a.timeLimits) + "," + formatDouble(a.meanTime, "%.6f") + "," +
           formatDouble(a.meanIterations, "%.3f") + ",";
    if (a.meanPos) out += formatDouble(*a.meanPos, "%.6f");
    out += "\n";
  }
  return out;
}

std::vector<BenchRow> parseBenchCsv(std::string_view text) {
  std::vector<BenchRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "instance,algo,status,epsilon,time_s,iterations,pos") {
    throw Error(ErrorCode::kParse, "bench csv: unexpected header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = splitCsvLine(line);
    if (f.size() != 7) throw Error(ErrorCode::kParse, "bench csv: expected 7 columns in '" + line + "'");
    BenchRow row;
    try {
      row.instance = f[0];
      row.algo = f[1];
      row.status = f[2];
      if (!f[3].empty()) row.epsilon = std::stod(f[3]);
      row.timeSeconds = std::stod(f[4]);
      row.iterations = std::stoi(f[5]);
      if (!f[6].empty()) row.pos = std::stod(f[6]);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, "bench csv: malformed number in '" + line + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ipgkit
