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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ipgkit/cng.h"
#include "ipgkit/instance_io.h"
#include "ipgkit/oracle.h"
#include "ipgkit/runner.h"
#include "ipgkit/verify.h"

namespace py = pybind11;

namespace {

py::object fraction(const ipgkit::Rational& value) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(ipgkit::toString(value));
}

ipgkit::Rational rational(const py::handle& value) {
  return ipgkit::parseRational(py::str(value).cast<std::string>());
}

py::tuple strategyTuple(const ipgkit::Strategy& x) { return py::tuple(py::cast(x)); }

py::list pureToPython(const ipgkit::PureProfile& profile) {
  py::list out;
  for (const auto& x : profile.strategies) out.append(strategyTuple(x));
  return out;
}

py::list mixedToPython(const ipgkit::MixedProfile& profile) {
  py::list out;
  for (const auto& player : profile.players) {
    py::list entries;
    for (std::size_t k = 0; k < player.support.size(); ++k) {
      entries.append(py::make_tuple(strategyTuple(player.support[k]), fraction(player.probabilities[k])));
    }
    out.append(std::move(entries));
  }
  return out;
}

// Accepts a list of strategies (pure) or a list of [(strategy, probability)]
// per player (mixed).
ipgkit::MixedProfile profileFromPython(const py::sequence& players) {
  ipgkit::MixedProfile profile;
  for (const auto& entry : players) {
    ipgkit::MixedStrategy mixed;
    py::sequence seq = entry.cast<py::sequence>();
    const bool pure = seq.size() == 0 || !py::isinstance<py::tuple>(seq[0]) ||
                      py::len(seq[0]) != 2 || !py::isinstance<py::sequence>(seq[0].cast<py::tuple>()[0]);
    if (pure) {
      mixed.support.push_back(seq.cast<ipgkit::Strategy>());
      mixed.probabilities.emplace_back(1);
    } else {
      for (const auto& item : seq) {
        py::tuple pair = item.cast<py::tuple>();
        mixed.support.push_back(pair[0].cast<ipgkit::Strategy>());
        mixed.probabilities.push_back(rational(pair[1]));
      }
    }
    profile.players.push_back(std::move(mixed));
  }
  return profile;
}

py::dict recordToPython(const ipgkit::ResultRecord& record) {
  py::dict out;
  out["instance"] = record.instance;
  out["algorithm"] = std::string(ipgkit::algorithmName(record.algorithm));
  out["status"] = std::string(ipgkit::statusName(record.status));
  out["payload"] = record.payload ? py::object(mixedToPython(*record.payload)) : py::none();
  out["epsilon"] = record.epsilon ? fraction(*record.epsilon) : py::none();
  out["objective"] = record.objective ? fraction(*record.objective) : py::none();
  out["wall_time"] = record.wallTime;
  out["iterations"] = record.iterations;
  out["pos"] = record.pos ? fraction(*record.pos) : py::none();
  return out;
}

class Instance {
 public:
  explicit Instance(ipgkit::InstanceFile file) : file_(std::move(file)) {}
  const ipgkit::InstanceFile& file() const { return file_; }
  const ipgkit::GameInstance& game() const { return file_.game; }

 private:
  ipgkit::InstanceFile file_;
};

}  // namespace

PYBIND11_MODULE(_ipgkit, m) {
  m.doc() = "Equilibria of integer programming games";

  static py::exception<ipgkit::Error> error(m, "IpgkitError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ipgkit::Error& e) {
      error((std::string(ipgkit::errorCodeName(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("name", [](const Instance& g) { return g.game().name(); })
      .def_property_readonly("num_players", [](const Instance& g) { return g.game().numPlayers(); })
      .def_property_readonly("num_vars",
                             [](const Instance& g) {
                               std::vector<int> out;
                               for (int i = 0; i < g.game().numPlayers(); ++i) out.push_back(g.game().numVars(i));
                               return out;
                             })
      .def_property_readonly("has_cng", [](const Instance& g) { return g.file().cng.has_value(); })
      .def("to_json", [](const Instance& g) { return ipgkit::emitInstance(g.game(), g.file().cng); })
      .def("__repr__", [](const Instance& g) { return "<ipgkit.Instance '" + g.game().name() + "'>"; });

  m.def("parse_instance", [](const std::string& text) { return Instance(ipgkit::parseInstance(text)); },
        py::arg("text"));
  m.def("load_instance", [](const std::string& path) { return Instance(ipgkit::loadInstance(path)); },
        py::arg("path"));

  m.def(
      "solve",
      [](const Instance& g, const std::string& algo, std::optional<int> selection_player,
         std::optional<double> time_limit, std::optional<int> max_iter, const std::string& tie_break) {
        ipgkit::SolveRequest request;
        request.algorithm = ipgkit::parseAlgorithm(algo);
        request.selectionPlayer = selection_player;
        request.timeLimit = time_limit;
        request.maxIterations = max_iter;
        if (tie_break != "opt" && tie_break != "pess") {
          throw ipgkit::Error(ipgkit::ErrorCode::kInvalidArgument, "tie_break must be 'opt' or 'pess'");
        }
        request.tieBreak = tie_break == "pess" ? ipgkit::TieBreak::kPessimistic : ipgkit::TieBreak::kOptimistic;
        ipgkit::ResultRecord record;
        {
          py::gil_scoped_release release;
          record = ipgkit::runSolver(g.file(), request);
        }
        return recordToPython(record);
      },
      py::arg("instance"), py::arg("algo"), py::arg("selection_player") = py::none(),
      py::arg("time_limit") = py::none(), py::arg("max_iter") = py::none(), py::arg("tie_break") = "opt",
      "Runs sgm, zeror or mcnp; selection_player counts from 0 and defaults to welfare.");

  m.def(
      "improve",
      [](const Instance& g, const py::sequence& profile) {
        ipgkit::OracleVerdict verdict = ipgkit::improve(g.game(), profileFromPython(profile));
        py::list deviations;
        for (const auto& d : verdict.information) {
          py::dict item;
          item["player"] = d.player;
          item["strategy"] = strategyTuple(d.strategy);
          item["improvement"] = fraction(d.improvement);
          item["membership_failure"] = d.membershipFailure;
          deviations.append(std::move(item));
        }
        return py::make_tuple(verdict.yes, fraction(verdict.worstViolation), deviations);
      },
      py::arg("instance"), py::arg("profile"));

  m.def(
      "best_response",
      [](const Instance& g, int player, const py::sequence& profile) {
        ipgkit::BestResponse br = ipgkit::bestResponse(g.game(), player, profileFromPython(profile));
        return py::make_tuple(strategyTuple(br.strategy), fraction(br.value));
      },
      py::arg("instance"), py::arg("player"), py::arg("profile"));

  m.def(
      "payoff",
      [](const Instance& g, const py::sequence& profile, int player) {
        return fraction(ipgkit::evaluateMixed(g.game(), profileFromPython(profile), player));
      },
      py::arg("instance"), py::arg("profile"), py::arg("player"));

  m.def(
      "enumerate_pure_ne",
      [](const Instance& g) {
        py::list out;
        for (const auto& p : ipgkit::enumeratePureNE(g.game())) out.append(pureToPython(p));
        return out;
      },
      py::arg("instance"));

  m.def(
      "enumerate_mixed_ne",
      [](const Instance& g) {
        py::list out;
        for (const auto& p : ipgkit::enumerateMixedNE2p(g.game())) out.append(mixedToPython(p));
        return out;
      },
      py::arg("instance"));

  m.def(
      "generate_cng",
      [](int size, int count, std::uint64_t seed) {
        std::vector<Instance> out;
        auto instances = ipgkit::generateInstances(size, count, seed);
        for (std::size_t k = 0; k < instances.size(); ++k) {
          const std::string name =
              "cng_" + std::to_string(size) + "_" + std::to_string(seed) + "_" + std::to_string(k);
          out.emplace_back(ipgkit::InstanceFile{ipgkit::toGameInstance(instances[k], name), instances[k]});
        }
        return out;
      },
      py::arg("size"), py::arg("count"), py::arg("seed"));

  m.def(
      "price_of_stability",
      [](const Instance& g, const py::sequence& protect, const py::sequence& attack) {
        if (!g.file().cng) throw ipgkit::Error(ipgkit::ErrorCode::kInvalidArgument, "instance has no cng section");
        return fraction(ipgkit::priceOfStability(*g.file().cng, protect.cast<ipgkit::Strategy>(),
                                                 attack.cast<ipgkit::Strategy>()));
      },
      py::arg("instance"), py::arg("protect"), py::arg("attack"));

  m.def("approximation_scenarios", []() {
    ipgkit::ApproximationReport report = ipgkit::checkApproximationScenarios();
    py::dict out;
    out["original_equilibria"] = report.originalEquilibria;
    out["approximation_equilibria"] = report.approximationEquilibria;
    out["passed"] = report.passed();
    return out;
  });
}
