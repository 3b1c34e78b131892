// Copyright 2026 The qdet Authors
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

#include "qdet/io.hpp"

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <string>

#include "qdet/loss.hpp"
#include "qdet/random.hpp"

namespace {

using nlohmann::json;
using qdet::DiagonalPovm;
using qdet::Povm;

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("qdet_io_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static inline int counter = 0;
};

TEST_CASE("diagonal POVMs round-trip through JSON") {
  const DiagonalPovm click = qdet::click_detector(0.45, 6);
  json meta;
  meta["note"] = "fixture";
  const json doc = qdet::povm_to_json(click, meta);
  CHECK(doc.at("schema") == "qdet-povm/1");
  CHECK(doc.at("cutoff") == 6);
  CHECK(doc.at("metadata").at("note") == "fixture");

  const qdet::LoadedPovm loaded = qdet::parse_povm_json(doc);
  REQUIRE(loaded.is_diagonal());
  const DiagonalPovm& back = std::get<DiagonalPovm>(loaded.povm);
  REQUIRE(back.outcome_count() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(back.outcomes()[i].label == click.outcomes()[i].label);
    CHECK((back.outcomes()[i].diagonal - click.outcomes()[i].diagonal)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }
  CHECK(loaded.metadata.at("note") == "fixture");
}

TEST_CASE("dense POVMs round-trip through JSON files") {
  TempDir dir;
  qdet::Rng rng(61);
  const Povm povm = qdet::random_povm(qdet::MultiModeBasis(1, 4), 3, rng);
  qdet::write_json_file(dir.file("p.json"), qdet::povm_to_json(povm));

  const qdet::LoadedPovm loaded = qdet::load_povm_file(dir.file("p.json"));
  CHECK_FALSE(loaded.is_diagonal());
  const Povm& back = std::get<Povm>(loaded.povm);
  REQUIRE(back.outcome_count() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back.outcomes()[i].label == povm.outcomes()[i].label);
    CHECK((back.outcomes()[i].element.matrix() -
           povm.outcomes()[i].element.matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }
}

TEST_CASE("a single matrix outcome promotes the whole file to dense") {
  json doc;
  doc["schema"] = "qdet-povm/1";
  doc["cutoff"] = 1;
  doc["outcomes"] = json::array();
  doc["outcomes"].push_back({{"label", "d"}, {"diagonal", {0.5, 0.25}}});
  json matrix = json::array();
  matrix.push_back({0.5, json::array({0.0, 0.1})});
  matrix.push_back({json::array({0.0, -0.1}), 0.75});
  doc["outcomes"].push_back({{"label", "m"}, {"matrix", matrix}});

  const qdet::LoadedPovm loaded = qdet::parse_povm_json(doc);
  CHECK_FALSE(loaded.is_diagonal());
  const Povm& povm = std::get<Povm>(loaded.povm);
  CHECK(povm.outcomes()[0].element.matrix()(1, 1) == std::complex<double>(0.25));
  CHECK(povm.outcomes()[1].element.matrix()(0, 1) == std::complex<double>(0.0, 0.1));
}

TEST_CASE("malformed POVM documents fail with a pointed message") {
  json doc;
  doc["schema"] = "qdet-povm/1";
  doc["cutoff"] = 2;
  doc["outcomes"] = json::array();

  CHECK_THROWS_WITH_AS((void)qdet::parse_povm_json(doc),
                       doctest::Contains("outcomes"), std::runtime_error);

  doc["outcomes"].push_back({{"label", "x"}, {"diagonal", {1.0, 1.0, 1.0}},
                             {"matrix", json::array()}});
  CHECK_THROWS_WITH_AS((void)qdet::parse_povm_json(doc),
                       doctest::Contains("exactly one"), std::runtime_error);

  json wrong_schema;
  wrong_schema["schema"] = "qdet-povm/9";
  CHECK_THROWS_WITH_AS((void)qdet::parse_povm_json(wrong_schema),
                       doctest::Contains("schema"), std::runtime_error);

  json short_diag = doc;
  short_diag["outcomes"] = json::array();
  short_diag["outcomes"].push_back({{"label", "x"}, {"diagonal", {1.0}}});
  CHECK_THROWS((void)qdet::parse_povm_json(short_diag));

  json asym = doc;
  asym["outcomes"] = json::array();
  json bad_matrix = json::array();
  bad_matrix.push_back({1.0, 0.5, 0.0});
  bad_matrix.push_back({0.0, 1.0, 0.0});
  bad_matrix.push_back({0.0, 0.0, 1.0});
  asym["outcomes"].push_back({{"label", "x"}, {"matrix", bad_matrix}});
  CHECK_THROWS_WITH_AS((void)qdet::parse_povm_json(asym), doctest::Contains("x"),
                       std::runtime_error);
}

TEST_CASE("missing files and broken JSON report the path") {
  TempDir dir;
  CHECK_THROWS_WITH_AS((void)qdet::load_povm_file(dir.file("absent.json")),
                       doctest::Contains("absent.json"), std::runtime_error);
  qdet::write_text_file(dir.file("broken.json"), "{ not json");
  CHECK_THROWS_WITH_AS((void)qdet::load_povm_file(dir.file("broken.json")),
                       doctest::Contains("broken.json"), std::runtime_error);
}

TEST_CASE("simulate configs parse the matrix and element interferometer forms") {
  json doc;
  doc["schema"] = "qdet-simulate/1";
  doc["total_cutoff"] = 3;
  doc["virtual_detector"] = {
      {"modes", 2},
      {"interferometer",
       {{"beamsplitter", {{"transmissivity", 0.36}}}}},
      {"ancilla", "vacuum"},
      {"slots",
       json::array({{{"mode", 0}, {"detector", {{"click", {{"eta", 1.0}, {"n_max", 3}}}}}},
                    {{"mode", 1}, {"detector", "discard"}}})},
      {"grouping", {{"off|discard", "off"}, {"on|discard", "on"}}}};

  const qdet::SimulateConfig config = qdet::parse_simulate_json(doc);
  CHECK(config.total_cutoff == 3);
  REQUIRE(config.detector.has_value());
  CHECK_FALSE(config.adaptive_detector.has_value());
  const auto& spec = *config.detector;
  CHECK(spec.interferometer.mode_count() == 2);
  // transmissivity T maps to |W_00|^2 = T
  CHECK(std::norm(spec.interferometer.matrix()(0, 0)) == doctest::Approx(0.36));
  REQUIRE(spec.ancilla.has_value());
  CHECK(spec.ancilla->basis().total_cutoff() == 0);
  CHECK(spec.slots.size() == 2);
  CHECK(spec.grouping.size() == 2);

  // the same unitary written as a mesh parses to the same matrix
  const qdet::Decomposition mesh =
      qdet::decompose(spec.interferometer);
  json elements = json::array();
  for (const auto& e : mesh.elements) {
    if (e.kind == qdet::TwoModeElement::Kind::kBeamsplitter) {
      elements.push_back({{"kind", "beamsplitter"},
                          {"modes", {e.mode_a, e.mode_b}},
                          {"theta", e.parameter}});
    } else {
      elements.push_back({{"kind", "phase"}, {"mode", e.mode_a}, {"phi", e.parameter}});
    }
  }
  json phases = json::array();
  for (int i = 0; i < mesh.output_phases.size(); ++i) phases.push_back(mesh.output_phases[i]);
  doc["virtual_detector"]["interferometer"] = {{"elements", elements},
                                               {"output_phases", phases}};
  const qdet::SimulateConfig config2 = qdet::parse_simulate_json(doc);
  CHECK((config2.detector->interferometer.matrix() - spec.interferometer.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("simulate configs resolve POVM files relative to the config") {
  TempDir dir;
  qdet::write_json_file(dir.file("det.json"),
                        qdet::povm_to_json(qdet::pnr_detector(0.8, 4)));
  json doc;
  doc["schema"] = "qdet-simulate/1";
  doc["total_cutoff"] = 4;
  doc["virtual_detector"] = {
      {"modes", 1},
      {"interferometer", "identity"},
      {"slots", json::array({{{"mode", 0}, {"detector", {{"file", "det.json"}}}}})}};
  qdet::write_json_file(dir.file("sim.json"), doc);

  const qdet::SimulateConfig config = qdet::load_simulate_config(dir.file("sim.json"));
  REQUIRE(config.detector.has_value());
  CHECK(config.detector->slots[0].povm.outcome_count() == 5);
}

TEST_CASE("product-state ancillas build from per-mode amplitudes") {
  json doc;
  doc["schema"] = "qdet-simulate/1";
  doc["total_cutoff"] = 4;
  doc["virtual_detector"] = {
      {"modes", 3},
      {"interferometer", "identity"},
      // mode 1 holds |1>, mode 2 holds (|0> + |1>)/sqrt(2)
      {"ancilla",
       {{"product_pure", json::array({json::array({0.0, 1.0}),
                                      json::array({0.70710678118654752, 0.70710678118654752})})}}},
      {"slots", json::array({{{"mode", 0}, {"detector", {{"pnr", {{"eta", 1.0}}}}}},
                             {{"mode", 1}, {"detector", "discard"}},
                             {{"mode", 2}, {"detector", "discard"}}})}};
  const qdet::SimulateConfig config = qdet::parse_simulate_json(doc);
  REQUIRE(config.detector.has_value());
  const auto& anc = *config.detector->ancilla;
  CHECK(anc.basis().mode_count() == 2);
  CHECK(std::abs(anc.trace() - std::complex<double>(1.0)) < 1e-12);
  // amplitude on |1,0> and |1,1> split the half weight of mode 2 evenly
  const int i10 = anc.basis().index_of(std::vector<int>{1, 0});
  const int i11 = anc.basis().index_of(std::vector<int>{1, 1});
  CHECK(std::abs(anc.matrix()(i10, i10) - std::complex<double>(0.5)) < 1e-12);
  CHECK(std::abs(anc.matrix()(i11, i11) - std::complex<double>(0.5)) < 1e-12);
  CHECK(std::abs(anc.matrix()(0, 0)) < 1e-12);
}

TEST_CASE("adaptive simulate configs carry case tables") {
  json flip_matrix = json::array();
  flip_matrix.push_back(json::array({json::array({0.0, 1.0})}));
  json flip_case;
  flip_case["matrix"] = flip_matrix;
  json step0;
  step0["mode"] = 0;
  step0["cases"]["off"] = flip_case;
  step0["default"] = "identity";
  json step1;
  step1["mode"] = 1;
  step1["interferometer"] = "identity";

  json doc;
  doc["schema"] = "qdet-simulate/1";
  doc["total_cutoff"] = 2;
  doc["virtual_detector"] = {
      {"modes", 2},
      {"ancilla", "vacuum"},
      {"adaptive", json::array({step1, step0})},
      {"slots", json::array({{{"mode", 0}, {"detector", {{"click", {{"eta", 1.0}, {"n_max", 2}}}}}},
                             {{"mode", 1}, {"detector", {{"click", {{"eta", 1.0}, {"n_max", 2}}}}}}})}};
  const qdet::SimulateConfig config = qdet::parse_simulate_json(doc);
  CHECK_FALSE(config.detector.has_value());
  REQUIRE(config.adaptive_detector.has_value());
  const auto& policy = config.adaptive_detector->policy;
  CHECK(policy.mode_count == 2);
  // case table: after an "off" on mode 1, mode 0 gets the phase flip
  const qdet::InterferometerSpec flip = policy.choose(0, {"off"});
  CHECK(std::abs(flip.matrix()(0, 0) - std::complex<double>(0.0, 1.0)) < 1e-12);
  const qdet::InterferometerSpec fallback = policy.choose(0, {"on"});
  CHECK(std::abs(fallback.matrix()(0, 0) - std::complex<double>(1.0)) < 1e-12);
}

TEST_CASE("nogo configs parse with defaults and overrides") {
  json doc;
  doc["schema"] = "qdet-nogo/1";
  doc["trials"] = 7;
  doc["seed"] = 99;
  doc["pools"] = json::array(
      {{{"mode_count", 2}, {"etas", {0.5, 0.75}}, {"adaptive", true}},
       {{"mode_count", 1}}});
  const qdet::NogoConfig config = qdet::parse_nogo_json(doc);
  CHECK(config.trials == 7);
  CHECK(config.seed == 99);
  CHECK(config.total_cutoff == 4);  // default preserved
  REQUIRE(config.pools.size() == 2);
  CHECK(config.pools[0].adaptive);
  CHECK(config.pools[0].etas == std::vector<double>{0.5, 0.75});
  CHECK_FALSE(config.pools[1].adaptive);
  CHECK(config.pools[1].etas.empty());
}

TEST_CASE("nogo reports print stable CSV") {
  qdet::NogoReport report;
  report.slack = 3e-6;
  report.violation_count = 1;
  report.worst_margin = -0.25;
  report.trials.push_back(
      {0, {0.9, 0.5}, {0.4, 0.3}, {0.41, 0.31}, 0.09, false});
  report.trials.push_back({1, {0.5}, {0.74}, {0.75}, -0.25, true});
  const std::string csv = qdet::nogo_csv(report);
  const std::string expected =
      "trial,bounds_sorted,virtual_lower_sorted,virtual_upper_sorted,"
      "worst_margin,violation\n"
      "0,0.9;0.5,0.4;0.3,0.41;0.31,0.09,0\n"
      "1,0.5,0.74,0.75,-0.25,1\n";
  CHECK(csv == expected);

  const json summary = qdet::nogo_summary_json(report);
  CHECK(summary.at("schema") == "qdet-nogo-report/1");
  CHECK(summary.at("violation_count") == 1);
  CHECK(summary.at("violating_trials") == json::array({1}));
}

TEST_CASE("efficiency estimates serialize with their probe trace") {
  const auto est = qdet::estimate_efficiency(qdet::click_detector(0.5, 5));
  const json doc = qdet::estimate_to_json(est);
  CHECK(doc.at("schema") == "qdet-efficiency/1");
  CHECK(doc.at("lower") == est.lower);
  CHECK(doc.at("upper") == est.upper);
  CHECK(doc.at("feasibility_trace").size() == est.feasibility_trace.size());
  CHECK(doc.at("feasibility_trace")[0].contains("eta"));
  CHECK(doc.at("feasibility_trace")[0].contains("min_eigenvalue"));
}

}  // namespace
