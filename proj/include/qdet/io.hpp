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

#ifndef QDET_IO_HPP_
#define QDET_IO_HPP_

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "qdet/efficiency.hpp"
#include "qdet/nogo.hpp"
#include "qdet/povm.hpp"
#include "qdet/virtual_detector.hpp"

// JSON file formats. Complex numbers are [re, im] pairs; diagonal POVMs stay
// vectors so click/PNR files remain human-readable. Loaders validate shape
// and report what is wrong; they never repair a document silently.

namespace qdet {

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);
void write_text_file(const std::string& path, const std::string& text);

/// Parsed "qdet-povm/1" document. Files whose outcomes are all "diagonal"
/// load as DiagonalPovm; any "matrix" outcome promotes the whole file to a
/// dense Povm. `metadata` is carried through verbatim.
struct LoadedPovm {
  std::variant<DiagonalPovm, Povm> povm;
  nlohmann::json metadata;

  bool is_diagonal() const { return std::holds_alternative<DiagonalPovm>(povm); }
  Povm dense() const {
    return is_diagonal() ? std::get<DiagonalPovm>(povm).to_dense()
                         : std::get<Povm>(povm);
  }
};

LoadedPovm parse_povm_json(const nlohmann::json& doc);
LoadedPovm load_povm_file(const std::string& path);

nlohmann::json povm_to_json(const DiagonalPovm& povm,
                            nlohmann::json metadata = nlohmann::json::object());
nlohmann::json povm_to_json(const Povm& povm,
                            nlohmann::json metadata = nlohmann::json::object());

/// Parsed "qdet-simulate/1" document: one virtual detector, plain or
/// adaptive, plus cutoff and tolerances. Exactly one of the two detector
/// fields is set. Slot POVM files referenced by relative path resolve
/// against the config file's directory.
struct SimulateConfig {
  int total_cutoff = 4;
  double bisection_tol = kDefaultBisectionTol;
  double pos_tol = kDefaultPositivityTol;
  std::optional<VirtualDetectorSpec> detector;
  std::optional<AdaptiveDetectorSpec> adaptive_detector;
};

SimulateConfig parse_simulate_json(const nlohmann::json& doc,
                                   const std::string& base_dir = "");
SimulateConfig load_simulate_config(const std::string& path);

/// Parsed "qdet-nogo/1" document; missing keys keep NogoConfig defaults.
NogoConfig parse_nogo_json(const nlohmann::json& doc);
NogoConfig load_nogo_config(const std::string& path);

/// One CSV row per trial. Lists are ';'-joined, numbers printed with %.12g,
/// so a rerun with the same config is byte-identical.
std::string nogo_csv(const NogoReport& report);
nlohmann::json nogo_summary_json(const NogoReport& report);

nlohmann::json estimate_to_json(const EfficiencyEstimate& estimate);

}  // namespace qdet

#endif  // QDET_IO_HPP_
