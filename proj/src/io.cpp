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

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdet/interferometer.hpp"

namespace qdet {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::runtime_error(message);
}

void require_schema(const json& doc, const std::string& expected) {
  if (!doc.is_object()) fail("document must be a JSON object");
  const std::string schema = doc.value("schema", "");
  if (schema != expected) {
    fail("unsupported schema '" + schema + "' (expected " + expected + ")");
  }
}

std::complex<double> complex_from_json(const json& value) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() &&
      value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  fail("complex entries must be numbers or [re, im] pairs");
}

json complex_to_json(std::complex<double> z) {
  return json::array({z.real(), z.imag()});
}

Eigen::MatrixXcd matrix_from_json(const json& value, const std::string& what) {
  if (!value.is_array() || value.empty()) {
    fail(what + ": expected a non-empty array of rows");
  }
  if (!value[0].is_array() || value[0].empty()) {
    fail(what + ": rows must be non-empty arrays");
  }
  const int rows = static_cast<int>(value.size());
  const int cols = static_cast<int>(value[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = value[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      fail(what + ": rows have inconsistent lengths");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[c]);
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd real_vector_from_json(const json& value, const std::string& what) {
  if (!value.is_array() || value.empty()) {
    fail(what + ": expected a non-empty array of numbers");
  }
  Eigen::VectorXd out(static_cast<int>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) fail(what + ": entries must be real numbers");
    out[static_cast<int>(i)] = value[i].get<double>();
  }
  return out;
}

json real_vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

InterferometerSpec interferometer_from_json(const json& value, int mode_count) {
  if (value.is_string()) {
    if (value.get<std::string>() == "identity") {
      return InterferometerSpec(Eigen::MatrixXcd::Identity(mode_count, mode_count));
    }
    fail("unknown interferometer shorthand '" + value.get<std::string>() + "'");
  }
  if (!value.is_object()) fail("interferometer must be \"identity\" or an object");
  if (value.contains("matrix")) {
    Eigen::MatrixXcd m = matrix_from_json(value["matrix"], "interferometer");
    if (m.rows() != mode_count || m.cols() != mode_count) {
      fail("interferometer matrix must be " + std::to_string(mode_count) + "x" +
           std::to_string(mode_count));
    }
    return InterferometerSpec(std::move(m));  // unitarity checked by the ctor
  }
  if (value.contains("beamsplitter")) {
    if (mode_count != 2) fail("the beamsplitter shorthand needs exactly 2 modes");
    const json& bs = value["beamsplitter"];
    if (!bs.is_object()) fail("beamsplitter needs 'theta' or 'transmissivity'");
    double theta = 0.0;
    if (bs.contains("theta")) {
      theta = bs["theta"].get<double>();
    } else if (bs.contains("transmissivity")) {
      const double t = bs["transmissivity"].get<double>();
      if (!(t >= 0.0 && t <= 1.0)) fail("transmissivity must be in [0, 1]");
      theta = std::atan2(std::sqrt(1.0 - t), std::sqrt(t));
    } else {
      fail("beamsplitter needs 'theta' or 'transmissivity'");
    }
    return InterferometerSpec(
        element_matrix(TwoModeElement::beamsplitter(theta, 0, 1), 2));
  }
  if (value.contains("elements")) {
    const json& list = value["elements"];
    if (!list.is_array()) fail("'elements' must be an array of mesh elements");
    Decomposition mesh;
    for (const json& e : list) {
      if (!e.is_object() || !e.contains("kind")) fail("mesh elements need a 'kind'");
      const std::string kind = e["kind"].get<std::string>();
      if (kind == "beamsplitter") {
        const json& modes = e.at("modes");
        if (!modes.is_array() || modes.size() != 2) {
          fail("beamsplitter element needs 'modes': [a, b]");
        }
        const int a = modes[0].get<int>();
        const int b = modes[1].get<int>();
        if (a < 0 || b < 0 || a >= mode_count || b >= mode_count || a == b) {
          fail("beamsplitter element modes out of range");
        }
        mesh.elements.push_back(
            TwoModeElement::beamsplitter(e.at("theta").get<double>(), a, b));
      } else if (kind == "phase") {
        const int a = e.at("mode").get<int>();
        if (a < 0 || a >= mode_count) fail("phase element mode out of range");
        mesh.elements.push_back(TwoModeElement::phase(e.at("phi").get<double>(), a));
      } else {
        fail("unknown mesh element kind '" + kind + "'");
      }
    }
    if (value.contains("output_phases")) {
      mesh.output_phases = real_vector_from_json(value["output_phases"], "output_phases");
      if (mesh.output_phases.size() != mode_count) {
        fail("output_phases must list one angle per mode");
      }
    } else {
      mesh.output_phases = Eigen::VectorXd::Zero(mode_count);
    }
    return InterferometerSpec(recompose(mesh, mode_count));
  }
  fail("interferometer needs 'matrix', 'beamsplitter' or 'elements'");
}

std::optional<HermitianOperator> ancilla_from_json(const json* value, int mode_count) {
  if (mode_count == 1) {
    if (value != nullptr &&
        !(value->is_string() && value->get<std::string>() == "vacuum")) {
      fail("a single-mode detector has no ancilla modes");
    }
    return std::nullopt;
  }
  const int anc_modes = mode_count - 1;
  if (value == nullptr ||
      (value->is_string() && value->get<std::string>() == "vacuum")) {
    return HermitianOperator(MultiModeBasis(anc_modes, 0),
                             Eigen::MatrixXcd::Identity(1, 1));
  }
  if (!value->is_object()) fail("ancilla must be \"vacuum\" or an object");
  if (value->contains("product_pure")) {
    const json& rows = (*value)["product_pure"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != anc_modes) {
      fail("product_pure needs one coefficient vector per ancilla mode (" +
           std::to_string(anc_modes) + ")");
    }
    std::vector<std::vector<std::complex<double>>> coeffs;
    int support = 0;
    for (const json& row : rows) {
      if (!row.is_array() || row.empty()) {
        fail("product_pure entries must be non-empty coefficient arrays");
      }
      std::vector<std::complex<double>> c;
      for (const json& x : row) c.push_back(complex_from_json(x));
      support += static_cast<int>(c.size()) - 1;
      coeffs.push_back(std::move(c));
    }
    if (support > 16) fail("ancilla photon support too large");
    const MultiModeBasis basis(anc_modes, support);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dimension());
    for (int i = 0; i < basis.dimension(); ++i) {
      const std::vector<int>& occ = basis.occupation(i);
      std::complex<double> amplitude = 1.0;
      for (int j = 0; j < anc_modes; ++j) {
        amplitude *= occ[j] < static_cast<int>(coeffs[j].size())
                         ? coeffs[j][occ[j]]
                         : std::complex<double>(0.0);
      }
      psi[i] = amplitude;
    }
    const double norm = psi.norm();
    if (!(norm > 0.0)) fail("ancilla coefficient vectors must not all be zero");
    psi /= norm;  // coefficients are normalized here, not required on disk
    return HermitianOperator(basis, psi * psi.adjoint());
  }
  if (value->contains("matrix")) {
    if (!value->contains("cutoff")) fail("a joint ancilla matrix needs 'cutoff'");
    const int cutoff = (*value)["cutoff"].get<int>();
    if (cutoff < 0 || cutoff > 16) fail("ancilla cutoff out of range");
    const MultiModeBasis basis(anc_modes, cutoff);
    Eigen::MatrixXcd m = matrix_from_json((*value)["matrix"], "ancilla");
    if (m.rows() != basis.dimension() || m.cols() != basis.dimension()) {
      fail("ancilla matrix must have dimension " + std::to_string(basis.dimension()) +
           " for " + std::to_string(anc_modes) + " modes at cutoff " +
           std::to_string(cutoff));
    }
    return HermitianOperator(basis, std::move(m));
  }
  fail("ancilla needs 'product_pure' or 'matrix'");
}

PhysicalDetectorSlot slot_from_json(const json& value, int total_cutoff,
                                    const std::string& base_dir) {
  if (!value.is_object() || !value.contains("mode")) fail("every slot needs a 'mode'");
  const int mode = value["mode"].get<int>();
  std::optional<double> nominal;
  if (value.contains("nominal_efficiency")) {
    nominal = value["nominal_efficiency"].get<double>();
  }
  if (!value.contains("detector")) {
    fail("slot for mode " + std::to_string(mode) + " needs a 'detector'");
  }
  const json& det = value["detector"];
  if (det.is_string()) {
    if (det.get<std::string>() == "discard") {
      PhysicalDetectorSlot slot = discard_slot(mode, total_cutoff);
      slot.nominal_efficiency = nominal;
      return slot;
    }
    fail("unknown detector shorthand '" + det.get<std::string>() + "'");
  }
  if (!det.is_object()) fail("slot detector must be a string or an object");
  if (det.contains("click")) {
    const json& c = det["click"];
    return detector_slot(
        mode, click_detector(c.at("eta").get<double>(), c.value("n_max", total_cutoff)),
        nominal);
  }
  if (det.contains("pnr")) {
    const json& c = det["pnr"];
    return detector_slot(
        mode, pnr_detector(c.at("eta").get<double>(), c.value("n_max", total_cutoff)),
        nominal);
  }
  if (det.contains("file")) {
    std::filesystem::path path(det["file"].get<std::string>());
    if (!base_dir.empty() && path.is_relative()) {
      path = std::filesystem::path(base_dir) / path;
    }
    return detector_slot(mode, load_povm_file(path.string()).dense(), nominal);
  }
  fail("slot detector must be \"discard\" or contain 'click', 'pnr' or 'file'");
}

struct AdaptiveTable {
  std::map<int, std::map<std::string, InterferometerSpec>> cases;
  std::map<int, InterferometerSpec> fixed;
};

AdaptivePolicy policy_from_json(const json& value, int mode_count) {
  if (!value.is_array()) fail("'adaptive' must be an array of per-step entries");
  auto table = std::make_shared<AdaptiveTable>();
  std::set<int> seen;
  for (const json& step : value) {
    if (!step.is_object() || !step.contains("mode")) fail("adaptive steps need a 'mode'");
    const int k = step["mode"].get<int>();
    if (k < 0 || k >= mode_count) fail("adaptive step mode out of range");
    if (!seen.insert(k).second) {
      fail("duplicate adaptive entry for mode " + std::to_string(k));
    }
    const bool has_fixed = step.contains("interferometer");
    const bool has_cases = step.contains("cases") || step.contains("default");
    if (has_fixed && has_cases) {
      fail("adaptive step: give 'interferometer' or 'cases'/'default', not both");
    }
    if (has_fixed) {
      table->fixed.emplace(k, interferometer_from_json(step["interferometer"], k + 1));
      continue;
    }
    if (step.contains("cases")) {
      const json& cases = step["cases"];
      if (!cases.is_object()) fail("adaptive 'cases' must map histories to interferometers");
      for (auto it = cases.begin(); it != cases.end(); ++it) {
        table->cases[k].emplace(it.key(), interferometer_from_json(it.value(), k + 1));
      }
    }
    if (step.contains("default")) {
      table->fixed.emplace(k, interferometer_from_json(step["default"], k + 1));
    }
  }
  // Histories arrive in measurement order (mode M-1 first) and are keyed by
  // their pipe-joined form; steps without an entry fall back to identity.
  return AdaptivePolicy{
      mode_count, [table](int k, const std::vector<std::string>& history) {
        const auto with_cases = table->cases.find(k);
        if (with_cases != table->cases.end()) {
          const auto hit = with_cases->second.find(joint_label(history));
          if (hit != with_cases->second.end()) return hit->second;
        }
        const auto fixed = table->fixed.find(k);
        if (fixed != table->fixed.end()) return fixed->second;
        if (with_cases != table->cases.end()) {
          throw std::runtime_error("adaptive policy: no case for history '" +
                                   joint_label(history) + "' at mode " +
                                   std::to_string(k) + " and no default");
        }
        return InterferometerSpec(Eigen::MatrixXcd::Identity(k + 1, k + 1));
      }};
}

std::string format_number(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += format_number(values[i]);
  }
  return out;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  out.flush();
  if (!out) fail("failed while writing '" + path + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) fail("failed while writing '" + path + "'");
}

LoadedPovm parse_povm_json(const json& doc) {
  require_schema(doc, "qdet-povm/1");
  if (!doc.contains("cutoff") || !doc["cutoff"].is_number_integer()) {
    fail("povm document needs an integer 'cutoff'");
  }
  const int n_max = doc["cutoff"].get<int>();
  if (n_max < 0) fail("cutoff must be non-negative");
  if (!doc.contains("outcomes")) fail("povm document needs 'outcomes'");
  const json& outcomes = doc["outcomes"];
  if (!outcomes.is_array() || outcomes.empty()) {
    fail("'outcomes' must be a non-empty array");
  }
  json metadata = doc.value("metadata", json::object());

  bool any_dense = false;
  for (const json& o : outcomes) {
    if (!o.is_object() || !o.contains("label") || !o["label"].is_string()) {
      fail("every outcome needs a string 'label'");
    }
    const bool has_diagonal = o.contains("diagonal");
    const bool has_matrix = o.contains("matrix");
    if (has_diagonal == has_matrix) {
      fail("outcome '" + o["label"].get<std::string>() +
           "': give exactly one of 'diagonal' or 'matrix'");
    }
    any_dense = any_dense || has_matrix;
  }

  const int dim = n_max + 1;
  if (!any_dense) {
    std::vector<DiagonalPovm::Outcome> outs;
    for (const json& o : outcomes) {
      const std::string label = o["label"].get<std::string>();
      Eigen::VectorXd diagonal =
          real_vector_from_json(o["diagonal"], "outcome '" + label + "'");
      if (diagonal.size() != dim) {
        fail("outcome '" + label + "': diagonal has length " +
             std::to_string(diagonal.size()) + " but the cutoff needs " +
             std::to_string(dim));
      }
      outs.push_back({label, std::move(diagonal)});
    }
    return {DiagonalPovm(SingleModeCutoff{n_max}, std::move(outs)),
            std::move(metadata)};
  }

  const MultiModeBasis basis(1, n_max);
  std::vector<Povm::Outcome> outs;
  for (const json& o : outcomes) {
    const std::string label = o["label"].get<std::string>();
    Eigen::MatrixXcd m;
    if (o.contains("diagonal")) {
      const Eigen::VectorXd diagonal =
          real_vector_from_json(o["diagonal"], "outcome '" + label + "'");
      if (diagonal.size() != dim) {
        fail("outcome '" + label + "': diagonal has length " +
             std::to_string(diagonal.size()) + " but the cutoff needs " +
             std::to_string(dim));
      }
      m = Eigen::MatrixXcd::Zero(dim, dim);
      m.diagonal() = diagonal.cast<std::complex<double>>();
    } else {
      m = matrix_from_json(o["matrix"], "outcome '" + label + "'");
      if (m.rows() != dim || m.cols() != dim) {
        fail("outcome '" + label + "': matrix must be " + std::to_string(dim) +
             "x" + std::to_string(dim));
      }
    }
    try {
      outs.push_back({label, HermitianOperator(basis, std::move(m))});
    } catch (const std::exception& e) {
      fail("outcome '" + label + "': " + e.what());
    }
  }
  return {Povm(std::move(outs)), std::move(metadata)};
}

LoadedPovm load_povm_file(const std::string& path) {
  try {
    return parse_povm_json(load_json_file(path));
  } catch (const std::exception& e) {
    const std::string what = e.what();
    if (what.find(path) != std::string::npos) throw;
    fail("'" + path + "': " + what);
  }
}

json povm_to_json(const DiagonalPovm& povm, json metadata) {
  json outs = json::array();
  for (const DiagonalPovm::Outcome& o : povm.outcomes()) {
    outs.push_back({{"label", o.label}, {"diagonal", real_vector_to_json(o.diagonal)}});
  }
  json doc;
  doc["schema"] = "qdet-povm/1";
  doc["cutoff"] = povm.cutoff().n_max;
  doc["outcomes"] = std::move(outs);
  if (!metadata.empty()) doc["metadata"] = std::move(metadata);
  return doc;
}

json povm_to_json(const Povm& povm, json metadata) {
  if (povm.basis().mode_count() != 1) {
    throw std::invalid_argument("povm_to_json: single-mode POVM required");
  }
  json outs = json::array();
  for (const Povm::Outcome& o : povm.outcomes()) {
    outs.push_back({{"label", o.label}, {"matrix", matrix_to_json(o.element.matrix())}});
  }
  json doc;
  doc["schema"] = "qdet-povm/1";
  doc["cutoff"] = povm.basis().total_cutoff();
  doc["outcomes"] = std::move(outs);
  if (!metadata.empty()) doc["metadata"] = std::move(metadata);
  return doc;
}

SimulateConfig parse_simulate_json(const json& doc, const std::string& base_dir) {
  require_schema(doc, "qdet-simulate/1");
  SimulateConfig config;
  config.total_cutoff = doc.value("total_cutoff", config.total_cutoff);
  if (config.total_cutoff < 1 || config.total_cutoff > 16) {
    fail("total_cutoff out of range [1, 16]");
  }
  config.bisection_tol = doc.value("bisection_tol", config.bisection_tol);
  config.pos_tol = doc.value("pos_tol", config.pos_tol);
  if (!(config.bisection_tol > 0.0 && config.pos_tol > 0.0)) {
    fail("tolerances must be positive");
  }
  if (!doc.contains("virtual_detector")) fail("config needs 'virtual_detector'");
  const json& vd = doc["virtual_detector"];
  if (!vd.is_object() || !vd.contains("modes")) fail("'virtual_detector' needs 'modes'");
  const int modes = vd["modes"].get<int>();
  if (modes < 1 || modes > 6) fail("modes out of range [1, 6]");

  std::optional<HermitianOperator> ancilla =
      ancilla_from_json(vd.contains("ancilla") ? &vd["ancilla"] : nullptr, modes);
  if (!vd.contains("slots") || !vd["slots"].is_array() || vd["slots"].empty()) {
    fail("'virtual_detector' needs a non-empty 'slots' array");
  }
  std::vector<PhysicalDetectorSlot> slots;
  for (const json& s : vd["slots"]) {
    slots.push_back(slot_from_json(s, config.total_cutoff, base_dir));
  }
  std::map<std::string, std::string> grouping;
  if (vd.contains("grouping")) {
    const json& g = vd["grouping"];
    if (!g.is_object()) fail("'grouping' must map joint labels to virtual labels");
    for (auto it = g.begin(); it != g.end(); ++it) {
      if (!it.value().is_string()) fail("'grouping' values must be labels");
      grouping[it.key()] = it.value().get<std::string>();
    }
  }

  if (vd.contains("adaptive")) {
    if (vd.contains("interferometer")) {
      fail("give 'interferometer' or 'adaptive', not both");
    }
    config.adaptive_detector =
        AdaptiveDetectorSpec{policy_from_json(vd["adaptive"], modes),
                             std::move(ancilla), std::move(slots), std::move(grouping)};
  } else {
    if (!vd.contains("interferometer")) {
      fail("'virtual_detector' needs 'interferometer' (or 'adaptive')");
    }
    config.detector =
        VirtualDetectorSpec{interferometer_from_json(vd["interferometer"], modes),
                            std::move(ancilla), std::move(slots), std::move(grouping)};
  }
  return config;
}

SimulateConfig load_simulate_config(const std::string& path) {
  const json doc = load_json_file(path);
  try {
    return parse_simulate_json(doc, std::filesystem::path(path).parent_path().string());
  } catch (const std::exception& e) {
    const std::string what = e.what();
    if (what.find(path) != std::string::npos) throw;
    fail("'" + path + "': " + what);
  }
}

NogoConfig parse_nogo_json(const json& doc) {
  require_schema(doc, "qdet-nogo/1");
  NogoConfig config;
  config.trials = doc.value("trials", config.trials);
  config.seed = doc.value("seed", config.seed);
  config.total_cutoff = doc.value("total_cutoff", config.total_cutoff);
  config.ancilla_photons = doc.value("ancilla_photons", config.ancilla_photons);
  config.partition_cells = doc.value("partition_cells", config.partition_cells);
  config.bisection_tol = doc.value("bisection_tol", config.bisection_tol);
  config.pos_tol = doc.value("pos_tol", config.pos_tol);
  if (config.trials < 1) fail("trials must be at least 1");
  if (config.total_cutoff < 1 || config.total_cutoff > 16) {
    fail("total_cutoff out of range [1, 16]");
  }
  if (!(config.bisection_tol > 0.0 && config.pos_tol > 0.0)) {
    fail("tolerances must be positive");
  }
  if (!doc.contains("pools") || !doc["pools"].is_array() || doc["pools"].empty()) {
    fail("nogo config needs a non-empty 'pools' array");
  }
  for (const json& p : doc["pools"]) {
    if (!p.is_object()) fail("pool entries must be objects");
    NogoPool pool;
    pool.mode_count = p.value("mode_count", pool.mode_count);
    pool.etas = p.value("etas", pool.etas);
    pool.nominal_etas = p.value("nominal_etas", pool.nominal_etas);
    pool.eta_min = p.value("eta_min", pool.eta_min);
    pool.eta_max = p.value("eta_max", pool.eta_max);
    pool.adaptive = p.value("adaptive", pool.adaptive);
    pool.identity_interferometer =
        p.value("identity_interferometer", pool.identity_interferometer);
    pool.ideal_click = p.value("ideal_click", pool.ideal_click);
    config.pools.push_back(std::move(pool));
  }
  return config;
}

NogoConfig load_nogo_config(const std::string& path) {
  const json doc = load_json_file(path);
  try {
    return parse_nogo_json(doc);
  } catch (const std::exception& e) {
    const std::string what = e.what();
    if (what.find(path) != std::string::npos) throw;
    fail("'" + path + "': " + what);
  }
}

std::string nogo_csv(const NogoReport& report) {
  std::string out =
      "trial,bounds_sorted,virtual_lower_sorted,virtual_upper_sorted,"
      "worst_margin,violation\n";
  for (const NogoTrial& trial : report.trials) {
    out += std::to_string(trial.trial);
    out += ',';
    out += join_numbers(trial.bounds_sorted);
    out += ',';
    out += join_numbers(trial.virtual_lower_sorted);
    out += ',';
    out += join_numbers(trial.virtual_upper_sorted);
    out += ',';
    out += format_number(trial.worst_margin);
    out += ',';
    out += trial.violation ? '1' : '0';
    out += '\n';
  }
  return out;
}

json nogo_summary_json(const NogoReport& report) {
  json violating = json::array();
  for (const NogoTrial& trial : report.trials) {
    if (trial.violation) violating.push_back(trial.trial);
  }
  return json{{"schema", "qdet-nogo-report/1"},
              {"trials", static_cast<int>(report.trials.size())},
              {"slack", report.slack},
              {"violation_count", report.violation_count},
              {"worst_margin", report.worst_margin},
              {"violating_trials", std::move(violating)}};
}

json estimate_to_json(const EfficiencyEstimate& estimate) {
  json trace = json::array();
  for (const auto& [eta, min_eig] : estimate.feasibility_trace) {
    trace.push_back(json{{"eta", eta}, {"min_eigenvalue", min_eig}});
  }
  return json{{"schema", "qdet-efficiency/1"},
              {"lower", estimate.lower},
              {"upper", estimate.upper},
              {"cutoff", estimate.cutoff.n_max},
              {"bisection_tol", estimate.bisection_tol},
              {"feasibility_trace", std::move(trace)}};
}

}  // namespace qdet
