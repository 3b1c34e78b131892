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

// qdet command line. Exit codes: 0 success/pass, 1 assertion-style failure
// (validation failed, no-go bound violated), 2 input or parse error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "qdet/efficiency.hpp"
#include "qdet/io.hpp"
#include "qdet/loss.hpp"
#include "qdet/nogo.hpp"
#include "qdet/povm.hpp"
#include "qdet/virtual_detector.hpp"

namespace {

std::string fmt(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

void emit_json(const nlohmann::json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    qdet::write_json_file(out_path, doc);
  }
}

int cmd_validate(const std::string& path) {
  const qdet::LoadedPovm loaded = qdet::load_povm_file(path);
  const qdet::ValidationReport report =
      loaded.is_diagonal() ? qdet::validate(std::get<qdet::DiagonalPovm>(loaded.povm))
                           : qdet::validate(std::get<qdet::Povm>(loaded.povm));
  for (const auto& element : report.elements) {
    std::cout << "element '" << element.label << "': min eigenvalue "
              << fmt(element.min_eigenvalue) << "\n";
  }
  std::cout << "completeness residual: " << fmt(report.completeness_residual) << "\n";
  std::cout << (report.pass() ? "PASS" : "FAIL") << "\n";
  return report.pass() ? 0 : 1;
}

int cmd_loss(const std::string& path, double eta, bool invert,
             const std::string& out_path) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::runtime_error("--eta must be in (0, 1]");
  }
  const qdet::LoadedPovm loaded = qdet::load_povm_file(path);
  nlohmann::json metadata =
      loaded.metadata.is_object() ? loaded.metadata : nlohmann::json::object();
  metadata[invert ? "inverted_eta" : "applied_eta"] = eta;
  if (invert) metadata["unphysical"] = true;  // formal preimage, may fail positivity

  nlohmann::json doc;
  if (loaded.is_diagonal()) {
    const auto& povm = std::get<qdet::DiagonalPovm>(loaded.povm);
    doc = qdet::povm_to_json(invert ? qdet::invert_loss(povm, eta)
                                    : qdet::apply_loss_to_diagonal(povm, eta),
                             std::move(metadata));
  } else {
    const auto& povm = std::get<qdet::Povm>(loaded.povm);
    doc = qdet::povm_to_json(invert ? qdet::invert_loss(povm, eta)
                                    : qdet::apply_loss_to_povm(povm, eta),
                             std::move(metadata));
  }
  emit_json(doc, out_path);
  return 0;
}

int cmd_eff(const std::string& path, double tol, double pos_tol, bool sweep,
            const std::string& out_path) {
  const qdet::LoadedPovm loaded = qdet::load_povm_file(path);
  const int n_max = loaded.is_diagonal()
                        ? std::get<qdet::DiagonalPovm>(loaded.povm).cutoff().n_max
                        : std::get<qdet::Povm>(loaded.povm).basis().total_cutoff();
  const auto estimate_at = [&](int cutoff) {
    return loaded.is_diagonal()
               ? qdet::estimate_efficiency(
                     qdet::truncate_povm(std::get<qdet::DiagonalPovm>(loaded.povm), cutoff),
                     tol, pos_tol)
               : qdet::estimate_efficiency(
                     qdet::truncate_povm(std::get<qdet::Povm>(loaded.povm), cutoff),
                     tol, pos_tol);
  };

  if (sweep) {
    nlohmann::json rows = nlohmann::json::array();
    for (int cutoff = 1; cutoff <= n_max; ++cutoff) {
      const qdet::EfficiencyEstimate estimate = estimate_at(cutoff);
      std::cout << "cutoff " << cutoff << ": efficiency in [" << fmt(estimate.lower)
                << ", " << fmt(estimate.upper) << "]\n";
      rows.push_back({{"cutoff", cutoff},
                      {"lower", estimate.lower},
                      {"upper", estimate.upper}});
    }
    if (!out_path.empty()) {
      qdet::write_json_file(
          out_path,
          nlohmann::json{{"schema", "qdet-efficiency-sweep/1"}, {"sweep", rows}});
    }
    return 0;
  }

  const qdet::EfficiencyEstimate estimate = estimate_at(n_max);
  std::cout << "efficiency in [" << fmt(estimate.lower) << ", " << fmt(estimate.upper)
            << "] (cutoff " << n_max << ", tol " << fmt(tol) << ")\n";
  if (!out_path.empty()) {
    qdet::write_json_file(out_path, qdet::estimate_to_json(estimate));
  }
  return 0;
}

int cmd_simulate(const std::string& path, std::optional<int> cutoff,
                 std::optional<double> tol, std::optional<double> pos_tol,
                 const std::string& povm_out, const std::string& out_path) {
  nlohmann::json doc = qdet::load_json_file(path);
  if (doc.is_object()) {  // flags override file values
    if (cutoff) doc["total_cutoff"] = *cutoff;
    if (tol) doc["bisection_tol"] = *tol;
    if (pos_tol) doc["pos_tol"] = *pos_tol;
  }
  const qdet::SimulateConfig config = qdet::parse_simulate_json(
      doc, std::filesystem::path(path).parent_path().string());

  const qdet::Povm effective =
      config.detector
          ? qdet::effective_povm(*config.detector, config.total_cutoff)
          : qdet::effective_povm_adaptive(*config.adaptive_detector, config.total_cutoff);

  std::cout << "effective POVM: " << effective.outcome_count() << " outcomes, cutoff "
            << effective.basis().total_cutoff() << "\n";
  const qdet::ValidationReport report = qdet::validate(effective);
  if (!report.pass()) {
    for (const auto& element : report.elements) {
      std::cout << "element '" << element.label << "': min eigenvalue "
                << fmt(element.min_eigenvalue) << "\n";
    }
  }
  std::cout << "validation: " << (report.pass() ? "PASS" : "FAIL")
            << " (completeness residual " << fmt(report.completeness_residual) << ")\n";

  const qdet::EfficiencyEstimate estimate =
      qdet::estimate_efficiency(effective, config.bisection_tol, config.pos_tol);
  std::cout << "efficiency in [" << fmt(estimate.lower) << ", " << fmt(estimate.upper)
            << "]\n";

  if (!povm_out.empty()) {
    qdet::write_json_file(povm_out,
                          qdet::povm_to_json(effective,
                                             {{"efficiency_lower", estimate.lower},
                                              {"efficiency_upper", estimate.upper}}));
  }
  if (!out_path.empty()) {
    qdet::write_json_file(out_path, qdet::estimate_to_json(estimate));
  }
  return report.pass() ? 0 : 1;
}

int cmd_nogo(const std::string& path, bool sensitivity, std::optional<int> trials,
             std::optional<std::uint64_t> seed, std::optional<int> cutoff,
             const std::string& csv_path, const std::string& summary_path) {
  qdet::NogoConfig config;
  if (sensitivity) {
    if (!path.empty()) {
      throw std::runtime_error("give a config file or --sensitivity, not both");
    }
    config = qdet::nogo_sensitivity_config();
    if (trials) config.trials = *trials;
    if (seed) config.seed = *seed;
    if (cutoff) config.total_cutoff = *cutoff;
  } else {
    if (path.empty()) {
      throw std::runtime_error("nogo needs a config file or --sensitivity");
    }
    nlohmann::json doc = qdet::load_json_file(path);
    if (doc.is_object()) {  // flags override file values
      if (trials) doc["trials"] = *trials;
      if (seed) doc["seed"] = *seed;
      if (cutoff) doc["total_cutoff"] = *cutoff;
    }
    config = qdet::parse_nogo_json(doc);
  }

  const qdet::NogoReport report = qdet::run_nogo(config);
  if (!csv_path.empty()) {
    qdet::write_text_file(csv_path, qdet::nogo_csv(report));
  }
  const nlohmann::json summary = qdet::nogo_summary_json(report);
  if (!summary_path.empty()) {
    qdet::write_json_file(summary_path, summary);
  }
  std::cout << summary.dump(2) << "\n";
  return report.violation_count == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qdet: detector POVMs, loss maps, efficiency estimates and "
      "linear-optical virtual detectors"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand(
      "validate", "Check positivity and completeness of a POVM file");
  std::string validate_path;
  validate->add_option("povm", validate_path, "POVM JSON file")->required();

  auto* loss = app.add_subcommand(
      "loss", "Push a POVM through the transmissivity-eta loss map");
  std::string loss_path, loss_out;
  double loss_eta = 1.0;
  bool loss_invert = false;
  loss->add_option("povm", loss_path, "POVM JSON file")->required();
  loss->add_option("--eta", loss_eta, "transmissivity in (0, 1]")->required();
  loss->add_flag("--invert", loss_invert,
                 "apply the formal inverse of the loss map instead");
  loss->add_option("--out", loss_out, "output POVM file (stdout when omitted)");

  auto* eff = app.add_subcommand(
      "eff", "Estimate the generalized efficiency of a POVM");
  std::string eff_path, eff_out;
  double eff_tol = qdet::kDefaultBisectionTol;
  double eff_pos_tol = qdet::kDefaultPositivityTol;
  bool eff_sweep = false;
  eff->add_option("povm", eff_path, "POVM JSON file")->required();
  eff->add_option("--tol", eff_tol, "bisection tolerance");
  eff->add_option("--pos-tol", eff_pos_tol, "eigenvalue tolerance for feasibility");
  eff->add_flag("--cutoff-sweep", eff_sweep,
                "estimate at every cutoff up to the file's, to exhibit convergence");
  eff->add_option("--out", eff_out, "write the estimate as JSON");

  auto* simulate = app.add_subcommand(
      "simulate", "Compute the effective POVM of a virtual detector");
  std::string sim_path, sim_povm_out, sim_out;
  std::optional<int> sim_cutoff;
  std::optional<double> sim_tol, sim_pos_tol;
  simulate->add_option("config", sim_path, "experiment config JSON")->required();
  simulate->add_option("--cutoff", sim_cutoff, "override total_cutoff");
  simulate->add_option("--tol", sim_tol, "override bisection_tol");
  simulate->add_option("--pos-tol", sim_pos_tol, "override pos_tol");
  simulate->add_option("--povm-out", sim_povm_out, "write the effective POVM");
  simulate->add_option("--out", sim_out, "write the efficiency estimate");

  auto* nogo = app.add_subcommand(
      "nogo", "Monte-Carlo check that virtual detectors never beat their parts");
  std::string nogo_path, nogo_csv_path, nogo_summary_path;
  bool nogo_sensitivity = false;
  std::optional<int> nogo_trials, nogo_cutoff;
  std::optional<std::uint64_t> nogo_seed;
  nogo->add_option("config", nogo_path, "experiment config JSON");
  nogo->add_flag("--sensitivity", nogo_sensitivity,
                 "run the canned mislabeled-pool check (expected to violate)");
  nogo->add_option("--trials", nogo_trials, "override trial count");
  nogo->add_option("--seed", nogo_seed, "override seed");
  nogo->add_option("--cutoff", nogo_cutoff, "override total_cutoff");
  nogo->add_option("--csv", nogo_csv_path, "write the per-trial table");
  nogo->add_option("--summary", nogo_summary_path, "write the JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_path);
    if (loss->parsed()) return cmd_loss(loss_path, loss_eta, loss_invert, loss_out);
    if (eff->parsed()) return cmd_eff(eff_path, eff_tol, eff_pos_tol, eff_sweep, eff_out);
    if (simulate->parsed()) {
      return cmd_simulate(sim_path, sim_cutoff, sim_tol, sim_pos_tol, sim_povm_out,
                          sim_out);
    }
    if (nogo->parsed()) {
      return cmd_nogo(nogo_path, nogo_sensitivity, nogo_trials, nogo_seed, nogo_cutoff,
                      nogo_csv_path, nogo_summary_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
