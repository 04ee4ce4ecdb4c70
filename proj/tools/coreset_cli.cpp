// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

// coreset: build sparse weighted data summaries and evaluate their error
// guarantees from the command line.
//
// Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 numeric failure.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "coreset/bounds.hpp"
#include "coreset/csv.hpp"
#include "coreset/errors.hpp"
#include "coreset/experiments.hpp"
#include "coreset/geometry.hpp"
#include "coreset/kernels.hpp"

namespace {

using namespace coreset;

const std::map<std::string, Algorithm> kAlgorithms{
    {"fw", Algorithm::fw},
    {"is", Algorithm::is},
    {"unif", Algorithm::unif},
    {"rand", Algorithm::rand}};
const std::map<std::string, NormChoice> kNorms{
    {"fisher", NormChoice::fisher},
    {"l2", NormChoice::l2},
    {"exact-gaussian", NormChoice::exact_gaussian}};
const std::map<std::string, WeightingChoice> kWeightings{
    {"laplace", WeightingChoice::laplace},
    {"prior", WeightingChoice::prior},
    {"exact-posterior", WeightingChoice::exact_posterior}};
const std::map<std::string, ModelKind> kModels{
    {"gaussian", ModelKind::gaussian},
    {"logistic", ModelKind::logistic},
    {"poisson", ModelKind::poisson}};

void add_experiment_flags(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--algorithm", cfg.algorithm, "Construction: fw|is|unif|rand")
      ->transform(CLI::CheckedTransformer(kAlgorithms, CLI::ignore_case));
  cmd->add_option("--norm", cfg.norm,
                  "Inner product: fisher|l2|exact-gaussian")
      ->transform(CLI::CheckedTransformer(kNorms, CLI::ignore_case));
  cmd->add_option("--weighting", cfg.weighting,
                  "Sampling distribution for projections: "
                  "laplace|prior|exact-posterior")
      ->transform(CLI::CheckedTransformer(kWeightings, CLI::ignore_case));
  cmd->add_option("--model", cfg.model, "Model: gaussian|logistic|poisson")
      ->transform(CLI::CheckedTransformer(kModels, CLI::ignore_case));
  cmd->add_option("--M", cfg.coreset_sizes,
                  "Coreset sizes, comma separated, ascending")
      ->delimiter(',');
  cmd->add_option("--J", cfg.feature_count,
                  "Projection dimension (fisher/l2 norms)");
  cmd->add_option("--seed", cfg.seed, "Root seed; all draws derive from it");
  cmd->add_option("--trials", cfg.trials, "Independent repetitions");
  cmd->add_option("--input", cfg.input, "Input CSV (header row required)");
  cmd->add_option("--label-col", cfg.label_column,
                  "Header name of the label/count column");
  cmd->add_option("--output", cfg.output, "Output path");
  cmd->add_option("--delta", cfg.delta, "Confidence level for bounds");
}

int run(int argc, char** argv) {
  CLI::App app{
      "coreset: sparse weighted dataset summaries with error guarantees"};
  app.require_subcommand(1);

  // ---- construct ----------------------------------------------------------
  ExperimentConfig ccfg;
  CLI::App* construct = app.add_subcommand(
      "construct",
      "Build coreset weights from a CSV dataset.\n"
      "Writes one JSON weights file per (M, trial):\n"
      "  {\"n\": N, \"weights\": [{\"index\": i, \"weight\": w}, ...], "
      "\"metadata\": {...}}\n"
      "With several M values or trials, files get _M<m> / _t<k> suffixes.");
  add_experiment_flags(construct, ccfg);

  // ---- gauss-synth --------------------------------------------------------
  GaussSynthConfig gcfg;
  ExperimentConfig gflags;  // reuse shared flag storage for M/J/seed/trials
  gflags.coreset_sizes = gcfg.coreset_sizes;
  gflags.trials = gcfg.trials;
  gflags.norm = NormChoice::exact_gaussian;
  CLI::App* synth = app.add_subcommand(
      "gauss-synth",
      "Synthetic study on the Gaussian mean model: generates N points per\n"
      "trial, runs all four constructions (fw, is, unif, rand) across the\n"
      "M list, and writes a long-format CSV with the exact posterior KL:\n"
      "  trial,algorithm,M,J,KL,error,sigma,eta,eta_bar");
  synth->add_option("--N", gcfg.data_size, "Datapoints per trial");
  synth->add_option("--D", gcfg.data_dim, "Data dimension");
  synth->add_option("--M", gflags.coreset_sizes,
                    "Coreset sizes, comma separated, ascending")
      ->delimiter(',');
  synth->add_option("--J", gcfg.feature_count,
                    "Projection dimension (fisher/l2 norms)");
  synth->add_option("--norm", gflags.norm,
                    "Inner product: fisher|l2|exact-gaussian")
      ->transform(CLI::CheckedTransformer(kNorms, CLI::ignore_case));
  synth->add_option("--seed", gcfg.seed, "Root seed");
  synth->add_option("--trials", gflags.trials, "Number of trials");
  synth->add_option("--threads", gcfg.threads, "Worker threads (0 = auto)");
  std::string synth_output;
  synth->add_option("--output", synth_output, "Output CSV path")->required();

  // ---- diagnose -----------------------------------------------------------
  ExperimentConfig dcfg;
  CLI::App* diagnose = app.add_subcommand(
      "diagnose",
      "Compute the alignment constants (sigma, eta, eta_bar) of a dataset\n"
      "under the chosen model/norm/weighting; prints JSON.");
  add_experiment_flags(diagnose, dcfg);

  // ---- bounds -------------------------------------------------------------
  BoundParams bp;
  std::vector<std::size_t> bound_sizes{10};
  std::optional<double> nu_flag, xi2_flag;
  std::string bounds_output;
  CLI::App* bounds = app.add_subcommand(
      "bounds",
      "Evaluate the closed-form error guarantees for given sigma, eta,\n"
      "eta_bar. Emits CSV: M,is,is_simple,fw,fw_fixed,dist_is,dist_fw");
  bounds->add_option("--sigma", bp.sigma, "Scale constant")->required();
  bounds->add_option("--eta", bp.eta, "Alignment constant in [0,1]")
      ->required();
  bounds->add_option("--eta-bar", bp.eta_bar, "Pair diameter in [0,2]")
      ->required();
  bounds->add_option("--M", bound_sizes, "Coreset sizes, comma separated")
      ->delimiter(',');
  bounds->add_option("--delta", bp.delta, "Confidence level in (0,1)");
  bounds->add_option("--C", bp.nodes, "Node count for the distributed forms");
  bounds->add_option("--nu", nu_flag, "Hull width constant in [0,1)");
  bounds->add_option("--xi2", xi2_flag, "Sub-Gaussian projection constant");
  bounds->add_option("--output", bounds_output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (construct->parsed()) {
    const auto records = run_construct(ccfg);
    for (const auto& r : records) {
      std::cout << r.file.string() << "  M=" << r.budget << " trial=" << r.trial
                << " support=" << r.support << " error=" << r.error << '\n';
    }
    return 0;
  }

  if (synth->parsed()) {
    gcfg.coreset_sizes = gflags.coreset_sizes;
    gcfg.trials = gflags.trials;
    gcfg.norm = gflags.norm;
    const auto rows = run_gauss_synth(gcfg);
    write_gauss_synth_csv(rows, synth_output);
    std::cout << "wrote " << rows.size() << " rows to " << synth_output
              << '\n';
    return 0;
  }

  if (diagnose->parsed()) {
    validate(dcfg);
    if (dcfg.input.empty()) throw config_error("--input is required");
    const Dataset data = ingest_csv(dcfg.input, dcfg.label_column);
    const FeatureMatrix f =
        build_features(dcfg, data, Rng(dcfg.seed).derive(0));
    const AlignmentDiagnostics diag = compute_diagnostics(f);
    nlohmann::json doc;
    doc["n"] = f.rows();
    doc["J"] = f.cols();
    doc["sigma"] = diag.sigma;
    doc["eta"] = diag.eta;
    doc["eta_bar"] = diag.eta_bar;
    doc["eta_bar_exact"] = diag.eta_bar_exact;
    doc["kernel_backend"] =
        std::string(kernels::backend_name(kernels::active_backend()));
    if (dcfg.output.empty()) {
      std::cout << doc.dump(2) << '\n';
    } else {
      std::ofstream out(dcfg.output);
      if (!out)
        throw data_error("cannot open output file '" + dcfg.output.string() +
                         "'");
      out << doc.dump(2) << '\n';
    }
    return 0;
  }

  // bounds
  bp.nu = nu_flag;
  bp.xi2 = xi2_flag;
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!bounds_output.empty()) {
    file.open(bounds_output);
    if (!file)
      throw data_error("cannot open output file '" + bounds_output + "'");
    out = &file;
  }
  *out << "M,is,is_simple,fw,fw_fixed,dist_is,dist_fw\n";
  for (std::size_t m : bound_sizes) {
    bp.budget = m;
    *out << m << ',' << is_bound(bp) << ',' << is_bound_simple(bp) << ','
         << fw_bound(bp) << ',' << fw_bound_fixed_step(bp) << ','
         << distributed_is_bound(bp) << ',' << distributed_fw_bound(bp)
         << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const coreset::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const coreset::data_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const coreset::numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
