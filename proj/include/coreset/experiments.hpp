// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "coreset/dataset.hpp"
#include "coreset/feature_matrix.hpp"
#include "coreset/geometry.hpp"
#include "coreset/models.hpp"
#include "coreset/rng.hpp"

namespace coreset {

enum class Algorithm { fw, is, unif, rand };
enum class NormChoice { fisher, l2, exact_gaussian };
enum class WeightingChoice { laplace, prior, exact_posterior };
enum class ModelKind { gaussian, logistic, poisson };

std::string to_string(Algorithm a);
std::string to_string(NormChoice n);
std::string to_string(WeightingChoice w);
std::string to_string(ModelKind m);

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::fw;
  NormChoice norm = NormChoice::fisher;
  WeightingChoice weighting = WeightingChoice::laplace;
  std::vector<std::size_t> coreset_sizes;  // ascending, nonempty
  std::size_t feature_count = 500;         // J
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  ModelKind model = ModelKind::gaussian;
  std::filesystem::path input;
  std::string label_column;
  std::filesystem::path output;
  double delta = 0.01;
};

// Throws config_error (listing the valid combinations) when the
// model/norm/weighting/algorithm choice is unsupported.
void validate(const ExperimentConfig& cfg);

std::unique_ptr<ModelAdapter> make_adapter(ModelKind kind, Dataset data);

// The projection / embedding used by construct and diagnose. The rng must
// be derived deterministically by the caller (one stream per trial).
FeatureMatrix build_features(const ExperimentConfig& cfg, const Dataset& data,
                             Rng rng);

struct ConstructRecord {
  std::filesystem::path file;
  std::size_t budget = 0;
  std::size_t trial = 0;
  std::size_t support = 0;
  double error = 0.0;
};

// Runs the configured construction for every (M, trial) pair and writes one
// weights JSON file per pair. Output files carry _M<budget> and _t<trial>
// suffixes when more than one budget or trial is requested.
std::vector<ConstructRecord> run_construct(const ExperimentConfig& cfg);

// Weights artifact io: {"n": N, "weights": [{"index": i, "weight": w}, ...],
// "metadata": {...}}.
void write_weights_json(const std::filesystem::path& path,
                        const WeightVector& w,
                        const std::string& metadata_json);
WeightVector read_weights_json(const std::filesystem::path& path);

struct GaussSynthConfig {
  std::size_t data_size = 1000;  // N
  std::size_t data_dim = 2;      // D
  std::vector<std::size_t> coreset_sizes{5, 50, 500};
  std::size_t trials = 100;
  NormChoice norm = NormChoice::exact_gaussian;
  std::size_t feature_count = 500;  // J, projected norms only
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0 = hardware concurrency
};

struct GaussSynthRow {
  std::size_t trial;
  Algorithm algorithm;
  std::size_t budget;
  std::size_t feature_count;
  double kl;
  double error;
  double sigma;
  double eta;
  double eta_bar;
};

// Synthetic study: draws a mean from the prior and a Gaussian dataset
// around it, runs all four constructions across the budget list, and
// scores each result with the exact posterior KL divergence. Trials run in
// a worker pool; every trial derives its own generator from (seed, trial),
// so the results do not depend on scheduling.
std::vector<GaussSynthRow> run_gauss_synth(const GaussSynthConfig& cfg);

// Long-format CSV: trial,algorithm,M,J,KL,error,sigma,eta,eta_bar
void write_gauss_synth_csv(const std::vector<GaussSynthRow>& rows,
                           const std::filesystem::path& path);

}  // namespace coreset
