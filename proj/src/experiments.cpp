// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/experiments.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "coreset/constructors.hpp"
#include "coreset/csv.hpp"
#include "coreset/errors.hpp"
#include "coreset/linalg.hpp"
#include "coreset/projection.hpp"

namespace coreset {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::fw: return "fw";
    case Algorithm::is: return "is";
    case Algorithm::unif: return "unif";
    case Algorithm::rand: return "rand";
  }
  return "?";
}

std::string to_string(NormChoice n) {
  switch (n) {
    case NormChoice::fisher: return "fisher";
    case NormChoice::l2: return "l2";
    case NormChoice::exact_gaussian: return "exact-gaussian";
  }
  return "?";
}

std::string to_string(WeightingChoice w) {
  switch (w) {
    case WeightingChoice::laplace: return "laplace";
    case WeightingChoice::prior: return "prior";
    case WeightingChoice::exact_posterior: return "exact-posterior";
  }
  return "?";
}

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::gaussian: return "gaussian";
    case ModelKind::logistic: return "logistic";
    case ModelKind::poisson: return "poisson";
  }
  return "?";
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.coreset_sizes.empty())
    throw config_error("at least one coreset size (--M) is required");
  for (std::size_t i = 0; i < cfg.coreset_sizes.size(); ++i) {
    if (cfg.coreset_sizes[i] == 0)
      throw config_error("coreset sizes must be at least 1");
    if (i > 0 && cfg.coreset_sizes[i] <= cfg.coreset_sizes[i - 1])
      throw config_error("coreset sizes (--M) must be strictly ascending");
  }
  if (cfg.trials == 0) throw config_error("trials must be at least 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw config_error("delta must lie in (0, 1)");
  if (cfg.feature_count == 0)
    throw config_error("the projection dimension (--J) must be at least 1");

  if (cfg.norm == NormChoice::exact_gaussian &&
      cfg.model != ModelKind::gaussian)
    throw config_error(
        "norm 'exact-gaussian' is only available for the gaussian model; "
        "use norm fisher|l2 for logistic and poisson");
  if (cfg.weighting == WeightingChoice::exact_posterior &&
      cfg.model != ModelKind::gaussian)
    throw config_error(
        "weighting 'exact-posterior' is only available for the gaussian "
        "model; use weighting laplace|prior for logistic and poisson");
  if (cfg.algorithm == Algorithm::unif && cfg.model != ModelKind::gaussian)
    throw config_error(
        "algorithm 'unif' needs closed-form sensitivities, which only the "
        "gaussian model provides; valid algorithms here: fw, is, rand");

  const bool needs_labels = cfg.model != ModelKind::gaussian;
  if (needs_labels && cfg.label_column.empty())
    throw config_error("model '" + to_string(cfg.model) +
                       "' requires --label-col");
  if (!needs_labels && !cfg.label_column.empty())
    throw config_error("the gaussian model takes no label column");
}

std::unique_ptr<ModelAdapter> make_adapter(ModelKind kind, Dataset data) {
  switch (kind) {
    case ModelKind::gaussian:
      return std::make_unique<GaussianMeanModel>(std::move(data));
    case ModelKind::logistic:
      return std::make_unique<LogisticRegressionModel>(std::move(data));
    case ModelKind::poisson:
      return std::make_unique<PoissonRegressionModel>(std::move(data));
  }
  throw config_error("unknown model");
}

namespace {

GaussianWeighting make_weighting(const ExperimentConfig& cfg,
                                 const ModelAdapter& adapter,
                                 const Dataset& data) {
  switch (cfg.weighting) {
    case WeightingChoice::laplace:
      return laplace_weighting(adapter);
    case WeightingChoice::prior:
      return GaussianWeighting(adapter.prior_mean(),
                               linalg::identity(adapter.param_dim()));
    case WeightingChoice::exact_posterior: {
      const std::vector<double> mu0(data.cols, 0.0);
      GaussianPosterior post = gaussian_exact_posterior(data, mu0);
      return GaussianWeighting(std::move(post.mean),
                               std::move(post.covariance));
    }
  }
  throw config_error("unknown weighting");
}

}  // namespace

FeatureMatrix build_features(const ExperimentConfig& cfg, const Dataset& data,
                             Rng rng) {
  if (cfg.norm == NormChoice::exact_gaussian) {
    const std::vector<double> mu0(data.cols, 0.0);
    return exact_gaussian_embedding(data, gaussian_exact_posterior(data, mu0));
  }
  const auto adapter = make_adapter(cfg.model, data);
  const GaussianWeighting weighting = make_weighting(cfg, *adapter, data);
  const ProjectionConfig pcfg{
      cfg.feature_count,
      cfg.norm == NormChoice::fisher ? NormKind::fisher : NormKind::l2};
  return project(*adapter, weighting, pcfg, rng);
}

namespace {

std::filesystem::path output_file(const ExperimentConfig& cfg,
                                  std::size_t budget, std::size_t trial) {
  std::filesystem::path path = cfg.output;
  if (cfg.coreset_sizes.size() == 1 && cfg.trials == 1) return path;
  std::string stem = path.stem().string();
  if (cfg.coreset_sizes.size() > 1) stem += "_M" + std::to_string(budget);
  if (cfg.trials > 1) stem += "_t" + std::to_string(trial);
  return path.parent_path() / (stem + path.extension().string());
}

}  // namespace

void write_weights_json(const std::filesystem::path& path,
                        const WeightVector& w,
                        const std::string& metadata_json) {
  nlohmann::json doc;
  doc["n"] = w.size();
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t idx : w.support()) {
    entries.push_back({{"index", idx}, {"weight", w[idx]}});
  }
  doc["weights"] = std::move(entries);
  if (!metadata_json.empty())
    doc["metadata"] = nlohmann::json::parse(metadata_json);
  std::ofstream out(path);
  if (!out)
    throw data_error("cannot open output file '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

WeightVector read_weights_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open weights file '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw data_error("invalid weights file '" + path.string() +
                     "': " + e.what());
  }
  WeightVector w(doc.at("n").get<std::size_t>());
  for (const auto& entry : doc.at("weights")) {
    w[entry.at("index").get<std::size_t>()] =
        entry.at("weight").get<double>();
  }
  return w;
}

std::vector<ConstructRecord> run_construct(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.input.empty()) throw config_error("--input is required");
  if (cfg.output.empty()) throw config_error("--output is required");
  const Dataset data = ingest_csv(cfg.input, cfg.label_column);

  const Rng root(cfg.seed);
  std::vector<ConstructRecord> records;

  std::vector<double> sens;
  if (cfg.algorithm == Algorithm::unif) sens = gaussian_sensitivity(data);

  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const Rng trial_rng = root.derive(trial);
    const FeatureMatrix f = build_features(cfg, data, trial_rng.derive(0));
    const AlignmentDiagnostics diag = compute_diagnostics(f);

    for (std::size_t mi = 0; mi < cfg.coreset_sizes.size(); ++mi) {
      const std::size_t budget = cfg.coreset_sizes[mi];
      Rng crng = trial_rng.derive(1 + mi);
      const auto start = std::chrono::steady_clock::now();
      WeightVector w(data.rows);
      switch (cfg.algorithm) {
        case Algorithm::fw:
          w = frank_wolfe(f, budget).weights;
          break;
        case Algorithm::is:
          w = importance_sampling(f, budget, crng);
          break;
        case Algorithm::unif:
          w = uniform_coreset(sens, budget, crng);
          break;
        case Algorithm::rand:
          w = uniform_random(data.rows, budget, crng);
          break;
      }
      const double error = approximation_error(f, w);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();

      nlohmann::json meta;
      meta["algorithm"] = to_string(cfg.algorithm);
      meta["norm"] = to_string(cfg.norm);
      meta["weighting"] = to_string(cfg.weighting);
      meta["model"] = to_string(cfg.model);
      meta["M"] = budget;
      meta["J"] = f.cols();
      meta["seed"] = cfg.seed;
      meta["trial"] = trial;
      meta["input"] = cfg.input.string();
      meta["sigma"] = diag.sigma;
      meta["eta"] = diag.eta;
      meta["eta_bar"] = diag.eta_bar;
      meta["eta_bar_exact"] = diag.eta_bar_exact;
      meta["error"] = error;
      meta["wall_clock_seconds"] = seconds;

      const std::filesystem::path file = output_file(cfg, budget, trial);
      write_weights_json(file, w, meta.dump());
      records.push_back({file, budget, trial, w.support_size(), error});
    }
  }
  return records;
}

std::vector<GaussSynthRow> run_gauss_synth(const GaussSynthConfig& cfg) {
  if (cfg.data_size == 0 || cfg.data_dim == 0)
    throw config_error("gauss-synth needs positive N and D");
  if (cfg.coreset_sizes.empty())
    throw config_error("at least one coreset size (--M) is required");
  if (cfg.trials == 0) throw config_error("trials must be at least 1");
  if (cfg.norm != NormChoice::exact_gaussian && cfg.feature_count == 0)
    throw config_error("projected norms need --J >= 1");

  constexpr Algorithm kAlgs[] = {Algorithm::fw, Algorithm::is,
                                 Algorithm::unif, Algorithm::rand};
  const std::size_t per_trial = 4 * cfg.coreset_sizes.size();
  std::vector<GaussSynthRow> rows(cfg.trials * per_trial);

  const Rng root(cfg.seed);
  const std::vector<double> mu0(cfg.data_dim, 0.0);

  const auto run_trial = [&](std::size_t trial) {
    const Rng trial_rng = root.derive(trial);
    Rng gen = trial_rng.derive(0);

    Dataset data;
    data.rows = cfg.data_size;
    data.cols = cfg.data_dim;
    data.features.resize(cfg.data_size * cfg.data_dim);
    std::vector<double> center(cfg.data_dim);
    for (auto& c : center) c = gen.normal();
    for (std::size_t n = 0; n < cfg.data_size; ++n)
      for (std::size_t k = 0; k < cfg.data_dim; ++k)
        data.features[n * cfg.data_dim + k] = center[k] + gen.normal();

    const GaussianPosterior posterior = gaussian_exact_posterior(data, mu0);

    FeatureMatrix f = [&]() {
      if (cfg.norm == NormChoice::exact_gaussian)
        return exact_gaussian_embedding(data, posterior);
      GaussianMeanModel adapter(data);
      GaussianWeighting weighting(posterior.mean, posterior.covariance);
      const ProjectionConfig pcfg{
          cfg.feature_count,
          cfg.norm == NormChoice::fisher ? NormKind::fisher : NormKind::l2};
      Rng prng = trial_rng.derive(1);
      return project(adapter, weighting, pcfg, prng);
    }();

    const AlignmentDiagnostics diag = compute_diagnostics(f);
    const std::vector<double> sens = gaussian_sensitivity(data);

    std::size_t slot = trial * per_trial;
    for (std::size_t ai = 0; ai < 4; ++ai) {
      for (std::size_t mi = 0; mi < cfg.coreset_sizes.size(); ++mi) {
        const std::size_t budget = cfg.coreset_sizes[mi];
        Rng crng = trial_rng.derive(2 + ai * cfg.coreset_sizes.size() + mi);
        WeightVector w(data.rows);
        switch (kAlgs[ai]) {
          case Algorithm::fw:
            w = frank_wolfe(f, budget).weights;
            break;
          case Algorithm::is:
            w = importance_sampling(f, budget, crng);
            break;
          case Algorithm::unif:
            w = uniform_coreset(sens, budget, crng);
            break;
          case Algorithm::rand:
            w = uniform_random(data.rows, budget, crng);
            break;
        }
        const GaussianPosterior approx =
            gaussian_coreset_posterior(data, w, mu0);
        rows[slot++] = {trial,
                        kAlgs[ai],
                        budget,
                        f.cols(),
                        gaussian_kl(posterior, approx),
                        approximation_error(f, w),
                        diag.sigma,
                        diag.eta,
                        diag.eta_bar};
      }
    }
  };

  std::size_t workers = cfg.threads != 0
                            ? cfg.threads
                            : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.trials);

  if (workers <= 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) run_trial(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t t = next.fetch_add(1);
          if (t >= cfg.trials) return;
          try {
            run_trial(t);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  return rows;
}

void write_gauss_synth_csv(const std::vector<GaussSynthRow>& rows,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw data_error("cannot open output file '" + path.string() + "'");
  out << "trial,algorithm,M,J,KL,error,sigma,eta,eta_bar\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.trial << ',' << to_string(r.algorithm) << ',' << r.budget << ','
        << r.feature_count << ',' << r.kl << ',' << r.error << ',' << r.sigma
        << ',' << r.eta << ',' << r.eta_bar << '\n';
  }
}

}  // namespace coreset
