// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "coreset/errors.hpp"
#include "coreset/kernels.hpp"

namespace coreset {

namespace {

std::vector<double> row_norms(const FeatureMatrix& f) {
  std::vector<double> s(f.rows());
  for (std::size_t n = 0; n < f.rows(); ++n)
    s[n] = std::sqrt(kernels::squared_norm(f.row(n)));
  return s;
}

// Multinomial draw with p_n proportional to sens, reweighted by
// (total / sens_n) * (count_n / M) so each weight has unit expectation.
WeightVector sampled_weights(const std::vector<double>& sens,
                             std::size_t budget, Rng& rng) {
  if (budget == 0)
    throw std::invalid_argument("coreset budget must be at least 1");
  const std::size_t n = sens.size();
  double total = 0.0;
  for (double s : sens) {
    if (!(s >= 0.0) || !std::isfinite(s))
      throw std::invalid_argument("sensitivities must be finite nonnegative");
    total += s;
  }
  if (total <= 0.0)
    throw numeric_error("degenerate problem: all sensitivities are zero");

  std::vector<std::uint64_t> counts(n, 0);
  rng.multinomial(budget, sens, counts);

  WeightVector w(n);
  const double m = static_cast<double>(budget);
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[i] > 0)
      w[i] = (total / sens[i]) * (static_cast<double>(counts[i]) / m);
  }
  return w;
}

}  // namespace

WeightVector importance_sampling(const FeatureMatrix& f, std::size_t budget,
                                 Rng& rng) {
  return sampled_weights(row_norms(f), budget, rng);
}

WeightVector uniform_coreset(const std::vector<double>& sensitivities,
                             std::size_t budget, Rng& rng) {
  return sampled_weights(sensitivities, budget, rng);
}

WeightVector uniform_random(std::size_t n, std::size_t budget, Rng& rng) {
  if (n == 0) throw std::invalid_argument("uniform_random: empty dataset");
  return sampled_weights(std::vector<double>(n, 1.0), budget, rng);
}

FWResult frank_wolfe(const FeatureMatrix& f, std::size_t budget,
                     StepRule rule) {
  if (budget == 0)
    throw std::invalid_argument("coreset budget must be at least 1");
  const std::size_t n = f.rows();
  const std::size_t j = f.cols();

  const std::vector<double> sig = row_norms(f);
  double sigma = 0.0;
  for (double s : sig) sigma += s;
  if (sigma <= 0.0)
    throw numeric_error("degenerate problem: all feature rows are zero");

  const std::vector<double> total = f.row_sum();

  // Vertex scan: argmax over rows of <target, row_n> / sigma_n, lowest
  // index on ties; zero-norm rows are skipped.
  const auto best_vertex = [&](std::span<const double> target) {
    std::size_t best = n;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (sig[i] <= 0.0) continue;
      const double v = kernels::dot(target, f.row(i)) / sig[i];
      if (v > best_val) {
        best_val = v;
        best = i;
      }
    }
    return best;
  };

  FWResult out{WeightVector(n), {}};
  FWTrace& trace = out.trace;
  trace.sigma = sigma;

  const std::size_t f0 = best_vertex(total);
  out.weights[f0] = sigma / sig[f0];
  std::vector<double> current(f.row(f0).begin(), f.row(f0).end());
  kernels::scale(sigma / sig[f0], current);

  std::vector<double> residual(j);
  const auto compute_residual = [&]() {
    double r2 = 0.0;
    for (std::size_t k = 0; k < j; ++k) {
      residual[k] = total[k] - current[k];
      r2 += residual[k] * residual[k];
    }
    return r2;
  };

  double objective = compute_residual();
  trace.init_vertex = f0;
  trace.initial_objective = objective;

  const double stop2 = (1e-12 * sigma) * (1e-12 * sigma);
  std::vector<double> direction(j);

  for (std::size_t t = 1; t < budget; ++t) {
    if (objective <= stop2) {
      trace.converged = true;
      break;
    }
    const std::size_t ft = best_vertex(residual);
    const double vertex_scale = sigma / sig[ft];

    double dd = 0.0, dr = 0.0;
    {
      const auto vrow = f.row(ft);
      for (std::size_t k = 0; k < j; ++k) {
        direction[k] = vertex_scale * vrow[k] - current[k];
        dd += direction[k] * direction[k];
        dr += direction[k] * residual[k];
      }
    }
    if (dd <= 0.0) {  // chosen vertex coincides with the iterate
      trace.converged = true;
      break;
    }

    const double gamma_raw =
        rule == StepRule::exact_line_search
            ? dr / dd
            : 2.0 / (3.0 * static_cast<double>(t - 1) + 4.0);
    const double gamma = std::clamp(gamma_raw, 0.0, 1.0);

    for (std::size_t i = 0; i < n; ++i) out.weights[i] *= 1.0 - gamma;
    out.weights[ft] += gamma * vertex_scale;
    kernels::scale(1.0 - gamma, current);
    kernels::axpy(gamma * vertex_scale, f.row(ft), current);

    objective = compute_residual();
    trace.steps.push_back({t, ft, gamma, gamma_raw, objective});
  }
  return out;
}

WeightVector merge_distributed(const std::vector<CoresetPart>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) {
    if (p.indices.size() != p.weights.size())
      throw std::invalid_argument(
          "merge_distributed: index/weight length mismatch in a part");
    n += p.indices.size();
  }
  if (n == 0) throw std::invalid_argument("merge_distributed: empty input");

  WeightVector merged(n);
  std::vector<bool> seen(n, false);
  for (const auto& p : parts) {
    for (std::size_t k = 0; k < p.indices.size(); ++k) {
      const std::size_t idx = p.indices[k];
      if (idx >= n)
        throw std::invalid_argument(
            "merge_distributed: index " + std::to_string(idx) +
            " out of range for combined size " + std::to_string(n));
      if (seen[idx])
        throw std::invalid_argument("merge_distributed: parts overlap at index " +
                                    std::to_string(idx));
      seen[idx] = true;
      merged[idx] = p.weights[k];
    }
  }
  // Coverage follows from the counts: n indices, no duplicates, all < n.
  return merged;
}

}  // namespace coreset
