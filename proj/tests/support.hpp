// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "coreset/constructors.hpp"
#include "coreset/feature_matrix.hpp"
#include "coreset/kernels.hpp"
#include "coreset/rng.hpp"

namespace testsupport {

inline coreset::FeatureMatrix random_matrix(std::size_t rows, std::size_t cols,
                                            coreset::Rng& rng,
                                            double scale = 1.0) {
  coreset::FeatureMatrix f(rows, cols);
  for (std::size_t n = 0; n < rows; ++n)
    for (std::size_t j = 0; j < cols; ++j)
      f.at(n, j) = scale * rng.normal();
  return f;
}

// Brute-force alignment constants straight from their definitions; used as
// the oracle against compute_diagnostics.
struct BruteDiagnostics {
  std::vector<double> sigma_n;
  double sigma = 0.0;
  double eta = 0.0;
  double eta_bar = 0.0;
};

inline BruteDiagnostics brute_diagnostics(const coreset::FeatureMatrix& f) {
  BruteDiagnostics d;
  const std::size_t n = f.rows(), j = f.cols();
  d.sigma_n.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < j; ++k) s += f.at(i, k) * f.at(i, k);
    d.sigma_n[i] = std::sqrt(s);
    d.sigma += d.sigma_n[i];
  }
  std::vector<double> total(j, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < j; ++k) total[k] += f.at(i, k);
  double t2 = 0.0;
  for (double v : total) t2 += v * v;
  d.eta = std::sqrt(std::max(0.0, 1.0 - t2 / (d.sigma * d.sigma)));

  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (d.sigma_n[a] == 0.0) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (d.sigma_n[b] == 0.0) continue;
      double dist2 = 0.0;
      for (std::size_t k = 0; k < j; ++k) {
        const double diff = f.at(a, k) / d.sigma_n[a] - f.at(b, k) / d.sigma_n[b];
        dist2 += diff * diff;
      }
      worst = std::max(worst, dist2);
    }
  }
  d.eta_bar = std::sqrt(worst);
  return d;
}

// Replays a recorded run: reconstructs the iterate sequence from the
// initial vertex and the per-step (vertex, gamma) records. Calls visit with
// (step, weights_before, combo_before, direction, combo_after) where combo
// is the weighted row sum of the current iterate.
template <typename Visit>
void replay_frank_wolfe(const coreset::FeatureMatrix& f,
                        const coreset::FWTrace& trace, Visit&& visit) {
  const std::size_t n = f.rows(), j = f.cols();
  std::vector<double> sigma_n(n);
  double sigma = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sigma_n[i] = std::sqrt(coreset::kernels::squared_norm(f.row(i)));
    sigma += sigma_n[i];
  }

  std::vector<double> w(n, 0.0);
  w[trace.init_vertex] = sigma / sigma_n[trace.init_vertex];
  std::vector<double> combo(f.row(trace.init_vertex).begin(),
                            f.row(trace.init_vertex).end());
  coreset::kernels::scale(w[trace.init_vertex], combo);

  std::vector<double> direction(j), after(j);
  for (const auto& step : trace.steps) {
    const double vertex_scale = sigma / sigma_n[step.vertex];
    const auto vrow = f.row(step.vertex);
    for (std::size_t k = 0; k < j; ++k)
      direction[k] = vertex_scale * vrow[k] - combo[k];
    for (std::size_t k = 0; k < j; ++k)
      after[k] = combo[k] + step.gamma * direction[k];
    visit(step, w, combo, direction, after);
    for (double& v : w) v *= 1.0 - step.gamma;
    w[step.vertex] += step.gamma * vertex_scale;
    combo = after;
  }
}

}  // namespace testsupport
