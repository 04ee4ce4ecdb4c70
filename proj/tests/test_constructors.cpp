// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "coreset/constructors.hpp"
#include "coreset/errors.hpp"
#include "coreset/geometry.hpp"
#include "support.hpp"

using namespace coreset;

namespace {

FeatureMatrix two_orthogonal_unit_rows() {
  FeatureMatrix f(2, 2);
  f.at(0, 0) = 1.0;
  f.at(1, 1) = 1.0;
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// importance sampling

TEST_CASE("is: identical rows reproduce the sum for every draw") {
  FeatureMatrix f(5, 2);
  for (std::size_t n = 0; n < 5; ++n) {
    f.at(n, 0) = 2.0;
    f.at(n, 1) = -1.0;
  }
  Rng rng(31);
  const auto diag = compute_diagnostics(f);
  for (int rep = 0; rep < 50; ++rep) {
    const auto w = importance_sampling(f, 3, rng);
    CHECK(approximation_error(f, w) <= 1e-9 * diag.sigma);
    CHECK(w.support_size() <= 3);
  }
}

TEST_CASE("is: single point gets weight one") {
  FeatureMatrix f(1, 2);
  f.at(0, 1) = 7.0;
  Rng rng(32);
  const auto w = importance_sampling(f, 4, rng);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(approximation_error(f, w) == doctest::Approx(0.0));
}

TEST_CASE("is: zero-norm rows never enter the support") {
  FeatureMatrix f(3, 2);
  f.at(0, 0) = 1.0;
  f.at(2, 1) = 2.0;  // row 1 is zero
  Rng rng(33);
  for (int rep = 0; rep < 200; ++rep) {
    const auto w = importance_sampling(f, 5, rng);
    CHECK(w[1] == 0.0);
  }
}

TEST_CASE("is: mean squared error matches sigma^2 eta^2 / M") {
  Rng rng(34);
  const auto f = testsupport::random_matrix(3, 3, rng);
  const auto diag = compute_diagnostics(f);
  const std::size_t budget = 10;
  const int reps = 100000;

  double s1 = 0.0, s2 = 0.0;
  Rng draw = rng.derive(1);
  for (int i = 0; i < reps; ++i) {
    const auto w = importance_sampling(f, budget, draw);
    const double e = approximation_error(f, w);
    s1 += e * e;
    s2 += e * e * e * e;
  }
  const double mean = s1 / reps;
  const double sd = std::sqrt(std::max(0.0, s2 / reps - mean * mean));
  const double expected =
      diag.sigma * diag.sigma * diag.eta * diag.eta / budget;
  CHECK(std::abs(mean - expected) <= 3.0 * sd / std::sqrt(double(reps)));
}

TEST_CASE("is: every weight is unbiased") {
  Rng rng(35);
  const auto f = testsupport::random_matrix(4, 2, rng);
  const int reps = 100000;
  std::vector<double> s1(4, 0.0), s2(4, 0.0);
  Rng draw = rng.derive(1);
  for (int i = 0; i < reps; ++i) {
    const auto w = importance_sampling(f, 6, draw);
    for (std::size_t n = 0; n < 4; ++n) {
      s1[n] += w[n];
      s2[n] += w[n] * w[n];
    }
  }
  for (std::size_t n = 0; n < 4; ++n) {
    const double mean = s1[n] / reps;
    const double sd = std::sqrt(std::max(0.0, s2[n] / reps - mean * mean));
    CHECK(std::abs(mean - 1.0) <= 5.0 * sd / std::sqrt(double(reps)));
  }
}

TEST_CASE("is: degenerate matrix is rejected") {
  FeatureMatrix f(2, 2);
  Rng rng(36);
  CHECK_THROWS_AS(importance_sampling(f, 3, rng), numeric_error);
  const auto g = testsupport::random_matrix(2, 2, rng);
  CHECK_THROWS_AS(importance_sampling(g, 0, rng), std::invalid_argument);
}

TEST_CASE("is: norm-proportional probabilities minimize the variance proxy") {
  // The variance term is sum_n sigma_n^2 / p_n - ||total||^2; perturbing the
  // norm-proportional p along random zero-sum directions never decreases it.
  Rng rng(37);
  const auto f = testsupport::random_matrix(6, 3, rng);
  const auto diag = compute_diagnostics(f);
  const auto objective = [&](const std::vector<double>& p) {
    double v = 0.0;
    for (std::size_t n = 0; n < 6; ++n)
      v += diag.sigma_n[n] * diag.sigma_n[n] / p[n];
    return v;  // the constant -||total||^2 does not affect comparisons
  };
  std::vector<double> star(6);
  for (std::size_t n = 0; n < 6; ++n) star[n] = diag.sigma_n[n] / diag.sigma;
  const double at_star = objective(star);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> dir(6);
    double mean = 0.0;
    for (double& d : dir) {
      d = rng.normal();
      mean += d;
    }
    mean /= 6.0;
    double eps = 1.0;
    for (std::size_t n = 0; n < 6; ++n) {
      dir[n] -= mean;
      if (dir[n] < 0.0) eps = std::min(eps, 0.5 * star[n] / -dir[n]);
    }
    std::vector<double> p = star;
    for (std::size_t n = 0; n < 6; ++n) p[n] += eps * dir[n];
    CHECK(objective(p) >= at_star * (1.0 - 1e-12));
  }
}

// ---------------------------------------------------------------------------
// uniform baselines

TEST_CASE("unif: equal sensitivities reduce to uniform subsampling") {
  const std::vector<double> sens(5, 0.7);
  Rng a(40), b(40);
  const auto wu = uniform_coreset(sens, 8, a);
  const auto wr = uniform_random(5, 8, b);
  for (std::size_t n = 0; n < 5; ++n) CHECK(wu[n] == wr[n]);
}

TEST_CASE("unif: weights have unit mean") {
  const std::vector<double> sens{0.5, 1.0, 2.0, 4.0};
  Rng rng(41);
  const int reps = 50000;
  std::vector<double> s1(4, 0.0), s2(4, 0.0);
  for (int i = 0; i < reps; ++i) {
    const auto w = uniform_coreset(sens, 12, rng);
    for (std::size_t n = 0; n < 4; ++n) {
      s1[n] += w[n];
      s2[n] += w[n] * w[n];
    }
  }
  for (std::size_t n = 0; n < 4; ++n) {
    const double mean = s1[n] / reps;
    const double sd = std::sqrt(std::max(0.0, s2[n] / reps - mean * mean));
    CHECK(std::abs(mean - 1.0) <= 5.0 * sd / std::sqrt(double(reps)));
  }
}

TEST_CASE("unif: a dominant sensitivity is always sampled") {
  const std::vector<double> sens{1e6, 1.0, 1.0};
  const double p0 = 1e6 / (1e6 + 2.0);
  Rng rng(42);
  const int reps = 20000;
  const std::size_t budget = 4;
  double count0 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const auto w = uniform_coreset(sens, budget, rng);
    CHECK(w[0] > 0.0);
    // Recover the draw count from the weight: W_0 = (sigma/s_0)(M_0/M).
    count0 += w[0] * p0 * budget;
  }
  const double mean_share = count0 / (reps * budget);
  CHECK(mean_share == doctest::Approx(p0).epsilon(1e-3));
}

TEST_CASE("unif: rejects all-zero sensitivities") {
  Rng rng(43);
  CHECK_THROWS_AS(uniform_coreset({0.0, 0.0}, 3, rng), numeric_error);
  CHECK_THROWS_AS(uniform_coreset({1.0, -1.0}, 3, rng), std::invalid_argument);
}

TEST_CASE("rand: single point always gets weight one") {
  Rng rng(44);
  for (int i = 0; i < 20; ++i) {
    const auto w = uniform_random(1, 3, rng);
    CHECK(w[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("rand: support size distribution for N = M = 2") {
  // Exact enumeration: counts (2,0) and (0,2) each have probability 1/4
  // (support 1), counts (1,1) probability 1/2 (support 2).
  Rng rng(45);
  const int reps = 40000;
  int singles = 0;
  for (int i = 0; i < reps; ++i) {
    const auto w = uniform_random(2, 2, rng);
    const std::size_t s = w.support_size();
    REQUIRE(s >= 1);
    REQUIRE(s <= 2);
    if (s == 1) ++singles;
  }
  const double freq = double(singles) / reps;
  CHECK(std::abs(freq - 0.5) < 0.015);  // ~6 binomial SDs
}

TEST_CASE("rand: weights always sum to N") {
  Rng rng(46);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.uniform_index(20);
    const std::size_t m = 1 + rng.uniform_index(15);
    const auto w = uniform_random(n, m, rng);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += w[k];
    CHECK(sum == doctest::Approx(double(n)).epsilon(1e-12));
  }
}

// ---------------------------------------------------------------------------
// Frank-Wolfe

TEST_CASE("fw: hand trace on two orthogonal unit rows") {
  // Init picks index 0 on the tie, giving w = (2, 0); the single iteration
  // picks index 1 with step 1/2 and lands on w = (1, 1) with zero error.
  const auto f = two_orthogonal_unit_rows();
  const auto [w, trace] = frank_wolfe(f, 2);
  CHECK(trace.init_vertex == 0);
  REQUIRE(trace.steps.size() == 1);
  CHECK(trace.steps[0].vertex == 1);
  CHECK(trace.steps[0].gamma == doctest::Approx(0.5));
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(1.0));
  CHECK(approximation_error(f, w) <= 1e-12);

  // Oracle: evaluate the init/direction/step formulas directly.
  // <total, row_0> = <total, row_1> = 1, tie -> 0. Residual after init is
  // v1 - v0; <residual, row_1> = 1 > -1; direction d = 2 v1 - 2 v0;
  // gamma = <d, r>/<d, d> = 4/8.
  CHECK(trace.initial_objective == doctest::Approx(2.0));
  CHECK(trace.steps[0].objective == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("fw: single row converges at initialization") {
  FeatureMatrix f(1, 3);
  f.at(0, 2) = 5.0;
  const auto [w, trace] = frank_wolfe(f, 4);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(trace.steps.empty());
  CHECK(trace.converged);
  CHECK(approximation_error(f, w) <= 1e-12);
}

TEST_CASE("fw: identical rows are solved exactly by one vertex") {
  FeatureMatrix f(6, 2);
  for (std::size_t n = 0; n < 6; ++n) f.at(n, 0) = 3.0;
  const auto [w, trace] = frank_wolfe(f, 5);
  CHECK(trace.init_vertex == 0);  // lowest index wins the tie
  CHECK(w.support_size() == 1);
  CHECK(approximation_error(f, w) <= 1e-9 * 18.0);
  CHECK(trace.converged);
}

TEST_CASE("fw: error bound, step range, feasibility on random instances") {
  Rng rng(50);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.uniform_index(30);
    const std::size_t j = 1 + rng.uniform_index(8);
    const auto f = testsupport::random_matrix(n, j, rng);
    const auto diag = compute_diagnostics(f);
    const std::size_t budget = 12;
    const auto [w, trace] = frank_wolfe(f, budget);

    CHECK(w.support_size() <= budget);

    // Budget-m prefix error obeys sigma eta_bar / sqrt(m).
    double objective = trace.initial_objective;
    std::size_t step_idx = 0;
    for (std::size_t m = 1; m <= budget; ++m) {
      if (m >= 2 && step_idx < trace.steps.size() &&
          trace.steps[step_idx].iteration == m - 1) {
        objective = trace.steps[step_idx].objective;
        ++step_idx;
      }
      CHECK(std::sqrt(objective) <=
            diag.sigma * diag.eta_bar / std::sqrt(double(m)) +
                1e-7 * diag.sigma);
    }

    // Steps stay inside [0,1] (up to fp noise on the raw value) and the
    // objective never increases under exact line search.
    double prev = trace.initial_objective;
    for (const auto& s : trace.steps) {
      CHECK(s.gamma_raw >= -1e-12);
      CHECK(s.gamma_raw <= 1.0 + 1e-12);
      CHECK(s.gamma >= 0.0);
      CHECK(s.gamma <= 1.0);
      CHECK(s.objective <= prev * (1.0 + 1e-12) + 1e-12);
      prev = s.objective;
    }

    // Every iterate stays on the constraint plane sum_n sigma_n w_n = sigma.
    testsupport::replay_frank_wolfe(
        f, trace,
        [&](const FWStep&, const std::vector<double>& weights,
            const std::vector<double>&, const std::vector<double>&,
            const std::vector<double>&) {
          double plane = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            plane += diag.sigma_n[i] * weights[i];
          CHECK(std::abs(plane - diag.sigma) <= 1e-7 * diag.sigma);
        });
    double plane = 0.0;
    for (std::size_t i = 0; i < n; ++i) plane += diag.sigma_n[i] * w[i];
    CHECK(std::abs(plane - diag.sigma) <= 1e-7 * diag.sigma);
  }
}

TEST_CASE("fw: closed-form step beats a grid search") {
  Rng rng(51);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 3 + rng.uniform_index(12);
    const std::size_t j = 2 + rng.uniform_index(4);
    const auto f = testsupport::random_matrix(n, j, rng);
    const auto total = f.row_sum();
    const auto [w, trace] = frank_wolfe(f, 8);

    testsupport::replay_frank_wolfe(
        f, trace,
        [&](const FWStep& step, const std::vector<double>&,
            const std::vector<double>& combo, const std::vector<double>& dir,
            const std::vector<double>&) {
          for (int g = 0; g <= 100; ++g) {
            const double gamma = g / 100.0;
            double obj = 0.0;
            for (std::size_t k = 0; k < j; ++k) {
              const double diff = combo[k] + gamma * dir[k] - total[k];
              obj += diff * diff;
            }
            CHECK(step.objective <= obj * (1.0 + 1e-9) + 1e-12);
          }
        });
  }
}

TEST_CASE("fw: fixed step rule") {
  Rng rng(52);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng.uniform_index(20);
    const auto f = testsupport::random_matrix(n, 4, rng);
    const auto diag = compute_diagnostics(f);
    const std::size_t budget = 10;
    const auto [w, trace] = frank_wolfe(f, budget, StepRule::fixed);
    for (const auto& s : trace.steps) {
      const double expected = 2.0 / (3.0 * double(s.iteration - 1) + 4.0);
      CHECK(s.gamma == doctest::Approx(expected));
    }
    const double err = approximation_error(f, w);
    CHECK(err <= 2.0 * diag.sigma * diag.eta_bar /
                     std::sqrt(3.0 * double(budget) + 1.0) +
                 1e-7 * diag.sigma);
  }
}

TEST_CASE("fw: degenerate and invalid inputs") {
  FeatureMatrix zeros(2, 2);
  CHECK_THROWS_AS(frank_wolfe(zeros, 3), numeric_error);
  FeatureMatrix ok(2, 2);
  ok.at(0, 0) = 1.0;
  ok.at(1, 1) = 1.0;
  CHECK_THROWS_AS(frank_wolfe(ok, 0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// distributed merge

TEST_CASE("merge: single part is the identity") {
  Rng rng(60);
  WeightVector w({1.0, 0.0, 2.5});
  std::vector<CoresetPart> parts;
  parts.push_back({{0, 1, 2}, w});
  const auto merged = merge_distributed(parts);
  for (std::size_t n = 0; n < 3; ++n) CHECK(merged[n] == w[n]);
}

TEST_CASE("merge: scattered indices land in place without rescaling") {
  std::vector<CoresetPart> parts;
  parts.push_back({{2, 0}, WeightVector(std::vector<double>{5.0, 1.0})});
  parts.push_back({{1, 3}, WeightVector(std::vector<double>{0.0, 7.0})});
  const auto merged = merge_distributed(parts);
  CHECK(merged[0] == 1.0);
  CHECK(merged[1] == 0.0);
  CHECK(merged[2] == 5.0);
  CHECK(merged[3] == 7.0);
  CHECK(merged.support_size() == 3);
}

TEST_CASE("merge: overlapping or incomplete partitions are rejected") {
  std::vector<CoresetPart> overlap;
  overlap.push_back({{0, 1}, WeightVector(std::vector<double>{1.0, 1.0})});
  overlap.push_back({{1}, WeightVector(std::vector<double>{1.0})});
  CHECK_THROWS_AS(merge_distributed(overlap), std::invalid_argument);

  std::vector<CoresetPart> gap;  // index 3 out of range for total size 3
  gap.push_back({{0, 1}, WeightVector(std::vector<double>{1.0, 1.0})});
  gap.push_back({{3}, WeightVector(std::vector<double>{1.0})});
  CHECK_THROWS_AS(merge_distributed(gap), std::invalid_argument);

  std::vector<CoresetPart> ragged;
  ragged.push_back({{0, 1}, WeightVector(std::vector<double>{1.0})});
  CHECK_THROWS_AS(merge_distributed(ragged), std::invalid_argument);
}

TEST_CASE("merge: per-node fw satisfies the full-data bound") {
  Rng rng(61);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 8 + rng.uniform_index(30);
    const std::size_t j = 2 + rng.uniform_index(5);
    const auto f = testsupport::random_matrix(n, j, rng);
    const auto diag = compute_diagnostics(f);
    const std::size_t budget = 4;
    const std::size_t parts_count = 4;

    std::vector<CoresetPart> parts;
    std::size_t start = 0;
    for (std::size_t c = 0; c < parts_count; ++c) {
      const std::size_t stop =
          c + 1 == parts_count ? n : start + (n - start) / (parts_count - c);
      FeatureMatrix sub(stop - start, j);
      std::vector<std::size_t> idx;
      for (std::size_t i = start; i < stop; ++i) {
        idx.push_back(i);
        for (std::size_t k = 0; k < j; ++k) sub.at(i - start, k) = f.at(i, k);
      }
      parts.push_back({idx, frank_wolfe(sub, budget).weights});
      start = stop;
    }
    const auto merged = merge_distributed(parts);
    CHECK(merged.support_size() <= parts_count * budget);
    CHECK(approximation_error(f, merged) <=
          diag.sigma * diag.eta_bar / std::sqrt(double(budget)) +
              1e-9 * diag.sigma);
  }
}

TEST_CASE("merge: per-node is satisfies the merged tail bound") {
  Rng rng(62);
  const auto f = testsupport::random_matrix(24, 4, rng);
  const auto diag = compute_diagnostics(f);
  const std::size_t budget = 6;
  const std::size_t parts_count = 3;
  const double delta = 0.2;
  const double bound = diag.sigma * diag.eta_bar / std::sqrt(double(budget)) *
                       (1.0 + std::sqrt(2.0 * std::log(parts_count / delta)));

  int violations = 0;
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<CoresetPart> parts;
    for (std::size_t c = 0; c < parts_count; ++c) {
      const std::size_t lo = c * 8, hi = lo + 8;
      FeatureMatrix sub(8, 4);
      std::vector<std::size_t> idx;
      for (std::size_t i = lo; i < hi; ++i) {
        idx.push_back(i);
        for (std::size_t k = 0; k < 4; ++k) sub.at(i - lo, k) = f.at(i, k);
      }
      Rng node = rng.derive(rep * 16 + c);
      parts.push_back({idx, importance_sampling(sub, budget, node)});
    }
    if (approximation_error(f, merge_distributed(parts)) > bound) ++violations;
  }
  // The guarantee allows a delta fraction; leave binomial slack on top.
  CHECK(violations <= int(reps * delta) + 15);
}
