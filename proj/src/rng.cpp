// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0

#include "coreset/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace coreset {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed, 0)) {}

Rng Rng::derive(std::uint64_t stream) const {
  return Rng(mix_seed(seed_, stream + 1));
}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_pos() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) {
  assert(n > 0);
  // Modulo bias is below 2^-40 for any n this library sees.
  return static_cast<std::size_t>(engine_() % n);
}

double Rng::normal() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::binomial(std::uint64_t n, double p) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);

  const double np = static_cast<double>(n) * p;
  if (np <= 30.0) {
    // Inverted CDF; pmf(0) cannot underflow because n*p <= 30 and p <= 1/2.
    const double odds = p / (1.0 - p);
    double pmf = std::exp(static_cast<double>(n) * std::log1p(-p));
    double cdf = pmf;
    const double u = uniform();
    std::uint64_t k = 0;
    while (u >= cdf && k < n) {
      pmf *= static_cast<double>(n - k) / static_cast<double>(k + 1) * odds;
      ++k;
      cdf += pmf;
    }
    return k;
  }

  std::uint64_t k = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (uniform() < p) ++k;
  }
  return k;
}

void Rng::multinomial(std::uint64_t trials, std::span<const double> probs,
                      std::span<std::uint64_t> counts) {
  assert(probs.size() == counts.size());
  const std::size_t n = probs.size();
  if (n == 0) {
    if (trials != 0) throw std::invalid_argument("multinomial: empty support");
    return;
  }
  // Right-to-left suffix sums keep the conditional probabilities stable.
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    if (probs[i] < 0.0)
      throw std::invalid_argument("multinomial: negative probability");
    suffix[i] = probs[i] + suffix[i + 1];
  }
  if (suffix[0] <= 0.0)
    throw std::invalid_argument("multinomial: probabilities sum to zero");

  std::uint64_t remaining = trials;
  for (std::size_t i = 0; i < n; ++i) {
    if (remaining == 0) {
      counts[i] = 0;
      continue;
    }
    if (i + 1 == n || suffix[i + 1] <= 0.0) {
      counts[i] = remaining;
      remaining = 0;
      continue;
    }
    const double cond = std::clamp(probs[i] / suffix[i], 0.0, 1.0);
    const std::uint64_t c = binomial(remaining, cond);
    counts[i] = c;
    remaining -= c;
  }
}

}  // namespace coreset
