// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace coreset {

// Seeded generator with deterministic, platform-independent sampling.
// The standard <random> distributions are implementation-defined, so the
// distributions needed here (uniform, normal, binomial, multinomial) are
// implemented explicitly on top of mt19937_64. `derive` produces an
// independent child stream from the stored seed; deriving the same stream
// id twice yields identical generators, which is what makes concurrent
// per-trial execution reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng derive(std::uint64_t stream) const;

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos();
  // Uniform index in {0, ..., n-1}; n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal();

  // Binomial(n, p) by inverted-CDF walk for small n*p, otherwise by
  // Bernoulli summation. Exact distribution, deterministic draw order.
  std::uint64_t binomial(std::uint64_t n, double p);

  // Multinomial(trials, probs) via sequential conditional binomials in
  // index order. probs must be nonnegative with a positive sum (they are
  // normalized internally).
  void multinomial(std::uint64_t trials, std::span<const double> probs,
                   std::span<std::uint64_t> counts);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace coreset
