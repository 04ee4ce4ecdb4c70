// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coreset {

// In-memory tabular dataset: row-major feature block plus an optional
// per-row label/count column.
struct Dataset {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> features;  // rows * cols
  std::vector<double> labels;    // empty, or one entry per row

  bool has_labels() const { return !labels.empty(); }

  std::span<const double> row(std::size_t n) const {
    return {features.data() + n * cols, cols};
  }
};

}  // namespace coreset
