// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coreset {

// Bad user-facing configuration (unknown option combination, malformed
// experiment settings). Maps to CLI exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problems with input data files (missing, ragged, non-numeric). Exit code 3.
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: degenerate inputs, non-convergence, non-finite values.
// Exit code 4.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newton solve failed to reach the gradient tolerance; carries the last
// iterate so callers can inspect or restart.
struct newton_failure : numeric_error {
  newton_failure(const std::string& what, std::vector<double> iterate)
      : numeric_error(what), last_iterate(std::move(iterate)) {}
  std::vector<double> last_iterate;
};

}  // namespace coreset
