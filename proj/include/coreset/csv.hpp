// Copyright contributors to the coreset project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "coreset/dataset.hpp"

namespace coreset {

// Reads a headered numeric CSV. When label_column names a header cell,
// that column becomes the dataset labels and the rest the features.
// Throws data_error on missing files, ragged rows, non-numeric or
// non-finite cells (with row/column diagnostics), or an empty body.
Dataset ingest_csv(const std::filesystem::path& path,
                   const std::string& label_column = "");

}  // namespace coreset
