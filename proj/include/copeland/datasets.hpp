#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "copeland/preference_matrix.hpp"

namespace copeland {

// Names of the bundled preference matrices, in listing order.
const std::vector<std::string>& builtin_dataset_names();

// Throws Error(kUnknownDataset). "arxiv" contains an exact 1/2 entry and
// loads only with options.tie_tolerant.
PreferenceMatrix builtin_dataset(std::string_view name,
                                 const MatrixOptions& options = {});

inline constexpr int kSubmatrixMaxAttempts = 100000;

// Draws k distinct arms uniformly (kept in ascending order) until every
// selected pair has |mu_ij - 1/2| >= min_gap. Throws
// Error(kExhaustedRejections) after kSubmatrixMaxAttempts draws.
PreferenceMatrix sample_submatrix(const PreferenceMatrix& matrix, int k,
                                  double min_gap, std::uint64_t seed,
                                  std::vector<Arm>* chosen = nullptr);

}  // namespace copeland
