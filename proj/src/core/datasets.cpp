#include "copeland/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "copeland/errors.hpp"
#include "copeland/rng.hpp"

namespace copeland {

namespace {

using Table = std::vector<std::vector<double>>;

// Published decimals, row i column j = mu_ij. Only the part below the
// diagonal is read; the published upper part is kept for reference.
const Table& table_cyclic() {
  static const Table t = {
    {0.5, 0.6, 0.6, 0.6},
    {0.4, 0.5, 0.9, 0.1},
    {0.4, 0.1, 0.5, 0.9},
    {0.4, 0.9, 0.1, 0.5},
  };
  return t;
}

const Table& table_gap() {
  static const Table t = {
    {0.5, 0.8, 0.8, 0.51, 0.2},
    {0.2, 0.5, 0.8, 0.2, 0.8},
    {0.2, 0.2, 0.5, 0.8, 0.8},
    {0.49, 0.8, 0.2, 0.5, 0.2},
    {0.8, 0.2, 0.2, 0.8, 0.5},
  };
  return t;
}

const Table& table_multisol() {
  static const Table t = {
    {0.5, 0.2, 0.8, 0.8, 0.8},
    {0.8, 0.5, 0.2, 0.8, 0.8},
    {0.2, 0.8, 0.5, 0.8, 0.8},
    {0.2, 0.2, 0.2, 0.5, 0.6},
    {0.2, 0.2, 0.2, 0.4, 0.5},
  };
  return t;
}

const Table& table_arxiv() {
  static const Table t = {
    {0.50, 0.55, 0.55, 0.54, 0.61, 0.61},
    {0.45, 0.50, 0.55, 0.55, 0.58, 0.60},
    {0.45, 0.45, 0.50, 0.54, 0.51, 0.56},
    {0.46, 0.45, 0.46, 0.50, 0.54, 0.50},
    {0.39, 0.42, 0.49, 0.46, 0.50, 0.51},
    {0.39, 0.40, 0.44, 0.50, 0.49, 0.50},
  };
  return t;
}

// The published table pairs mu_42 = 0.276 with mu_24 = 0.727; the lower
// entry is authoritative, so mu_24 loads as 0.724.
const Table& table_mslr5_condorcet() {
  static const Table t = {
    {0.5, 0.535, 0.613, 0.757, 0.765},
    {0.465, 0.5, 0.580, 0.727, 0.738},
    {0.387, 0.420, 0.5, 0.659, 0.669},
    {0.243, 0.276, 0.341, 0.5, 0.510},
    {0.235, 0.262, 0.331, 0.490, 0.5},
  };
  return t;
}

const Table& table_mslr5_noncondorcet() {
  static const Table t = {
    {0.5, 0.484, 0.519, 0.529, 0.518},
    {0.516, 0.5, 0.481, 0.530, 0.539},
    {0.481, 0.519, 0.5, 0.504, 0.512},
    {0.471, 0.470, 0.496, 0.5, 0.503},
    {0.482, 0.461, 0.488, 0.497, 0.5},
  };
  return t;
}

const Table& table_sushi() {
  static const Table t = {
    {0.5, 0.512, 0.622, 0.655, 0.698, 0.726, 0.711, 0.708, 0.749, 0.8, 0.741, 0.783, 0.847, 0.817, 0.854, 0.868},
    {0.488, 0.5, 0.602, 0.683, 0.652, 0.776, 0.663, 0.683, 0.738, 0.709, 0.786, 0.802, 0.83, 0.85, 0.871, 0.873},
    {0.378, 0.398, 0.5, 0.528, 0.554, 0.533, 0.534, 0.591, 0.573, 0.593, 0.661, 0.705, 0.734, 0.672, 0.787, 0.822},
    {0.345, 0.317, 0.472, 0.5, 0.553, 0.619, 0.566, 0.641, 0.675, 0.687, 0.665, 0.696, 0.803, 0.823, 0.796, 0.844},
    {0.302, 0.348, 0.446, 0.447, 0.5, 0.513, 0.524, 0.518, 0.608, 0.538, 0.643, 0.61, 0.695, 0.672, 0.681, 0.775},
    {0.274, 0.224, 0.467, 0.381, 0.487, 0.5, 0.513, 0.559, 0.575, 0.621, 0.591, 0.701, 0.702, 0.787, 0.829, 0.811},
    {0.289, 0.337, 0.466, 0.434, 0.476, 0.487, 0.5, 0.559, 0.553, 0.613, 0.564, 0.607, 0.703, 0.735, 0.736, 0.801},
    {0.292, 0.317, 0.409, 0.359, 0.482, 0.441, 0.441, 0.5, 0.556, 0.527, 0.562, 0.58, 0.668, 0.805, 0.777, 0.767},
    {0.251, 0.262, 0.427, 0.325, 0.392, 0.425, 0.447, 0.444, 0.5, 0.512, 0.548, 0.542, 0.612, 0.786, 0.71, 0.685},
    {0.2, 0.291, 0.407, 0.313, 0.462, 0.379, 0.387, 0.473, 0.488, 0.5, 0.543, 0.579, 0.613, 0.718, 0.685, 0.747},
    {0.259, 0.214, 0.339, 0.335, 0.357, 0.409, 0.436, 0.438, 0.452, 0.457, 0.5, 0.564, 0.625, 0.618, 0.702, 0.684},
    {0.217, 0.198, 0.295, 0.304, 0.39, 0.299, 0.393, 0.42, 0.458, 0.421, 0.436, 0.5, 0.542, 0.644, 0.7, 0.733},
    {0.153, 0.17, 0.266, 0.197, 0.305, 0.298, 0.297, 0.332, 0.388, 0.387, 0.375, 0.458, 0.5, 0.577, 0.607, 0.596},
    {0.183, 0.15, 0.328, 0.177, 0.328, 0.213, 0.265, 0.195, 0.214, 0.282, 0.382, 0.356, 0.423, 0.5, 0.578, 0.637},
    {0.146, 0.129, 0.213, 0.204, 0.319, 0.171, 0.264, 0.223, 0.29, 0.315, 0.298, 0.3, 0.393, 0.422, 0.5, 0.586},
    {0.132, 0.127, 0.178, 0.156, 0.225, 0.189, 0.199, 0.233, 0.315, 0.253, 0.316, 0.267, 0.404, 0.363, 0.414, 0.5},
  };
  return t;
}

struct Entry {
  const char* name;
  const Table& (*table)();
};

const Entry kEntries[] = {
    {"cyclic", &table_cyclic},
    {"gap", &table_gap},
    {"multisol", &table_multisol},
    {"arxiv", &table_arxiv},
    {"mslr5_condorcet", &table_mslr5_condorcet},
    {"mslr5_noncondorcet", &table_mslr5_noncondorcet},
    {"sushi", &table_sushi},
};

}  // namespace

const std::vector<std::string>& builtin_dataset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kEntries) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

PreferenceMatrix builtin_dataset(std::string_view name,
                                 const MatrixOptions& options) {
  for (const auto& e : kEntries) {
    if (name != e.name) continue;
    const Table& t = e.table();
    const int k = static_cast<int>(t.size());
    std::vector<double> lower(pair_count(k));
    for (int i = 1; i < k; ++i) {
      for (int j = 0; j < i; ++j) lower[pair_index({i, j})] = t[i][j];
    }
    return PreferenceMatrix::from_lower(k, std::move(lower), options);
  }
  throw Error(ErrorKind::kUnknownDataset,
              "unknown dataset '" + std::string(name) + "'");
}

PreferenceMatrix sample_submatrix(const PreferenceMatrix& matrix, int k,
                                  double min_gap, std::uint64_t seed,
                                  std::vector<Arm>* chosen) {
  const int n = matrix.size();
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "submatrix size " << k << " outside [1, " << n << "]";
    throw ValidationError(msg.str());
  }
  if (!(min_gap >= 0.0)) throw ValidationError("min_gap must be >= 0");

  Rng rng = make_rng(seed);
  std::vector<Arm> arms(n);
  for (int attempt = 0; attempt < kSubmatrixMaxAttempts; ++attempt) {
    std::iota(arms.begin(), arms.end(), 0);
    // Partial Fisher-Yates: the first k slots are a uniform k-subset.
    for (int i = 0; i < k; ++i) {
      const auto pick = i + static_cast<int>(uniform_below(rng, n - i));
      std::swap(arms[i], arms[pick]);
    }
    std::vector<Arm> subset(arms.begin(), arms.begin() + k);
    std::sort(subset.begin(), subset.end());

    bool ok = true;
    for (int a = 1; a < k && ok; ++a) {
      for (int b = 0; b < a && ok; ++b) {
        ok = std::abs(matrix(subset[a], subset[b]) - 0.5) >= min_gap;
      }
    }
    if (!ok) continue;
    if (chosen != nullptr) *chosen = subset;
    return matrix.submatrix(subset);
  }
  std::ostringstream msg;
  msg << "no " << k << "-arm submatrix with all gaps >= " << min_gap
      << " found in " << kSubmatrixMaxAttempts << " draws";
  throw Error(ErrorKind::kExhaustedRejections, msg.str());
}

}  // namespace copeland
