#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace copeland {

// Arms are 0-based everywhere inside the library. Text formats and the CLI
// present them 1-based.
using Arm = int;

// Unordered pair stored with the larger index first (hi >= lo). Distinct
// pairs have hi > lo; (i, i) is the self-pair used for exploitation draws.
struct Pair {
  Arm hi = 0;
  Arm lo = 0;

  static Pair of(Arm a, Arm b) { return a >= b ? Pair{a, b} : Pair{b, a}; }
  bool is_self() const { return hi == lo; }

  friend auto operator<=>(const Pair&, const Pair&) = default;
};

// Position of distinct pair (hi, lo) in lexicographic order over hi > lo.
inline std::size_t pair_index(Pair p) {
  return static_cast<std::size_t>(p.hi) * (p.hi - 1) / 2 + p.lo;
}
inline std::size_t pair_count(int num_arms) {
  return static_cast<std::size_t>(num_arms) * (num_arms - 1) / 2;
}
// All distinct pairs in lexicographic (hi, lo) order.
std::vector<Pair> distinct_pairs(int num_arms);

// "i-j" with 1-based arms, the key used by every JSON rate map.
std::string pair_key(Pair p);

struct MatrixOptions {
  // Accept mu_ij == 1/2 for i != j. Such matrices can be summarised but
  // the bandit algorithms refuse them.
  bool tie_tolerant = false;
  double symmetry_tolerance = 1e-9;
};

// K x K Bernoulli preference matrix. Only the entries below the diagonal
// (row > col) are stored; mu_ji is derived as 1 - mu_ij, so the symmetry
// identity holds exactly and the stored decimals are never rounded.
class PreferenceMatrix {
 public:
  PreferenceMatrix() = default;

  // Validates a dense row-major K x K table.
  static PreferenceMatrix from_dense(const std::vector<std::vector<double>>& rows,
                                     const MatrixOptions& options = {});
  // Builds from the strictly-lower entries in pair_index order.
  static PreferenceMatrix from_lower(int num_arms, std::vector<double> lower,
                                     const MatrixOptions& options = {});

  int size() const { return num_arms_; }
  double operator()(Arm i, Arm j) const {
    if (i == j) return 0.5;
    return i > j ? lower_[pair_index({i, j})] : 1.0 - lower_[pair_index({j, i})];
  }
  double at(Arm i, Arm j) const;

  bool has_ties() const;
  // min over i != j of |mu_ij - 1/2|; +inf for K = 1.
  double min_gap() const;

  PreferenceMatrix submatrix(const std::vector<Arm>& arms) const;
  std::vector<std::vector<double>> dense() const;
  const std::vector<double>& lower() const { return lower_; }

  friend bool operator==(const PreferenceMatrix&, const PreferenceMatrix&) = default;

 private:
  int num_arms_ = 0;
  std::vector<double> lower_;
};

// CSV: K lines of K comma-separated decimals; blank and '#' lines skipped.
PreferenceMatrix load_matrix(std::istream& in, const MatrixOptions& options = {});
PreferenceMatrix load_matrix_file(const std::string& path,
                                  const MatrixOptions& options = {});
// Writes with shortest round-trip decimals, so load(write(m)) == m.
void write_matrix(const PreferenceMatrix& matrix, std::ostream& out);

}  // namespace copeland
