#include "copeland/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "copeland/errors.hpp"

namespace copeland {

namespace {

constexpr double kOptimalityTolerance = 1e-11;
constexpr double kRatioTieTolerance = 1e-12;
constexpr int kMaxPivots = 1000000;

class DualTableau {
 public:
  explicit DualTableau(const CoveringLp& lp)
      : n_(lp.cost.size()), m_(lp.rows.size()) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (!lp.upper.empty() && std::isfinite(lp.upper[j])) bounded_.push_back(j);
    }
    cols_ = m_ + bounded_.size() + n_;
    cells_.assign(n_ * cols_, 0.0);
    rhs_ = lp.cost;
    reduced_.assign(cols_, 0.0);
    basis_.resize(n_);

    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t j = 0; j < n_; ++j) at(j, r) = lp.rows[r][j];
      reduced_[r] = -1.0;
    }
    for (std::size_t b = 0; b < bounded_.size(); ++b) {
      at(bounded_[b], m_ + b) = -1.0;
      reduced_[m_ + b] = lp.upper[bounded_[b]];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      at(j, slack(j)) = 1.0;
      basis_[j] = slack(j);
    }
  }

  int solve() {
    int pivots = 0;
    while (true) {
      std::size_t entering = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (reduced_[c] < -kOptimalityTolerance) {
          entering = c;
          break;
        }
      }
      if (entering == cols_) return pivots;

      std::size_t leaving = n_;
      double best = 0.0;
      bool tiny_pivot_seen = false;
      for (std::size_t i = 0; i < n_; ++i) {
        const double a = at(i, entering);
        if (a <= 0.0) continue;
        if (a < kPivotTolerance) {
          tiny_pivot_seen = true;
          continue;
        }
        const double ratio = rhs_[i] / a;
        const double slack_band = kRatioTieTolerance * (1.0 + std::abs(best));
        if (leaving == n_ || ratio < best - slack_band ||
            (ratio <= best + slack_band && basis_[i] < basis_[leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (leaving == n_) {
        if (tiny_pivot_seen) {
          throw Error(ErrorKind::kNumericalInstability,
                      "simplex: only pivots below tolerance remain");
        }
        throw ValidationError(
            "covering program is infeasible: some constraint cannot reach 1");
      }
      pivot(leaving, entering);
      if (++pivots > kMaxPivots) {
        throw Error(ErrorKind::kNumericalInstability, "simplex: pivot limit exceeded");
      }
    }
  }

  // Primal values are the shadow prices of the dual rows.
  std::vector<double> primal() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = std::max(0.0, reduced_[slack(j)]);
    return x;
  }
  double value() const { return objective_; }

 private:
  double& at(std::size_t row, std::size_t col) { return cells_[row * cols_ + col]; }
  double at(std::size_t row, std::size_t col) const {
    return cells_[row * cols_ + col];
  }
  std::size_t slack(std::size_t j) const { return m_ + bounded_.size() + j; }

  void pivot(std::size_t row, std::size_t col) {
    const double inv = 1.0 / at(row, col);
    double* prow = &cells_[row * cols_];
    for (std::size_t c = 0; c < cols_; ++c) prow[c] *= inv;
    prow[col] = 1.0;
    rhs_[row] *= inv;

    for (std::size_t i = 0; i < n_; ++i) {
      if (i == row) continue;
      double* r = &cells_[i * cols_];
      const double f = r[col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < cols_; ++c) r[c] -= f * prow[c];
      r[col] = 0.0;
      rhs_[i] -= f * rhs_[row];
      if (rhs_[i] < 0.0 && rhs_[i] > -1e-13) rhs_[i] = 0.0;
    }
    const double f = reduced_[col];
    if (f != 0.0) {
      for (std::size_t c = 0; c < cols_; ++c) reduced_[c] -= f * prow[c];
      reduced_[col] = 0.0;
      objective_ -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  std::size_t n_;
  std::size_t m_;
  std::vector<std::size_t> bounded_;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
  std::vector<double> rhs_;
  std::vector<double> reduced_;
  std::vector<std::size_t> basis_;
  double objective_ = 0.0;
};

void validate(const CoveringLp& lp) {
  const std::size_t n = lp.cost.size();
  if (!lp.upper.empty() && lp.upper.size() != n) {
    throw ValidationError("simplex: bound vector length differs from cost length");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!(lp.cost[j] >= 0.0) || !std::isfinite(lp.cost[j])) {
      throw ValidationError("simplex: costs must be finite and nonnegative");
    }
    if (!lp.upper.empty() && !(lp.upper[j] >= 0.0)) {
      throw ValidationError("simplex: upper bounds must be nonnegative");
    }
  }
  for (const auto& row : lp.rows) {
    if (row.size() != n) {
      throw ValidationError("simplex: constraint row length differs from cost length");
    }
    for (double a : row) {
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw ValidationError("simplex: constraint coefficients must be nonnegative");
      }
    }
  }
}

}  // namespace

LpSolution simplex_solve(const CoveringLp& lp) {
  validate(lp);
  DualTableau tableau(lp);
  LpSolution out;
  out.pivots = tableau.solve();
  out.x = tableau.primal();
  if (!lp.upper.empty()) {
    for (std::size_t j = 0; j < out.x.size(); ++j) {
      out.x[j] = std::min(out.x[j], lp.upper[j]);
    }
  }
  out.value = tableau.value();
  return out;
}

}  // namespace copeland
