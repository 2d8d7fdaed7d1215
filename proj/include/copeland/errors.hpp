#pragma once

#include <stdexcept>
#include <string>

namespace copeland {

enum class ErrorKind {
  kTiedPreference,
  kDomain,
  kParse,
  kValidation,
  kUnknownDataset,
  kExhaustedRejections,
  kNotAWinner,
  kTooLarge,
  kNumericalInstability,
  kInternalInconsistency,
  kIo,
};

const char* to_string(ErrorKind kind);

// Every library failure is reported through this type; `kind()` lets the
// CLI map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  // Arms are reported 1-based; residual is |mu_ij + mu_ji - 1| or the
  // offending magnitude for non-symmetry violations.
  ValidationError(const std::string& what, int row, int col, double residual)
      : Error(ErrorKind::kValidation, what),
        row_(row),
        col_(col),
        residual_(residual) {}
  explicit ValidationError(const std::string& what)
      : ValidationError(what, 0, 0, 0.0) {}

  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }
  double residual() const noexcept { return residual_; }

 private:
  int row_;
  int col_;
  double residual_;
};

}  // namespace copeland
