#include "copeland/preference_matrix.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "copeland/errors.hpp"

namespace copeland {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kTiedPreference: return "TiedPreference";
    case ErrorKind::kDomain: return "DomainError";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kValidation: return "ValidationError";
    case ErrorKind::kUnknownDataset: return "UnknownDataset";
    case ErrorKind::kExhaustedRejections: return "ExhaustedRejections";
    case ErrorKind::kNotAWinner: return "NotAWinner";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kNumericalInstability: return "NumericalInstability";
    case ErrorKind::kInternalInconsistency: return "InternalInconsistency";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

std::vector<Pair> distinct_pairs(int num_arms) {
  std::vector<Pair> pairs;
  pairs.reserve(pair_count(num_arms));
  for (Arm i = 1; i < num_arms; ++i) {
    for (Arm j = 0; j < i; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

std::string pair_key(Pair p) {
  return std::to_string(p.hi + 1) + "-" + std::to_string(p.lo + 1);
}

namespace {

void check_probability(double v, int row, int col) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << "entry (" << row + 1 << "," << col + 1 << ") = " << v
        << " is not a probability";
    throw ValidationError(msg.str(), row + 1, col + 1, v);
  }
}

void check_ties(int num_arms, const std::vector<double>& lower,
                const MatrixOptions& options) {
  if (options.tie_tolerant) return;
  for (Pair p : distinct_pairs(num_arms)) {
    if (lower[pair_index(p)] == 0.5) {
      std::ostringstream msg;
      msg << "mu_" << p.hi + 1 << "," << p.lo + 1
          << " = 1/2; strict gaps required (load tie-tolerant to accept)";
      throw Error(ErrorKind::kTiedPreference, msg.str());
    }
  }
}

}  // namespace

PreferenceMatrix PreferenceMatrix::from_lower(int num_arms,
                                              std::vector<double> lower,
                                              const MatrixOptions& options) {
  if (num_arms < 1) throw ValidationError("matrix must have at least one arm");
  if (lower.size() != pair_count(num_arms)) {
    throw ValidationError("lower-triangle size does not match K");
  }
  for (Pair p : distinct_pairs(num_arms)) {
    check_probability(lower[pair_index(p)], p.hi, p.lo);
  }
  check_ties(num_arms, lower, options);
  PreferenceMatrix m;
  m.num_arms_ = num_arms;
  m.lower_ = std::move(lower);
  return m;
}

PreferenceMatrix PreferenceMatrix::from_dense(
    const std::vector<std::vector<double>>& rows, const MatrixOptions& options) {
  const int k = static_cast<int>(rows.size());
  if (k < 1) throw ValidationError("matrix must have at least one arm");
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(rows[i].size()) != k) {
      std::ostringstream msg;
      msg << "row " << i + 1 << " has " << rows[i].size() << " entries, expected "
          << k;
      throw ValidationError(msg.str(), i + 1, 0, 0.0);
    }
  }
  std::vector<double> lower(pair_count(k));
  for (int i = 0; i < k; ++i) {
    check_probability(rows[i][i], i, i);
    const double diag = std::abs(rows[i][i] - 0.5);
    if (diag > options.symmetry_tolerance) {
      std::ostringstream msg;
      msg << "diagonal entry (" << i + 1 << "," << i + 1 << ") must be 0.5";
      throw ValidationError(msg.str(), i + 1, i + 1, diag);
    }
    for (int j = 0; j < i; ++j) {
      check_probability(rows[i][j], i, j);
      check_probability(rows[j][i], j, i);
      const double residual = std::abs(rows[i][j] + rows[j][i] - 1.0);
      if (residual > options.symmetry_tolerance) {
        std::ostringstream msg;
        msg << "mu_" << i + 1 << "," << j + 1 << " + mu_" << j + 1 << ","
            << i + 1 << " deviates from 1 by " << residual;
        throw ValidationError(msg.str(), i + 1, j + 1, residual);
      }
      lower[pair_index({i, j})] = rows[i][j];
    }
  }
  return from_lower(k, std::move(lower), options);
}

double PreferenceMatrix::at(Arm i, Arm j) const {
  if (i < 0 || j < 0 || i >= num_arms_ || j >= num_arms_) {
    throw std::out_of_range("arm index out of range");
  }
  return (*this)(i, j);
}

bool PreferenceMatrix::has_ties() const {
  for (double v : lower_) {
    if (v == 0.5) return true;
  }
  return false;
}

double PreferenceMatrix::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (double v : lower_) gap = std::min(gap, std::abs(v - 0.5));
  return gap;
}

PreferenceMatrix PreferenceMatrix::submatrix(const std::vector<Arm>& arms) const {
  const int k = static_cast<int>(arms.size());
  std::vector<double> lower(pair_count(k));
  for (int a = 1; a < k; ++a) {
    for (int b = 0; b < a; ++b) {
      lower[pair_index({a, b})] = at(arms[a], arms[b]);
    }
  }
  MatrixOptions opts;
  opts.tie_tolerant = true;
  return from_lower(k, std::move(lower), opts);
}

std::vector<std::vector<double>> PreferenceMatrix::dense() const {
  std::vector<std::vector<double>> rows(num_arms_, std::vector<double>(num_arms_));
  for (int i = 0; i < num_arms_; ++i) {
    for (int j = 0; j < num_arms_; ++j) rows[i][j] = (*this)(i, j);
  }
  return rows;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_decimal(const std::string& field, int line_no, int col) {
  const std::string text = trim(field);
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    std::ostringstream msg;
    msg << "line " << line_no << ", field " << col << ": cannot parse '" << text
        << "' as a decimal";
    throw Error(ErrorKind::kParse, msg.str());
  }
  return value;
}

}  // namespace

PreferenceMatrix load_matrix(std::istream& in, const MatrixOptions& options) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      row.push_back(parse_decimal(body.substr(start, comma - start), line_no,
                                  static_cast<int>(row.size()) + 1));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw Error(ErrorKind::kIo, "failed reading matrix stream");
  if (rows.empty()) throw Error(ErrorKind::kParse, "no matrix rows found");
  return PreferenceMatrix::from_dense(rows, options);
}

PreferenceMatrix load_matrix_file(const std::string& path,
                                  const MatrixOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open matrix file '" + path + "'");
  return load_matrix(in, options);
}

void write_matrix(const PreferenceMatrix& matrix, std::ostream& out) {
  char buf[64];
  for (int i = 0; i < matrix.size(); ++i) {
    for (int j = 0; j < matrix.size(); ++j) {
      if (j > 0) out << ',';
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, matrix(i, j));
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::kIo, "failed writing matrix");
}

}  // namespace copeland
