#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtgi {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroDivisor : public Error {
 public:
  ZeroDivisor() : Error("inverse of the zero quaternion") {}
};

/// A complex block that should be a chi-image is not. Signals a bug upstream
/// of the extraction, never bad user data.
class StructureViolation : public Error {
 public:
  StructureViolation(double deviation, double tol);
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class RankZero : public Error {
 public:
  RankZero() : Error("matrix is numerically zero; no full-rank decomposition") {}
};

class RankMismatch : public Error {
 public:
  RankMismatch(std::size_t rank_b, std::size_t rank_c);
};

class SingularCore : public Error {
 public:
  using Error::Error;
};

/// Tensor inverse does not exist: frequency block `frequency` (0-based) is singular.
class Singular : public Error {
 public:
  explicit Singular(std::size_t frequency);
  std::size_t frequency() const { return frequency_; }

 private:
  std::size_t frequency_;
};

class IndexTooLarge : public Error {
 public:
  IndexTooLarge(std::size_t frequency, std::size_t index);
  std::size_t frequency() const { return frequency_; }
  std::size_t index() const { return index_; }

 private:
  std::size_t frequency_;
  std::size_t index_;
};

/// Existence failure of an inverse along two matrices/tensors, carrying the
/// certification residuals that exceeded tolerance.
class NotInvertibleAlong : public Error {
 public:
  NotInvertibleAlong(std::vector<std::string> names, std::vector<double> residuals, double tol);
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<std::string> names_;
  std::vector<double> residuals_;
};

class NoFullRankDecomposition : public Error {
 public:
  using Error::Error;
};

class Inconsistent : public Error {
 public:
  Inconsistent(double residual, double tol);
  double residual() const { return residual_; }

 private:
  double residual_;
};

class UnsupportedClass : public Error {
 public:
  using Error::Error;
};

/// A computed result failed its own defining-equation certificate.
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind { BadMagic, BadDims, EntryCountMismatch, MalformedNumber };

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& detail);
  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

const char* to_string(ParseErrorKind kind);

/// Shortest general-format rendering of a real for messages (e.g. 1e-08).
std::string format_number(double v);

}  // namespace qtgi
