#include "qtgi/errors.hpp"

#include <sstream>

namespace qtgi {

namespace {

std::string residual_message(const std::vector<std::string>& names, const std::vector<double>& values,
                             double tol) {
  std::ostringstream os;
  os << "not invertible along the given pair (tol " << tol << "):";
  for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) {
    os << ' ' << names[i] << '=' << values[i];
  }
  return os.str();
}

}  // namespace

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

StructureViolation::StructureViolation(double deviation, double tol)
    : Error("chi-structure deviation " + format_number(deviation) + " exceeds " + format_number(tol)),
      deviation_(deviation) {}

RankMismatch::RankMismatch(std::size_t rank_b, std::size_t rank_c)
    : Error("rank mismatch: rank(B)=" + std::to_string(rank_b) + ", rank(C)=" + std::to_string(rank_c)) {}

Singular::Singular(std::size_t frequency)
    : Error("tensor is singular: frequency block " + std::to_string(frequency + 1) + " is not invertible"),
      frequency_(frequency) {}

IndexTooLarge::IndexTooLarge(std::size_t frequency, std::size_t index)
    : Error("group inverse does not exist: frequency block " + std::to_string(frequency + 1) +
            " has index " + std::to_string(index)),
      frequency_(frequency),
      index_(index) {}

NotInvertibleAlong::NotInvertibleAlong(std::vector<std::string> names, std::vector<double> residuals,
                                       double tol)
    : Error(residual_message(names, residuals, tol)), names_(std::move(names)), residuals_(std::move(residuals)) {}

Inconsistent::Inconsistent(double residual, double tol)
    : Error("equation A*X*B = C is inconsistent: residual " + format_number(residual) + " > " + format_number(tol)),
      residual_(residual) {}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& detail)
    : Error(std::string(to_string(kind)) + " at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
            detail),
      kind_(kind),
      line_(line),
      column_(column) {}

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::BadMagic: return "BadMagic";
    case ParseErrorKind::BadDims: return "BadDims";
    case ParseErrorKind::EntryCountMismatch: return "EntryCountMismatch";
    case ParseErrorKind::MalformedNumber: return "MalformedNumber";
  }
  return "ParseError";
}

}  // namespace qtgi
