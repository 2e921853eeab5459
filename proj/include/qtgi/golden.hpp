#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "qtgi/fixtures.hpp"
#include "qtgi/verification.hpp"

namespace qtgi {

/// Printed values carry 4 decimals, so they are held to this tolerance.
inline constexpr double kPrintedTol = 5e-4;

/// Outcome of recomputing one reference example and comparing it with the
/// printed values.
///
/// Protocol: the printed tensor is first checked against the defining
/// equations at kPrintedTol. Only if it passes is a componentwise match
/// required (uniqueness forces agreement); otherwise the example is judged by
/// our own certificate alone and the discrepancy is reported.
struct GoldenComparison {
  std::string name;
  QTensor computed;
  ResidualReport computed_report;  // our result, at the operation's tolerance
  ResidualReport printed_report;   // printed tensor, at kPrintedTol
  double max_deviation = 0.0;      // max |ours - printed| over all components
  std::size_t k = 0;               // power used by the Drazin certificate

  bool printed_is_valid() const { return printed_report.pass; }
  bool values_match() const { return max_deviation <= kPrintedTol; }
  /// Criterion: our certificate passes and, when the printed tensor is itself
  /// valid, the values agree.
  bool satisfied() const { return computed_report.pass && (!printed_is_valid() || values_match()); }
};

GoldenComparison compare_reference_example(std::string_view name, std::optional<double> rtol = std::nullopt);

double max_abs_deviation(const QTensor& a, const QTensor& b);

/// Human-readable summary, also used for the committed report.
void describe(std::ostream& os, const GoldenComparison& g);

}  // namespace qtgi
