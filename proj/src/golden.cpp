#include "qtgi/golden.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "qtgi/errors.hpp"
#include "qtgi/inverses.hpp"

namespace qtgi {

double max_abs_deviation(const QTensor& a, const QTensor& b) {
  if (!same_shape(a, b)) {
    throw DimensionMismatch("cannot compare tensors of different shapes");
  }
  double worst = 0.0;
  for (std::size_t e = 0; e < a.entries().size(); ++e) {
    const Quaternion d = a.entries()[e] - b.entries()[e];
    worst = std::max({worst, std::abs(d.w), std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  return worst;
}

GoldenComparison compare_reference_example(std::string_view name, std::optional<double> rtol) {
  const ReferenceExample& ex = reference_example(name);
  GoldenComparison g;
  g.name = ex.name;
  const QTensor& a = ex.input("A");
  if (ex.name == "mp") {
    g.computed = t_pinv(a, rtol);
    g.computed_report = penrose_residuals(a, g.computed, kPenroseTol);
    g.printed_report = penrose_residuals(a, ex.printed, kPrintedTol);
  } else if (ex.name == "drazin") {
    g.k = std::min(t_multi_index(a, rtol).k_max, 2 * a.n1());
    g.computed = t_drazin(a, rtol);
    g.computed_report = drazin_residuals(a, g.computed, g.k, kDrazinTol);
    g.printed_report = drazin_residuals(a, ex.printed, g.k, kPrintedTol);
  } else {
    const QTensor& b = ex.input("B");
    const QTensor& c = ex.input("C");
    // The uncertified value is kept so the report can show why certification
    // fails when the inverse along (B, C) does not exist.
    g.computed = t_inv_along_right_candidate(a, b, c, rtol);
    g.computed_report = inv_along_residuals(a, b, c, g.computed, Side::Right, kAlongTol);
    g.printed_report = inv_along_residuals(a, b, c, ex.printed, Side::Right, kPrintedTol);
  }
  g.max_deviation = max_abs_deviation(g.computed, ex.printed);
  return g;
}

void describe(std::ostream& os, const GoldenComparison& g) {
  os << "example " << g.name << '\n';
  if (g.name == "drazin") {
    os << "  certificate power k = " << g.k << '\n';
  }
  os << "  computed result (tol " << g.computed_report.tol << "):\n";
  for (std::size_t i = 0; i < g.computed_report.names.size(); ++i) {
    os << "    " << g.computed_report.names[i] << "  " << g.computed_report.values[i] << '\n';
  }
  os << "    -> " << (g.computed_report.pass ? "PASS" : "FAIL") << '\n';
  os << "  printed values (tol " << g.printed_report.tol << "):\n";
  for (std::size_t i = 0; i < g.printed_report.names.size(); ++i) {
    os << "    " << g.printed_report.names[i] << "  " << g.printed_report.values[i] << '\n';
  }
  os << "    -> " << (g.printed_report.pass ? "PASS" : "FAIL") << '\n';
  os << "  max |computed - printed| = " << g.max_deviation << '\n';
  if (!g.printed_is_valid()) {
    os << "  printed values do not satisfy the defining equations; not compared componentwise\n";
  } else {
    os << "  componentwise agreement: " << (g.values_match() ? "yes" : "no") << '\n';
  }
}

}  // namespace qtgi
