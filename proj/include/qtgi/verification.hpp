#pragma once

#include <bitset>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qtgi/qtensor.hpp"

namespace qtgi {

inline constexpr double kPenroseTol = 1e-10;
inline constexpr double kDrazinTol = 1e-8;
inline constexpr double kAlongTol = 1e-8;

/// Named relative residuals; each is ||lhs - rhs|| / max(1, ||rhs||).
struct ResidualReport {
  std::vector<std::string> names;
  std::vector<double> values;
  double tol = 0.0;
  bool pass = false;

  double max_value() const;
};

/// Builds a report and sets pass = max(values) <= tol (false on any NaN).
ResidualReport make_report(std::vector<std::string> names, std::vector<double> values, double tol);

std::ostream& operator<<(std::ostream& os, const ResidualReport& r);

/// ||lhs - rhs||_F / max(1, ||rhs||_F).
double relative_residual(const QTensor& lhs, const QTensor& rhs);

/// Subset of the four Penrose equations (1) AXA = A, (2) XAX = X,
/// (3) (AX)^H = AX, (4) (XA)^H = XA.
class PenroseClass {
 public:
  PenroseClass() = default;
  /// Throws UnsupportedClass for an empty set or equation numbers outside 1..4.
  explicit PenroseClass(std::initializer_list<int> equations);
  /// Parses "1,3", "{1,3}" or "13".
  static PenroseClass parse(std::string_view text);

  bool has(int equation) const { return bits_.test(static_cast<std::size_t>(equation - 1)); }
  std::vector<int> equations() const;
  std::string to_string() const;

  friend bool operator==(const PenroseClass&, const PenroseClass&) = default;

 private:
  std::bitset<4> bits_;
};

ResidualReport penrose_residuals(const QTensor& a, const QTensor& x, double tol = kPenroseTol);

/// Residuals of A^{k+1} X = A^k, X A X = X, A X = X A.
ResidualReport drazin_residuals(const QTensor& a, const QTensor& x, std::size_t k, double tol = kDrazinTol);

enum class Side { Right, Left };

/// Right: Z A B = B, C A Z = C, Z A Z = Z.
/// Left (B, C read as D, E): D A Z = D, Z A E = E, Z A Z = Z.
ResidualReport inv_along_residuals(const QTensor& a, const QTensor& b, const QTensor& c, const QTensor& z, Side side,
                                   double tol = kAlongTol);

ResidualReport class_membership(const QTensor& a, const QTensor& x, const PenroseClass& cls, double tol = kAlongTol);

/// max(||Q^H Q - I||, ||Q Q^H - I||) / max(1, ||I||).
double orthogonality_residual(const QTensor& q);
/// Off-diagonal Frobenius mass over total mass (0 for the zero tensor).
double f_diagonal_residual(const QTensor& s);

}  // namespace qtgi
