#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qtgi/qtensor.hpp"
#include "qtgi/verification.hpp"

namespace qtgi {

/// A = U * S * V^H with U, V orthogonal and S F-diagonal.
struct TSVD {
  QTensor U;  // n1 x n1 x n3
  QTensor S;  // n1 x n2 x n3
  QTensor V;  // n2 x n2 x n3
};

/// Indices of the half-spectrum chi-blocks (frequencies 0 .. n3/2).
struct MultiIndex {
  std::vector<std::size_t> indices;
  std::size_t k_max = 0;
};

/// An inverse together with the spatial-domain certificate that was checked
/// against it.
struct Certified {
  QTensor value;
  ResidualReport report;
};

/// Rank tolerances below are relative to the largest singular value over the
/// whole frequency stack; unset means frequency_rtol of the blocks involved.

QTensor t_pinv(const QTensor& a, std::optional<double> rtol = std::nullopt);
/// t_pinv plus its four Penrose residuals (oracle products).
Certified t_pinv_certified(const QTensor& a, std::optional<double> rtol = std::nullopt, double tol = kPenroseTol);

TSVD t_svd(const QTensor& a);

MultiIndex t_multi_index(const QTensor& a, std::optional<double> rtol = std::nullopt);

QTensor t_drazin(const QTensor& a, std::optional<double> rtol = std::nullopt);
/// t_drazin plus its residuals at k = k_max (capped at 2 n1).
Certified t_drazin_certified(const QTensor& a, std::optional<double> rtol = std::nullopt, double tol = kDrazinTol);

/// Throws IndexTooLarge when some frequency block has index > 1, and
/// CertificationFailure if the result misses A X A = A, X A X = X, A X = X A.
QTensor t_group(const QTensor& a, std::optional<double> rtol = std::nullopt, double tol = kDrazinTol);

struct TCoreNilpotent {
  QTensor core;       // A * A * A^D
  QTensor nilpotent;  // A - core
};
TCoreNilpotent t_core_nilpotent(const QTensor& a, std::optional<double> rtol = std::nullopt);

/// B * (C * A * B)^+ * C per frequency, without the existence check.
QTensor t_inv_along_right_candidate(const QTensor& a, const QTensor& b, const QTensor& c,
                                    std::optional<double> rtol = std::nullopt);
/// E * (D * A * E)^+ * D per frequency, without the existence check.
QTensor t_inv_along_left_candidate(const QTensor& a, const QTensor& d, const QTensor& e,
                                   std::optional<double> rtol = std::nullopt);

/// Z = B * (C * A * B)^+ * C, computed per frequency and certified with
/// Z*A*B = B and C*A*Z = C. Throws NotInvertibleAlong when that fails.
QTensor t_inv_along_right(const QTensor& a, const QTensor& b, const QTensor& c,
                          std::optional<double> rtol = std::nullopt, double tol = kAlongTol);
/// Z = E * (D * A * E)^+ * D, certified with D*A*Z = D and Z*A*E = E.
QTensor t_inv_along_left(const QTensor& a, const QTensor& d, const QTensor& e,
                         std::optional<double> rtol = std::nullopt, double tol = kAlongTol);
/// Full-rank route: per frequency F^ (G~ A F^)^{-1} G~ from B = F^ G^ and
/// C = F~ G~. Throws NoFullRankDecomposition when the block ranks of B and C
/// are not one common value, SingularCore when G~ A F^ is singular.
QTensor t_inv_along_right_frd(const QTensor& a, const QTensor& b, const QTensor& c,
                              std::optional<double> rtol = std::nullopt, double tol = kAlongTol);

/// General solution of A * X * B = C built from the Moore-Penrose inverses:
/// X = A^+ C B^+ + W - A^+ A W B B^+. `w` defaults to zero. Throws
/// Inconsistent when A A^+ C B^+ B != C.
QTensor solve_sandwich(const QTensor& a, const QTensor& b, const QTensor& c, const std::optional<QTensor>& w = {},
                       double tol = kAlongTol);

/// Member of A{1}, A{1,3} or A{1,4} parametrized by Z, with the Moore-Penrose
/// inverse as the base inverse. Other classes throw UnsupportedClass.
QTensor gen_family(const QTensor& a, const QTensor& z, const PenroseClass& cls, double tol = kAlongTol);

}  // namespace qtgi
