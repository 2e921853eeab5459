#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qtgi/quaternion.hpp"

namespace qtgi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Dense quaternion matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Row-wise literal; every row must have the same length.
  QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(const std::vector<Quaternion>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Quaternion>& entries() const { return data_; }
  std::vector<Quaternion>& entries() { return data_; }

  QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const QMatrix& b);
  QMatrix cols_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }

  /// Conjugate transpose A^H.
  QMatrix adjoint() const;
  double fro_norm() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);
/// Quaternion matrix product; throws DimensionMismatch.
QMatrix operator*(const QMatrix& a, const QMatrix& b);

/// M^k with M^0 = I.
QMatrix qm_power(const QMatrix& m, std::size_t k);

/// Complex adjoint of a quaternion matrix together with its block partition.
struct ChiMatrix {
  CMatrix inner;
  std::size_t m = 0;
  std::size_t n = 0;
};

/// J_m conj(X) J_n^{-1} for a 2m x 2n complex matrix, J = [[0, I], [-I, 0]].
/// chi-images are exactly its fixed points.
CMatrix jconj(const CMatrix& x);

/// ||X - jconj(X)||_F / ||X||_F (0 for X = 0).
double chi_deviation(const CMatrix& x);

/// M = Ma + Mb j  ->  [[Ma, Mb], [-conj(Mb), conj(Ma)]].
ChiMatrix chi_embed(const QMatrix& m);

/// Projects onto the chi-symmetric part and reads back the quaternion matrix.
/// Throws StructureViolation when the pre-projection deviation exceeds tol.
QMatrix chi_extract(const ChiMatrix& c, double tol = 1e-12);
QMatrix chi_extract(const CMatrix& inner, double tol = 1e-12);

/// A quaternion vector q and the complex vector [qa; -conj(qb)] (first column
/// of chi(q)) determine each other; this is that real-linear bijection.
std::vector<Quaternion> fold_complex_column(const Eigen::Ref<const Eigen::VectorXcd>& c);

struct QMatSVD {
  QMatrix U;  // m x m
  RVector S;  // min(m, n), descending
  QMatrix V;  // n x n
};

struct FullRankDecomp {
  QMatrix F;  // m x r
  QMatrix G;  // r x n
  std::size_t r = 0;
};

/// max(rows, cols) * 2^-52.
double default_rtol(std::size_t rows, std::size_t cols);

/// Quaternion singular values (descending), one per symplectic pair of chi(M).
RVector qm_singular_values(const QMatrix& m);

QMatSVD qm_svd(const QMatrix& m);
std::size_t qm_rank(const QMatrix& m, std::optional<double> rtol = std::nullopt);
QMatrix qm_pinv(const QMatrix& m, std::optional<double> rtol = std::nullopt);
/// Inverse of a square matrix via LU on the chi-image. Throws SingularCore if
/// the matrix is numerically singular.
QMatrix qm_inverse(const QMatrix& m, std::optional<double> rtol = std::nullopt);
std::size_t qm_index(const QMatrix& m, std::optional<double> rtol = std::nullopt);
QMatrix qm_drazin(const QMatrix& m, std::optional<double> rtol = std::nullopt);

struct CoreNilpotent {
  QMatrix core;
  QMatrix nilpotent;
};
CoreNilpotent qm_core_nilpotent(const QMatrix& m, std::optional<double> rtol = std::nullopt);

FullRankDecomp qm_frd(const QMatrix& m, std::optional<double> rtol = std::nullopt);

/// Right inverse of A along (B, C): Z = B (C A B)^+ C, certified by
/// Z A B = B and C A Z = C. Throws NotInvertibleAlong otherwise.
QMatrix qm_inv_along_right(const QMatrix& a, const QMatrix& b, const QMatrix& c, double tol = 1e-8);
/// Left inverse of A along (D, E): Z = E (D A E)^+ D, certified by
/// D A Z = D and Z A E = E.
QMatrix qm_inv_along_left(const QMatrix& a, const QMatrix& d, const QMatrix& e, double tol = 1e-8);
/// Full-rank route F^ (G~ A F^)^{-1} G~ with B = F^ G^ and C = F~ G~.
QMatrix qm_inv_along_right_frd(const QMatrix& a, const QMatrix& b, const QMatrix& c,
                               std::optional<double> rtol = std::nullopt);

}  // namespace qtgi
