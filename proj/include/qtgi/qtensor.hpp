#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qtgi/qmatrix.hpp"

namespace qtgi {

/// Third-order quaternion tensor n1 x n2 x n3, stored slice-major: frontal
/// slice k is a contiguous row-major n1 x n2 block.
class QTensor {
 public:
  QTensor() = default;
  QTensor(std::size_t n1, std::size_t n2, std::size_t n3) : n1_(n1), n2_(n2), n3_(n3), data_(n1 * n2 * n3) {}
  /// Builds a tensor from its frontal slices, which must share one shape.
  static QTensor from_slices(const std::vector<QMatrix>& slices);
  static QTensor zero(std::size_t n1, std::size_t n2, std::size_t n3) { return {n1, n2, n3}; }

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t n3() const { return n3_; }

  Quaternion& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(k * n1_ + i) * n2_ + j]; }
  const Quaternion& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(k * n1_ + i) * n2_ + j];
  }

  const std::vector<Quaternion>& entries() const { return data_; }
  std::vector<Quaternion>& entries() { return data_; }

  /// Frontal slice A(:, :, k), 0-based.
  QMatrix slice(std::size_t k) const;
  void set_slice(std::size_t k, const QMatrix& m);

  QTensor& operator+=(const QTensor& o);
  QTensor& operator-=(const QTensor& o);
  QTensor& operator*=(double s);

  friend bool operator==(const QTensor&, const QTensor&) = default;

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::size_t n3_ = 0;
  std::vector<Quaternion> data_;
};

QTensor operator+(QTensor a, const QTensor& b);
QTensor operator-(QTensor a, const QTensor& b);
QTensor operator*(QTensor a, double s);
QTensor operator*(double s, QTensor a);

bool same_shape(const QTensor& a, const QTensor& b);

/// circ(unfold(A)): block (r, c) holds slice (r - c) mod n3.
struct BlockCirculant {
  QMatrix inner;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n3 = 0;
};

/// Vertical stack of the frontal slices (n1*n3 x n2).
QMatrix unfold(const QTensor& a);
/// Inverse of unfold. Throws DimensionMismatch if rows are not divisible by n3.
QTensor fold(const QMatrix& m, std::size_t n3);
BlockCirculant circ(const QTensor& a);

/// T-product fold(circ(A) * unfold(B)) evaluated entirely in quaternion
/// arithmetic. This is the reference product; every certificate uses it.
QTensor tprod_oracle(const QTensor& a, const QTensor& b);

/// Per-frequency complex blocks of the chi-embedded block circulant.
///
/// blocks[i] = sum_k w^{ik} chi(A(:, :, k)), w = exp(-2 pi i / n3), which is
/// the unnormalized DFT along the third mode. The complex DFT does not map
/// quaternion slices to quaternion blocks (j F != F j), but after the
/// chi-embedding the block circulant is an ordinary complex one and the DFT
/// diagonalizes it. Quaternion structure survives as the pairing
/// blocks[mirror(i)] = jconj(blocks[i]), mirror(i) = (n3 - i) mod n3.
struct FrequencyStack {
  std::vector<CMatrix> blocks;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n3 = 0;

  static std::size_t mirror(std::size_t i, std::size_t n3) { return (n3 - i) % n3; }
  /// Frequencies 0 .. n3/2; the rest follow from the pairing.
  static std::size_t half_count(std::size_t n3) { return n3 / 2 + 1; }
  static bool self_paired(std::size_t i, std::size_t n3) { return mirror(i, n3) == i; }

  /// Largest relative pairing violation over all frequencies.
  double pairing_deviation() const;
  /// Largest singular value over all blocks: the reference for every rank
  /// decision on this stack.
  double scale() const;
};

/// Default rank tolerance for rows x cols complex blocks of an n3-point
/// spectrum: max(rows, cols) * n3 * 2^-52. Each block sums n3 embedded
/// slices, so its roundoff grows with n3.
double frequency_rtol(std::size_t rows, std::size_t cols, std::size_t n3);

/// Builds a full stack from the half spectrum, deriving the mirrored blocks
/// by J-conjugation.
FrequencyStack complete_spectrum(std::vector<CMatrix> half, std::size_t n1, std::size_t n2, std::size_t n3);

/// Evaluates `block(i)` for every half-spectrum frequency (in parallel per
/// worker_count()) and completes the spectrum by pairing. `rows`/`cols` are
/// the quaternion dimensions of each result block.
FrequencyStack map_half_spectrum(std::size_t rows, std::size_t cols, std::size_t n3,
                                 const std::function<CMatrix(std::size_t)>& block);

FrequencyStack to_frequency(const QTensor& a);
/// Inverse DFT (scale 1/n3) then chi-extraction per slice. Throws
/// StructureViolation when a slice deviates from a chi-image by more than
/// `tol` relative to the whole stack.
QTensor from_frequency(const FrequencyStack& fs, double tol = 1e-8);

/// T-product through the frequency domain; agrees with tprod_oracle to
/// roundoff.
QTensor tprod_fft(const QTensor& a, const QTensor& b);

/// A^H: slice 0 conjugate-transposed, slice i <- slice(n3 - i)^H.
QTensor t_conj_transpose(const QTensor& a);
QTensor t_identity(std::size_t n, std::size_t n3);
/// Throws Singular naming the first singular frequency block. Singularity is
/// judged against the stack scale of A.
QTensor t_inverse(const QTensor& a, std::optional<double> rtol = std::nullopt);
/// k-fold oracle T-product, A^0 = I.
QTensor t_power(const QTensor& a, std::size_t k);
double t_fro_norm(const QTensor& a);

}  // namespace qtgi
