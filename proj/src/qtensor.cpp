#include "qtgi/qtensor.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qtgi/complex_blocks.hpp"
#include "qtgi/errors.hpp"
#include "qtgi/parallel.hpp"

namespace qtgi {

namespace {

std::string dims(const QTensor& a) {
  return std::to_string(a.n1()) + "x" + std::to_string(a.n2()) + "x" + std::to_string(a.n3());
}

// exp(-2 pi i * step / n), exact at multiples of a quarter turn.
Complex twiddle(std::size_t step, std::size_t n) {
  step %= n;
  if ((4 * step) % n == 0) {
    switch ((4 * step) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, -1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, 1.0};
    }
  }
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(step) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

QTensor QTensor::from_slices(const std::vector<QMatrix>& slices) {
  if (slices.empty()) {
    return {};
  }
  QTensor out(slices.front().rows(), slices.front().cols(), slices.size());
  for (std::size_t k = 0; k < slices.size(); ++k) {
    out.set_slice(k, slices[k]);
  }
  return out;
}

QMatrix QTensor::slice(std::size_t k) const {
  QMatrix out(n1_, n2_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(k * n1_ * n2_), n1_ * n2_, out.entries().begin());
  return out;
}

void QTensor::set_slice(std::size_t k, const QMatrix& m) {
  if (m.rows() != n1_ || m.cols() != n2_ || k >= n3_) {
    throw DimensionMismatch("slice does not fit tensor " + dims(*this));
  }
  std::copy(m.entries().begin(), m.entries().end(), data_.begin() + static_cast<std::ptrdiff_t>(k * n1_ * n2_));
}

bool same_shape(const QTensor& a, const QTensor& b) {
  return a.n1() == b.n1() && a.n2() == b.n2() && a.n3() == b.n3();
}

QTensor& QTensor::operator+=(const QTensor& o) {
  if (!same_shape(*this, o)) {
    throw DimensionMismatch("sum of " + dims(*this) + " and " + dims(o));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] += o.data_[i];
  }
  return *this;
}

QTensor& QTensor::operator-=(const QTensor& o) {
  if (!same_shape(*this, o)) {
    throw DimensionMismatch("difference of " + dims(*this) + " and " + dims(o));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] -= o.data_[i];
  }
  return *this;
}

QTensor& QTensor::operator*=(double s) {
  for (auto& q : data_) {
    q *= s;
  }
  return *this;
}

QTensor operator+(QTensor a, const QTensor& b) { return a += b; }
QTensor operator-(QTensor a, const QTensor& b) { return a -= b; }
QTensor operator*(QTensor a, double s) { return a *= s; }
QTensor operator*(double s, QTensor a) { return a *= s; }

QMatrix unfold(const QTensor& a) {
  QMatrix out(a.n1() * a.n3(), a.n2());
  out.entries() = a.entries();
  return out;
}

QTensor fold(const QMatrix& m, std::size_t n3) {
  if (n3 == 0 || m.rows() % n3 != 0) {
    throw DimensionMismatch("cannot fold " + std::to_string(m.rows()) + " rows into " + std::to_string(n3) +
                            " slices");
  }
  QTensor out(m.rows() / n3, m.cols(), n3);
  out.entries() = m.entries();
  return out;
}

BlockCirculant circ(const QTensor& a) {
  const std::size_t n3 = a.n3();
  BlockCirculant out{QMatrix(a.n1() * n3, a.n2() * n3), a.n1(), a.n2(), n3};
  for (std::size_t r = 0; r < n3; ++r) {
    for (std::size_t c = 0; c < n3; ++c) {
      out.inner.set_block(r * a.n1(), c * a.n2(), a.slice((r + n3 - c) % n3));
    }
  }
  return out;
}

QTensor tprod_oracle(const QTensor& a, const QTensor& b) {
  if (a.n2() != b.n1() || a.n3() != b.n3()) {
    throw DimensionMismatch("T-product of " + dims(a) + " and " + dims(b));
  }
  return fold(circ(a).inner * unfold(b), a.n3());
}

double FrequencyStack::pairing_deviation() const {
  double total = 0.0;
  for (const auto& b : blocks) {
    total += b.squaredNorm();
  }
  total = std::sqrt(total);
  if (total == 0.0) {
    return 0.0;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double dev = (blocks[mirror(i, n3)] - jconj(blocks[i])).norm() / total;
    worst = std::max(worst, dev);
  }
  return worst;
}

double frequency_rtol(std::size_t rows, std::size_t cols, std::size_t n3) {
  return default_rtol(rows, cols) * static_cast<double>(std::max<std::size_t>(n3, 1));
}

double FrequencyStack::scale() const {
  double out = 0.0;
  // Mirrored blocks share their singular values.
  for (std::size_t i = 0; i < blocks.size() && i < half_count(n3); ++i) {
    if (blocks[i].size() > 0) {
      out = std::max(out, blocks::singular_values(blocks[i])(0));
    }
  }
  return out;
}

FrequencyStack complete_spectrum(std::vector<CMatrix> half, std::size_t n1, std::size_t n2, std::size_t n3) {
  FrequencyStack out{std::vector<CMatrix>(n3), n1, n2, n3};
  for (std::size_t i = 0; i < half.size() && i < n3; ++i) {
    const std::size_t m = FrequencyStack::mirror(i, n3);
    if (m != i) {
      out.blocks[m] = jconj(half[i]);
    }
    out.blocks[i] = std::move(half[i]);
  }
  return out;
}

FrequencyStack map_half_spectrum(std::size_t rows, std::size_t cols, std::size_t n3,
                                 const std::function<CMatrix(std::size_t)>& block) {
  std::vector<CMatrix> half(FrequencyStack::half_count(n3));
  parallel_for(half.size(), [&](std::size_t i) { half[i] = block(i); });
  return complete_spectrum(std::move(half), rows, cols, n3);
}

FrequencyStack to_frequency(const QTensor& a) {
  const std::size_t n3 = a.n3();
  std::vector<CMatrix> chi(n3);
  for (std::size_t k = 0; k < n3; ++k) {
    chi[k] = chi_embed(a.slice(k)).inner;
  }
  return map_half_spectrum(a.n1(), a.n2(), n3, [&](std::size_t i) {
    CMatrix acc = CMatrix::Zero(2 * static_cast<Eigen::Index>(a.n1()), 2 * static_cast<Eigen::Index>(a.n2()));
    for (std::size_t k = 0; k < n3; ++k) {
      acc += twiddle(i * k, n3) * chi[k];
    }
    return acc;
  });
}

QTensor from_frequency(const FrequencyStack& fs, double tol) {
  const std::size_t n3 = fs.n3;
  if (fs.blocks.size() != n3) {
    throw DimensionMismatch("frequency stack holds " + std::to_string(fs.blocks.size()) + " blocks, expected " +
                            std::to_string(n3));
  }
  const auto rows = 2 * static_cast<Eigen::Index>(fs.n1);
  const auto cols = 2 * static_cast<Eigen::Index>(fs.n2);
  std::vector<CMatrix> slices(n3);
  parallel_for(n3, [&](std::size_t k) {
    CMatrix acc = CMatrix::Zero(rows, cols);
    for (std::size_t i = 0; i < n3; ++i) {
      // conj(w^{ik}) = w^{-ik}
      acc += std::conj(twiddle(i * k, n3)) * fs.blocks[i];
    }
    slices[k] = acc / static_cast<double>(n3);
  });

  double total = 0.0;
  for (const auto& s : slices) {
    total += s.squaredNorm();
  }
  total = std::sqrt(total);
  QTensor out(fs.n1, fs.n2, n3);
  for (std::size_t k = 0; k < n3; ++k) {
    const double dev = total == 0.0 ? 0.0 : (slices[k] - jconj(slices[k])).norm() / total;
    if (dev > tol) {
      throw StructureViolation(dev, tol);
    }
    out.set_slice(k, chi_extract(slices[k], std::numeric_limits<double>::infinity()));
  }
  return out;
}

QTensor tprod_fft(const QTensor& a, const QTensor& b) {
  if (a.n2() != b.n1() || a.n3() != b.n3()) {
    throw DimensionMismatch("T-product of " + dims(a) + " and " + dims(b));
  }
  const FrequencyStack fa = to_frequency(a);
  const FrequencyStack fb = to_frequency(b);
  return from_frequency(
      map_half_spectrum(a.n1(), b.n2(), a.n3(), [&](std::size_t i) -> CMatrix { return fa.blocks[i] * fb.blocks[i]; }));
}

QTensor t_conj_transpose(const QTensor& a) {
  const std::size_t n3 = a.n3();
  QTensor out(a.n2(), a.n1(), n3);
  for (std::size_t k = 0; k < n3; ++k) {
    out.set_slice(k, a.slice((n3 - k) % n3).adjoint());
  }
  return out;
}

QTensor t_identity(std::size_t n, std::size_t n3) {
  QTensor out(n, n, n3);
  if (n3 > 0) {
    out.set_slice(0, QMatrix::identity(n));
  }
  return out;
}

QTensor t_inverse(const QTensor& a, std::optional<double> rtol) {
  if (a.n1() != a.n2()) {
    throw DimensionMismatch("inverse of non-square tensor " + dims(a));
  }
  const FrequencyStack fa = to_frequency(a);
  const auto side = static_cast<std::size_t>(fa.blocks.front().rows());
  const double scale = fa.scale();
  return from_frequency(map_half_spectrum(a.n1(), a.n1(), a.n3(), [&](std::size_t i) -> CMatrix {
    if (blocks::rank(fa.blocks[i], rtol.value_or(frequency_rtol(side, side, a.n3())), scale) < side) {
      throw Singular(i);
    }
    return fa.blocks[i].partialPivLu().inverse();
  }));
}

QTensor t_power(const QTensor& a, std::size_t k) {
  if (a.n1() != a.n2()) {
    throw DimensionMismatch("power of non-square tensor " + dims(a));
  }
  QTensor out = t_identity(a.n1(), a.n3());
  for (std::size_t i = 0; i < k; ++i) {
    out = tprod_oracle(out, a);
  }
  return out;
}

double t_fro_norm(const QTensor& a) {
  double s = 0.0;
  for (const auto& q : a.entries()) {
    s += qnorm2(q);
  }
  return std::sqrt(s);
}

}  // namespace qtgi
