#include "qtgi/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtgi/errors.hpp"

namespace qtgi {

namespace {

using QVector = std::vector<Quaternion>;

// Singular values of chi(M) closer than this (relative to the largest) are
// grouped into one cluster before the symplectic pairing.
constexpr double kClusterRtol = 1e-11;

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw DimensionMismatch(what);
  }
}

std::string dims(const QMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

Quaternion inner(const QVector& a, const QVector& b) {
  Quaternion acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += qconj(a[i]) * b[i];
  }
  return acc;
}

double vnorm(const QVector& v) {
  double s = 0.0;
  for (const auto& q : v) {
    s += qnorm2(q);
  }
  return std::sqrt(s);
}

// v <- v - sum_b b (b^H v), applied twice.
void project_out(QVector& v, const std::vector<QVector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const Quaternion coef = inner(b, v);
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] -= b[i] * coef;
      }
    }
  }
}

QVector unit_vector(std::size_t n, std::size_t pos) {
  QVector v(n);
  v[pos] = 1.0;
  return v;
}

// Greedily grows `basis` to `target` orthonormal columns, each step taking the
// candidate with the largest component outside the current span. Falls back
// to the standard basis when the candidates are exhausted.
void extend_orthonormal(std::vector<QVector>& basis, std::vector<QVector> candidates, std::size_t target,
                        std::size_t dim) {
  bool fallback_added = false;
  while (basis.size() < target) {
    double best = -1.0;
    std::size_t best_at = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      QVector v = candidates[c];
      project_out(v, basis);
      const double nv = vnorm(v);
      if (nv > best) {
        best = nv;
        best_at = c;
      }
    }
    if (best < 1e-6) {
      if (fallback_added) {
        throw ConvergenceFailure("could not complete an orthonormal quaternion basis");
      }
      for (std::size_t p = 0; p < dim; ++p) {
        candidates.push_back(unit_vector(dim, p));
      }
      fallback_added = true;
      continue;
    }
    QVector v = candidates[best_at];
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best_at));
    project_out(v, basis);
    const double inv = 1.0 / vnorm(v);
    for (auto& q : v) {
      q *= inv;
    }
    basis.push_back(std::move(v));
  }
}

QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix out(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      out(r, c) = cols[c][r];
    }
  }
  return out;
}

Eigen::JacobiSVD<CMatrix> complex_svd(const CMatrix& x, bool vectors) {
  Eigen::JacobiSVD<CMatrix> svd;
  if (vectors) {
    svd.compute(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  } else {
    svd.compute(x);
  }
  if (svd.info() != Eigen::Success) {
    throw ConvergenceFailure("complex SVD did not converge");
  }
  return svd;
}

// Pseudoinverse keeping only the leading `keep` singular triplets.
QMatrix pinv_leading(const QMatSVD& svd, std::size_t keep) {
  const std::size_t m = svd.U.rows();
  const std::size_t n = svd.V.rows();
  QMatrix out(n, m);
  for (std::size_t t = 0; t < keep; ++t) {
    const double inv = 1.0 / svd.S(static_cast<Eigen::Index>(t));
    for (std::size_t r = 0; r < n; ++r) {
      const Quaternion vr = svd.V(r, t) * inv;
      for (std::size_t c = 0; c < m; ++c) {
        out(r, c) += vr * qconj(svd.U(c, t));
      }
    }
  }
  return out;
}

std::size_t count_above_abs(const RVector& s, double thr) {
  if (s.size() == 0 || s(0) == 0.0) {
    return 0;
  }
  std::size_t r = 0;
  for (Eigen::Index t = 0; t < s.size(); ++t) {
    if (s(t) > thr) {
      ++r;
    }
  }
  return r;
}

std::size_t count_above(const RVector& s, double rtol) {
  return count_above_abs(s, s.size() == 0 ? 0.0 : rtol * s(0));
}

double relative_residual(const QMatrix& lhs, const QMatrix& rhs) {
  return (lhs - rhs).fro_norm() / std::max(1.0, rhs.fro_norm());
}

}  // namespace

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    require(row.size() == cols_, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = 1.0;
  }
  return out;
}

QMatrix QMatrix::diagonal(const std::vector<Quaternion>& d) {
  QMatrix out(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out(i, i) = d[i];
  }
  return out;
}

QMatrix QMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
  QMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      out(r, c) = (*this)(r0 + r, c0 + c);
    }
  }
  return out;
}

void QMatrix::set_block(std::size_t r0, std::size_t c0, const QMatrix& b) {
  require(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, "block out of range");
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      (*this)(r0 + r, c0 + c) = b(r, c);
    }
  }
}

QMatrix QMatrix::adjoint() const {
  QMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(c, r) = qconj((*this)(r, c));
    }
  }
  return out;
}

double QMatrix::fro_norm() const {
  double s = 0.0;
  for (const auto& q : data_) {
    s += qnorm2(q);
  }
  return std::sqrt(s);
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "sum of " + dims(*this) + " and " + dims(o));
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] += o.data_[i];
  }
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "difference of " + dims(*this) + " and " + dims(o));
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] -= o.data_[i];
  }
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : data_) {
    q *= s;
  }
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  require(a.cols() == b.rows(), "product of " + dims(a) + " and " + dims(b));
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion lhs = a(r, k);
      for (std::size_t c = 0; c < b.cols(); ++c) {
        out(r, c) += lhs * b(k, c);
      }
    }
  }
  return out;
}

QMatrix qm_power(const QMatrix& m, std::size_t k) {
  require(m.rows() == m.cols(), "power of non-square " + dims(m));
  QMatrix out = QMatrix::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) {
    out = out * m;
  }
  return out;
}

CMatrix jconj(const CMatrix& x) {
  const Eigen::Index m = x.rows() / 2;
  const Eigen::Index n = x.cols() / 2;
  CMatrix out(x.rows(), x.cols());
  // J conj([[P, Q], [R, S]]) J^{-1} = [[conj S, -conj R], [-conj Q, conj P]]
  out.topLeftCorner(m, n) = x.bottomRightCorner(m, n).conjugate();
  out.topRightCorner(m, n) = -x.bottomLeftCorner(m, n).conjugate();
  out.bottomLeftCorner(m, n) = -x.topRightCorner(m, n).conjugate();
  out.bottomRightCorner(m, n) = x.topLeftCorner(m, n).conjugate();
  return out;
}

double chi_deviation(const CMatrix& x) {
  const double nx = x.norm();
  if (nx == 0.0) {
    return 0.0;
  }
  return (x - jconj(x)).norm() / nx;
}

ChiMatrix chi_embed(const QMatrix& m) {
  const auto rows = static_cast<Eigen::Index>(m.rows());
  const auto cols = static_cast<Eigen::Index>(m.cols());
  ChiMatrix out{CMatrix(2 * rows, 2 * cols), m.rows(), m.cols()};
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Quaternion& q = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      const Complex a(q.w, q.x);
      const Complex b(q.y, q.z);
      out.inner(r, c) = a;
      out.inner(r, cols + c) = b;
      out.inner(rows + r, c) = -std::conj(b);
      out.inner(rows + r, cols + c) = std::conj(a);
    }
  }
  return out;
}

QMatrix chi_extract(const CMatrix& inner, double tol) {
  require(inner.rows() % 2 == 0 && inner.cols() % 2 == 0, "chi-image must have even dimensions");
  const double dev = chi_deviation(inner);
  if (dev > tol) {
    throw StructureViolation(dev, tol);
  }
  const Eigen::Index m = inner.rows() / 2;
  const Eigen::Index n = inner.cols() / 2;
  const CMatrix sym = 0.5 * (inner + jconj(inner));
  QMatrix out(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex a = sym(r, c);
      const Complex b = sym(r, n + c);
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = {a.real(), a.imag(), b.real(), b.imag()};
    }
  }
  return out;
}

QMatrix chi_extract(const ChiMatrix& c, double tol) { return chi_extract(c.inner, tol); }

std::vector<Quaternion> fold_complex_column(const Eigen::Ref<const Eigen::VectorXcd>& c) {
  const Eigen::Index m = c.size() / 2;
  std::vector<Quaternion> out(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const Complex a = c(i);
    const Complex b = -std::conj(c(m + i));
    out[static_cast<std::size_t>(i)] = {a.real(), a.imag(), b.real(), b.imag()};
  }
  return out;
}

double default_rtol(std::size_t rows, std::size_t cols) {
  return static_cast<double>(std::max<std::size_t>({rows, cols, 1})) * std::ldexp(1.0, -52);
}

RVector qm_singular_values(const QMatrix& m) {
  const std::size_t p = std::min(m.rows(), m.cols());
  RVector out = RVector::Zero(static_cast<Eigen::Index>(p));
  if (p == 0) {
    return out;
  }
  const RVector s = complex_svd(chi_embed(m).inner, false).singularValues();
  for (Eigen::Index t = 0; t < out.size(); ++t) {
    out(t) = 0.5 * (s(2 * t) + s(2 * t + 1));
  }
  return out;
}

QMatSVD qm_svd(const QMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t p = std::min(rows, cols);
  QMatSVD out{QMatrix::identity(rows), RVector::Zero(static_cast<Eigen::Index>(p)), QMatrix::identity(cols)};
  if (p == 0) {
    return out;
  }

  const auto svd = complex_svd(chi_embed(m).inner, true);
  const RVector& s = svd.singularValues();
  const CMatrix& W = svd.matrixU();
  const CMatrix& Y = svd.matrixV();
  const double smax = s(0);

  // Values at roundoff level are treated as exact zeros; their vectors only
  // complete the bases.
  const double zero_tol = default_rtol(2 * rows, 2 * cols) * smax;
  Eigen::Index nonzero = 0;
  while (nonzero < s.size() && s(nonzero) > zero_tol) {
    ++nonzero;
  }
  nonzero -= nonzero % 2;

  std::vector<QVector> ucols;
  std::vector<QVector> vcols;
  const double cluster_tol = kClusterRtol * smax;
  Eigen::Index begin = 0;
  while (begin < nonzero) {
    // A cluster is a run of near-equal values; it always holds whole pairs.
    Eigen::Index end = begin + 2;
    while (end < nonzero && s(end - 1) - s(end) <= cluster_tol) {
      ++end;
    }
    end += (end - begin) % 2;
    const Eigen::Index width = end - begin;
    const auto pairs = static_cast<std::size_t>(width / 2);

    std::vector<QVector> candidates;
    for (Eigen::Index c = begin; c < end; ++c) {
      candidates.push_back(fold_complex_column(Y.col(c)));
    }
    std::vector<QVector> vc = vcols;
    extend_orthonormal(vc, std::move(candidates), vcols.size() + pairs, cols);
    const std::vector<QVector> fresh(vc.begin() + static_cast<std::ptrdiff_t>(vcols.size()), vc.end());

    // Rotate the left vectors by the same change of basis, so that
    // chi(M) v = sigma u keeps holding pair by pair.
    const CMatrix chi_v = chi_embed(from_columns(fresh, cols)).inner;
    const CMatrix rotation = Y.middleCols(begin, width).adjoint() * chi_v;
    const CMatrix rotated = W.middleCols(begin, width) * rotation;
    for (std::size_t t = 0; t < pairs; ++t) {
      ucols.push_back(fold_complex_column(rotated.col(static_cast<Eigen::Index>(t))));
      out.S(static_cast<Eigen::Index>(vcols.size() + t)) = 0.5 * (s(begin + 2 * t) + s(begin + 2 * t + 1));
    }
    vcols = std::move(vc);
    begin = end;
  }

  // Modified Gram-Schmidt in order: removes the drift introduced by the
  // rotation without permuting the singular triplets.
  for (std::size_t t = 0; t < ucols.size(); ++t) {
    std::vector<QVector> prev(ucols.begin(), ucols.begin() + static_cast<std::ptrdiff_t>(t));
    project_out(ucols[t], prev);
    const double inv = 1.0 / vnorm(ucols[t]);
    for (auto& q : ucols[t]) {
      q *= inv;
    }
  }

  std::vector<QVector> ucand;
  for (Eigen::Index c = nonzero; c < W.cols(); ++c) {
    ucand.push_back(fold_complex_column(W.col(c)));
  }
  extend_orthonormal(ucols, std::move(ucand), rows, rows);
  std::vector<QVector> vcand;
  for (Eigen::Index c = nonzero; c < Y.cols(); ++c) {
    vcand.push_back(fold_complex_column(Y.col(c)));
  }
  extend_orthonormal(vcols, std::move(vcand), cols, cols);

  out.U = from_columns(ucols, rows);
  out.V = from_columns(vcols, cols);
  return out;
}

std::size_t qm_rank(const QMatrix& m, std::optional<double> rtol) {
  return count_above(qm_singular_values(m), rtol.value_or(default_rtol(m.rows(), m.cols())));
}

QMatrix qm_pinv(const QMatrix& m, std::optional<double> rtol) {
  const QMatSVD svd = qm_svd(m);
  return pinv_leading(svd, count_above(svd.S, rtol.value_or(default_rtol(m.rows(), m.cols()))));
}

QMatrix qm_inverse(const QMatrix& m, std::optional<double> rtol) {
  require(m.rows() == m.cols(), "inverse of non-square " + dims(m));
  if (qm_rank(m, rtol) < m.rows()) {
    throw SingularCore("matrix is numerically singular");
  }
  const CMatrix inv = chi_embed(m).inner.partialPivLu().inverse();
  return chi_extract(inv, 1e-8);
}

std::size_t qm_index(const QMatrix& m, std::optional<double> rtol) {
  require(m.rows() == m.cols(), "index of non-square " + dims(m));
  const std::size_t n = m.rows();
  const double rt = rtol.value_or(default_rtol(n, n));
  const double base = n == 0 ? 0.0 : qm_singular_values(m)(0);
  std::size_t rank_k = n;
  QMatrix power = QMatrix::identity(n);
  double scale_k = 1.0;
  // rank(M^k) is judged against |M|^k, not against M^k's own largest value,
  // which is pure roundoff once a nilpotent part has died out.
  for (std::size_t k = 0; k < n; ++k) {
    power = power * m;
    scale_k *= base;
    const std::size_t rank_next = count_above_abs(qm_singular_values(power), rt * scale_k);
    if (rank_next == rank_k) {
      return k;
    }
    rank_k = rank_next;
  }
  return n;
}

QMatrix qm_drazin(const QMatrix& m, std::optional<double> rtol) {
  const std::size_t k = qm_index(m, rtol);
  if (k == 0) {
    return qm_pinv(m, rtol);
  }
  const QMatrix mk = qm_power(m, k);
  const double base = qm_singular_values(m)(0);
  const std::size_t r = count_above_abs(qm_singular_values(mk), rtol.value_or(default_rtol(m.rows(), m.rows())) *
                                                                    std::pow(base, static_cast<double>(k)));
  // A^D = A^k (A^{2k+1})^+ A^k; A^{2k+1} has the same rank as A^k.
  const QMatrix core = pinv_leading(qm_svd(qm_power(m, 2 * k + 1)), r);
  return mk * core * mk;
}

CoreNilpotent qm_core_nilpotent(const QMatrix& m, std::optional<double> rtol) {
  QMatrix core = m * m * qm_drazin(m, rtol);
  QMatrix nil = m - core;
  return {std::move(core), std::move(nil)};
}

FullRankDecomp qm_frd(const QMatrix& m, std::optional<double> rtol) {
  const QMatSVD svd = qm_svd(m);
  const std::size_t r = count_above(svd.S, rtol.value_or(default_rtol(m.rows(), m.cols())));
  if (r == 0) {
    throw RankZero();
  }
  FullRankDecomp out{QMatrix(m.rows(), r), QMatrix(r, m.cols()), r};
  for (std::size_t t = 0; t < r; ++t) {
    const double root = std::sqrt(svd.S(static_cast<Eigen::Index>(t)));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      out.F(i, t) = svd.U(i, t) * root;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out.G(t, j) = qconj(svd.V(j, t)) * root;
    }
  }
  return out;
}

QMatrix qm_inv_along_right(const QMatrix& a, const QMatrix& b, const QMatrix& c, double tol) {
  require(b.rows() == a.cols() && c.cols() == a.rows(),
          "inverse along: A " + dims(a) + ", B " + dims(b) + ", C " + dims(c));
  const QMatrix z = b * qm_pinv(c * a * b) * c;
  const double r1 = relative_residual(z * a * b, b);
  const double r2 = relative_residual(c * a * z, c);
  if (!(r1 <= tol && r2 <= tol)) {
    throw NotInvertibleAlong({"ZAB=B", "CAZ=C"}, {r1, r2}, tol);
  }
  return z;
}

QMatrix qm_inv_along_left(const QMatrix& a, const QMatrix& d, const QMatrix& e, double tol) {
  require(d.cols() == a.rows() && e.rows() == a.cols(),
          "inverse along: A " + dims(a) + ", D " + dims(d) + ", E " + dims(e));
  const QMatrix z = e * qm_pinv(d * a * e) * d;
  const double r1 = relative_residual(d * a * z, d);
  const double r2 = relative_residual(z * a * e, e);
  if (!(r1 <= tol && r2 <= tol)) {
    throw NotInvertibleAlong({"DAZ=D", "ZAE=E"}, {r1, r2}, tol);
  }
  return z;
}

QMatrix qm_inv_along_right_frd(const QMatrix& a, const QMatrix& b, const QMatrix& c, std::optional<double> rtol) {
  require(b.rows() == a.cols() && c.cols() == a.rows(),
          "inverse along: A " + dims(a) + ", B " + dims(b) + ", C " + dims(c));
  const std::size_t rank_b = qm_rank(b, rtol);
  const std::size_t rank_c = qm_rank(c, rtol);
  if (rank_b != rank_c) {
    throw RankMismatch(rank_b, rank_c);
  }
  const FullRankDecomp fb = qm_frd(b, rtol);
  const FullRankDecomp fc = qm_frd(c, rtol);
  const QMatrix core = fc.G * a * fb.F;
  if (qm_rank(core, rtol) < core.rows()) {
    throw SingularCore("G~ A F^ is numerically singular");
  }
  return fb.F * qm_inverse(core, rtol) * fc.G;
}

}  // namespace qtgi
