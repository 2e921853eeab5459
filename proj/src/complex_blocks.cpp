#include "qtgi/complex_blocks.hpp"

#include <algorithm>
#include <cmath>

#include "qtgi/errors.hpp"

namespace qtgi::blocks {

namespace {

std::size_t count_above(const RVector& s, double threshold) {
  if (s.size() == 0 || s(0) == 0.0) {
    return 0;
  }
  return static_cast<std::size_t>((s.array() > threshold).count());
}

double threshold(const CMatrix& x, const RVector& s, std::optional<double> rtol, std::optional<double> scale) {
  return rtol.value_or(default_rtol(x)) * scale.value_or(s.size() == 0 ? 0.0 : s(0));
}

}  // namespace

Svd svd(const CMatrix& x) {
  Eigen::JacobiSVD<CMatrix> dec(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success) {
    throw ConvergenceFailure("complex SVD did not converge");
  }
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

RVector singular_values(const CMatrix& x) {
  Eigen::JacobiSVD<CMatrix> dec(x);
  if (dec.info() != Eigen::Success) {
    throw ConvergenceFailure("complex SVD did not converge");
  }
  return dec.singularValues();
}

double default_rtol(const CMatrix& x) {
  return qtgi::default_rtol(static_cast<std::size_t>(x.rows()), static_cast<std::size_t>(x.cols()));
}

std::size_t rank(const CMatrix& x, std::optional<double> rtol, std::optional<double> scale) {
  const RVector s = singular_values(x);
  return count_above(s, threshold(x, s, rtol, scale));
}

CMatrix pinv_leading(const CMatrix& x, std::size_t keep) {
  const Svd d = svd(x);
  CMatrix out = CMatrix::Zero(x.cols(), x.rows());
  for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(keep); ++t) {
    out += d.V.col(t) * (1.0 / d.S(t)) * d.U.col(t).adjoint();
  }
  return out;
}

CMatrix pinv(const CMatrix& x, std::optional<double> rtol, std::optional<double> scale) {
  const Svd d = svd(x);
  const std::size_t keep = count_above(d.S, threshold(x, d.S, rtol, scale));
  CMatrix out = CMatrix::Zero(x.cols(), x.rows());
  for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(keep); ++t) {
    out += d.V.col(t) * (1.0 / d.S(t)) * d.U.col(t).adjoint();
  }
  return out;
}

CMatrix power(const CMatrix& x, std::size_t k) {
  CMatrix out = CMatrix::Identity(x.rows(), x.cols());
  for (std::size_t i = 0; i < k; ++i) {
    out = out * x;
  }
  return out;
}

std::size_t index(const CMatrix& x, std::optional<double> rtol, std::optional<double> scale) {
  if (x.rows() != x.cols()) {
    throw DimensionMismatch("index of a non-square block");
  }
  const auto n = static_cast<std::size_t>(x.rows());
  const double base = scale ? *scale : (n == 0 ? 0.0 : singular_values(x)(0));
  std::size_t rank_k = n;
  CMatrix p = CMatrix::Identity(x.rows(), x.cols());
  double scale_k = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    p = p * x;
    scale_k *= base;
    const std::size_t rank_next = rank(p, rtol, scale_k);
    if (rank_next == rank_k) {
      return k;
    }
    rank_k = rank_next;
  }
  return n;
}

Drazin drazin(const CMatrix& x, std::optional<double> rtol, std::optional<double> scale) {
  const double base = scale ? *scale : (x.size() == 0 ? 0.0 : singular_values(x)(0));
  const std::size_t k = index(x, rtol, base);
  if (k == 0) {
    return {pinv(x, rtol, base), 0};
  }
  const CMatrix xk = power(x, k);
  const std::size_t r = rank(xk, rtol, std::pow(base, static_cast<double>(k)));
  return {xk * pinv_leading(power(x, 2 * k + 1), r) * xk, k};
}

FullRank full_rank_decomposition(const CMatrix& x, std::optional<double> rtol, std::optional<double> scale) {
  const Svd d = svd(x);
  const std::size_t r = count_above(d.S, threshold(x, d.S, rtol, scale));
  const auto re = static_cast<Eigen::Index>(r);
  const RVector roots = d.S.head(re).cwiseSqrt();
  FullRank out;
  out.r = r;
  out.F = d.U.leftCols(re) * roots.asDiagonal();
  out.G = roots.asDiagonal() * d.V.leftCols(re).adjoint();
  return out;
}

}  // namespace qtgi::blocks
