#include "qtgi/inverses.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "qtgi/complex_blocks.hpp"
#include "qtgi/errors.hpp"
#include "qtgi/parallel.hpp"

namespace qtgi {

namespace {

std::string dims(const QTensor& a) {
  return std::to_string(a.n1()) + "x" + std::to_string(a.n2()) + "x" + std::to_string(a.n3());
}

void require_square(const QTensor& a) {
  if (a.n1() != a.n2()) {
    throw DimensionMismatch("tensor " + dims(a) + " is not square in its first two modes");
  }
}

void require_along_right(const QTensor& a, const QTensor& b, const QTensor& c) {
  if (b.n1() != a.n2() || c.n2() != a.n1() || b.n3() != a.n3() || c.n3() != a.n3()) {
    throw DimensionMismatch("inverse along: A " + dims(a) + ", B " + dims(b) + ", C " + dims(c));
  }
}

// Residual pair of the two defining equations; the outer residual ZAZ=Z is
// implied and left to the verification report.
void certify_along(const ResidualReport& report, double tol) {
  if (!(report.values[0] <= tol && report.values[1] <= tol)) {
    throw NotInvertibleAlong({report.names[0], report.names[1]}, {report.values[0], report.values[1]}, tol);
  }
}

std::size_t drazin_power(const QTensor& a, const MultiIndex& mi) { return std::min(mi.k_max, 2 * a.n1()); }

// Frequency-block layout of an F-diagonal slice: the t-th quaternion diagonal
// entry occupies (t, t) and (n1 + t, n2 + t) of the chi-block.
struct DiagonalLayout {
  std::vector<Eigen::Index> row_of;  // complex singular index -> row slot
  std::vector<Eigen::Index> col_of;
  std::vector<Eigen::Index> spare_rows;
  std::vector<Eigen::Index> spare_cols;
};

DiagonalLayout diagonal_layout(std::size_t n1, std::size_t n2) {
  const auto r = static_cast<Eigen::Index>(n1);
  const auto c = static_cast<Eigen::Index>(n2);
  const Eigen::Index q = std::min(r, c);
  DiagonalLayout out;
  for (Eigen::Index t = 0; t < q; ++t) {
    out.row_of.push_back(t);
    out.col_of.push_back(t);
    out.row_of.push_back(r + t);
    out.col_of.push_back(c + t);
  }
  for (Eigen::Index t = q; t < r; ++t) {
    out.spare_rows.push_back(t);
  }
  for (Eigen::Index t = q; t < r; ++t) {
    out.spare_rows.push_back(r + t);
  }
  for (Eigen::Index t = q; t < c; ++t) {
    out.spare_cols.push_back(t);
  }
  for (Eigen::Index t = q; t < c; ++t) {
    out.spare_cols.push_back(c + t);
  }
  return out;
}

double rtol_for(std::optional<double> rtol, const CMatrix& block, std::size_t n3) {
  return rtol.value_or(
      frequency_rtol(static_cast<std::size_t>(block.rows()), static_cast<std::size_t>(block.cols()), n3));
}

// x_i y_i z_i over the half spectrum, with their shared rank scale.
struct HalfProducts {
  std::vector<CMatrix> blocks;
  double scale = 0.0;
};

HalfProducts half_products(const FrequencyStack& x, const FrequencyStack& y, const FrequencyStack& z) {
  HalfProducts out;
  out.blocks.resize(FrequencyStack::half_count(x.n3));
  std::vector<double> top(out.blocks.size(), 0.0);
  parallel_for(out.blocks.size(), [&](std::size_t i) {
    out.blocks[i] = x.blocks[i] * y.blocks[i] * z.blocks[i];
    if (out.blocks[i].size() > 0) {
      top[i] = blocks::singular_values(out.blocks[i])(0);
    }
  });
  out.scale = *std::max_element(top.begin(), top.end());
  return out;
}

}  // namespace

QTensor t_pinv(const QTensor& a, std::optional<double> rtol) {
  const FrequencyStack fa = to_frequency(a);
  const double scale = fa.scale();
  return from_frequency(map_half_spectrum(a.n2(), a.n1(), a.n3(),
                                          [&](std::size_t i) { return blocks::pinv(fa.blocks[i], rtol_for(rtol, fa.blocks[i], a.n3()), scale); }));
}

Certified t_pinv_certified(const QTensor& a, std::optional<double> rtol, double tol) {
  QTensor x = t_pinv(a, rtol);
  ResidualReport report = penrose_residuals(a, x, tol);
  return {std::move(x), std::move(report)};
}

TSVD t_svd(const QTensor& a) {
  const std::size_t n1 = a.n1();
  const std::size_t n2 = a.n2();
  const std::size_t n3 = a.n3();
  const FrequencyStack fa = to_frequency(a);
  const std::size_t half = FrequencyStack::half_count(n3);
  std::vector<std::array<CMatrix, 3>> factors(half);
  const DiagonalLayout layout = diagonal_layout(n1, n2);

  parallel_for(half, [&](std::size_t i) {
    auto& [u, s, v] = factors[i];
    if (FrequencyStack::self_paired(i, n3)) {
      // chi-image block: a structured quaternion SVD keeps the factors
      // chi-images and the diagonal real and nonnegative.
      const QMatSVD q = qm_svd(chi_extract(fa.blocks[i], 1e-10));
      QMatrix sq(n1, n2);
      for (Eigen::Index t = 0; t < q.S.size(); ++t) {
        sq(static_cast<std::size_t>(t), static_cast<std::size_t>(t)) = q.S(t);
      }
      u = chi_embed(q.U).inner;
      s = chi_embed(sq).inner;
      v = chi_embed(q.V).inner;
      return;
    }
    const blocks::Svd d = blocks::svd(fa.blocks[i]);
    u = CMatrix::Zero(d.U.rows(), d.U.cols());
    v = CMatrix::Zero(d.V.rows(), d.V.cols());
    s = CMatrix::Zero(fa.blocks[i].rows(), fa.blocks[i].cols());
    for (std::size_t t = 0; t < layout.row_of.size(); ++t) {
      const auto te = static_cast<Eigen::Index>(t);
      u.col(layout.row_of[t]) = d.U.col(te);
      v.col(layout.col_of[t]) = d.V.col(te);
      s(layout.row_of[t], layout.col_of[t]) = d.S(te);
    }
    const auto used = static_cast<Eigen::Index>(layout.row_of.size());
    for (std::size_t t = 0; t < layout.spare_rows.size(); ++t) {
      u.col(layout.spare_rows[t]) = d.U.col(used + static_cast<Eigen::Index>(t));
    }
    for (std::size_t t = 0; t < layout.spare_cols.size(); ++t) {
      v.col(layout.spare_cols[t]) = d.V.col(used + static_cast<Eigen::Index>(t));
    }
  });

  auto stack = [&](std::size_t which, std::size_t rows, std::size_t cols) {
    std::vector<CMatrix> part(half);
    for (std::size_t i = 0; i < half; ++i) {
      part[i] = std::move(factors[i][which]);
    }
    return from_frequency(complete_spectrum(std::move(part), rows, cols, n3));
  };
  TSVD out;
  out.U = stack(0, n1, n1);
  out.S = stack(1, n1, n2);
  out.V = stack(2, n2, n2);
  return out;
}

MultiIndex t_multi_index(const QTensor& a, std::optional<double> rtol) {
  require_square(a);
  const FrequencyStack fa = to_frequency(a);
  MultiIndex out;
  out.indices.resize(FrequencyStack::half_count(a.n3()));
  const double scale = fa.scale();
  parallel_for(out.indices.size(),
               [&](std::size_t i) { out.indices[i] = blocks::index(fa.blocks[i], rtol_for(rtol, fa.blocks[i], a.n3()), scale); });
  out.k_max = *std::max_element(out.indices.begin(), out.indices.end());
  return out;
}

QTensor t_drazin(const QTensor& a, std::optional<double> rtol) {
  require_square(a);
  const FrequencyStack fa = to_frequency(a);
  const double scale = fa.scale();
  // Drazin inverses commute with the J-conjugation (uniqueness), so the
  // half spectrum determines the rest.
  return from_frequency(map_half_spectrum(a.n1(), a.n1(), a.n3(), [&](std::size_t i) {
    return blocks::drazin(fa.blocks[i], rtol_for(rtol, fa.blocks[i], a.n3()), scale).inverse;
  }));
}

Certified t_drazin_certified(const QTensor& a, std::optional<double> rtol, double tol) {
  QTensor x = t_drazin(a, rtol);
  const std::size_t k = drazin_power(a, t_multi_index(a, rtol));
  ResidualReport report = drazin_residuals(a, x, k, tol);
  return {std::move(x), std::move(report)};
}

QTensor t_group(const QTensor& a, std::optional<double> rtol, double tol) {
  const MultiIndex mi = t_multi_index(a, rtol);
  for (std::size_t i = 0; i < mi.indices.size(); ++i) {
    if (mi.indices[i] > 1) {
      throw IndexTooLarge(i, mi.indices[i]);
    }
  }
  QTensor x = t_drazin(a, rtol);
  const QTensor ax = tprod_oracle(a, x);
  const ResidualReport report =
      make_report({"AXA=A", "XAX=X", "AX=XA"},
                  {relative_residual(tprod_oracle(ax, a), a),
                   relative_residual(tprod_oracle(tprod_oracle(x, a), x), x),
                   relative_residual(tprod_oracle(x, a), ax)},
                  tol);
  if (!report.pass) {
    throw CertificationFailure("group inverse failed its defining equations (max residual " +
                               format_number(report.max_value()) + ")");
  }
  return x;
}

TCoreNilpotent t_core_nilpotent(const QTensor& a, std::optional<double> rtol) {
  QTensor core = tprod_oracle(tprod_oracle(a, a), t_drazin(a, rtol));
  QTensor nil = a - core;
  return {std::move(core), std::move(nil)};
}

QTensor t_inv_along_right_candidate(const QTensor& a, const QTensor& b, const QTensor& c,
                                    std::optional<double> rtol) {
  require_along_right(a, b, c);
  const FrequencyStack fa = to_frequency(a);
  const FrequencyStack fb = to_frequency(b);
  const FrequencyStack fc = to_frequency(c);
  const HalfProducts cab = half_products(fc, fa, fb);
  return from_frequency(map_half_spectrum(a.n2(), a.n1(), a.n3(), [&](std::size_t i) -> CMatrix {
    return fb.blocks[i] * blocks::pinv(cab.blocks[i], rtol_for(rtol, cab.blocks[i], a.n3()), cab.scale) * fc.blocks[i];
  }));
}

QTensor t_inv_along_left_candidate(const QTensor& a, const QTensor& d, const QTensor& e,
                                   std::optional<double> rtol) {
  if (d.n2() != a.n1() || e.n1() != a.n2() || d.n3() != a.n3() || e.n3() != a.n3()) {
    throw DimensionMismatch("inverse along: A " + dims(a) + ", D " + dims(d) + ", E " + dims(e));
  }
  const FrequencyStack fa = to_frequency(a);
  const FrequencyStack fd = to_frequency(d);
  const FrequencyStack fe = to_frequency(e);
  const HalfProducts dae = half_products(fd, fa, fe);
  return from_frequency(map_half_spectrum(a.n2(), a.n1(), a.n3(), [&](std::size_t i) -> CMatrix {
    return fe.blocks[i] * blocks::pinv(dae.blocks[i], rtol_for(rtol, dae.blocks[i], a.n3()), dae.scale) * fd.blocks[i];
  }));
}

QTensor t_inv_along_right(const QTensor& a, const QTensor& b, const QTensor& c, std::optional<double> rtol,
                          double tol) {
  QTensor z = t_inv_along_right_candidate(a, b, c, rtol);
  certify_along(inv_along_residuals(a, b, c, z, Side::Right, tol), tol);
  return z;
}

QTensor t_inv_along_left(const QTensor& a, const QTensor& d, const QTensor& e, std::optional<double> rtol,
                         double tol) {
  QTensor z = t_inv_along_left_candidate(a, d, e, rtol);
  certify_along(inv_along_residuals(a, d, e, z, Side::Left, tol), tol);
  return z;
}

QTensor t_inv_along_right_frd(const QTensor& a, const QTensor& b, const QTensor& c, std::optional<double> rtol,
                              double tol) {
  require_along_right(a, b, c);
  const FrequencyStack fa = to_frequency(a);
  const FrequencyStack fb = to_frequency(b);
  const FrequencyStack fc = to_frequency(c);
  const std::size_t half = FrequencyStack::half_count(a.n3());

  std::vector<blocks::FullRank> fr_b(half);
  std::vector<blocks::FullRank> fr_c(half);
  const double scale_b = fb.scale();
  const double scale_c = fc.scale();
  parallel_for(half, [&](std::size_t i) {
    fr_b[i] = blocks::full_rank_decomposition(fb.blocks[i], rtol_for(rtol, fb.blocks[i], a.n3()), scale_b);
    fr_c[i] = blocks::full_rank_decomposition(fc.blocks[i], rtol_for(rtol, fc.blocks[i], a.n3()), scale_c);
  });
  const std::size_t r = fr_b.front().r;
  for (std::size_t i = 0; i < half; ++i) {
    if (fr_b[i].r != r || fr_c[i].r != r) {
      throw NoFullRankDecomposition("block ranks differ: frequency " + std::to_string(i + 1) + " has rank(B)=" +
                                    std::to_string(fr_b[i].r) + ", rank(C)=" + std::to_string(fr_c[i].r) +
                                    ", frequency 1 has rank(B)=" + std::to_string(r));
    }
  }
  if (r == 0) {
    throw NoFullRankDecomposition("B and C are numerically zero");
  }

  std::vector<CMatrix> g(half), f(half);
  for (std::size_t i = 0; i < half; ++i) {
    g[i] = fr_c[i].G;
    f[i] = fr_b[i].F;
  }
  const HalfProducts core = half_products(FrequencyStack{g, r, a.n1(), a.n3()}, fa, FrequencyStack{f, a.n2(), r, a.n3()});
  QTensor z = from_frequency(map_half_spectrum(a.n2(), a.n1(), a.n3(), [&](std::size_t i) -> CMatrix {
    if (blocks::rank(core.blocks[i], rtol_for(rtol, core.blocks[i], a.n3()), core.scale) < r) {
      throw SingularCore("G~ A F^ is singular at frequency " + std::to_string(i + 1));
    }
    return f[i] * core.blocks[i].partialPivLu().inverse() * g[i];
  }));
  certify_along(inv_along_residuals(a, b, c, z, Side::Right, tol), tol);
  return z;
}

QTensor solve_sandwich(const QTensor& a, const QTensor& b, const QTensor& c, const std::optional<QTensor>& w,
                       double tol) {
  if (c.n1() != a.n1() || c.n2() != b.n2() || a.n3() != b.n3() || a.n3() != c.n3()) {
    throw DimensionMismatch("A*X*B = C with A " + dims(a) + ", B " + dims(b) + ", C " + dims(c));
  }
  const QTensor w0 = w.value_or(QTensor::zero(a.n2(), b.n1(), a.n3()));
  if (w0.n1() != a.n2() || w0.n2() != b.n1() || w0.n3() != a.n3()) {
    throw DimensionMismatch("W " + dims(w0) + " does not have the solution shape");
  }
  const QTensor ap = t_pinv(a);
  const QTensor bp = t_pinv(b);
  const QTensor apcbp = tprod_fft(tprod_fft(ap, c), bp);

  const double consistency = relative_residual(tprod_oracle(tprod_oracle(a, apcbp), b), c);
  if (!(consistency <= tol)) {
    throw Inconsistent(consistency, tol);
  }
  QTensor x = apcbp + w0 - tprod_fft(tprod_fft(tprod_fft(tprod_fft(ap, a), w0), b), bp);
  const double residual = relative_residual(tprod_oracle(tprod_oracle(a, x), b), c);
  if (!(residual <= tol)) {
    throw CertificationFailure("sandwich solution residual " + format_number(residual));
  }
  return x;
}

QTensor gen_family(const QTensor& a, const QTensor& z, const PenroseClass& cls, double tol) {
  const bool one = cls == PenroseClass{1};
  const bool one_three = cls == PenroseClass{1, 3};
  const bool one_four = cls == PenroseClass{1, 4};
  if (!one && !one_three && !one_four) {
    throw UnsupportedClass("no family generator for class " + cls.to_string());
  }
  if (z.n1() != a.n2() || z.n2() != a.n1() || z.n3() != a.n3()) {
    throw DimensionMismatch("Z " + dims(z) + " does not have the shape of an inverse of " + dims(a));
  }
  const QTensor ap = t_pinv(a);
  QTensor x;
  if (one) {
    x = ap + z - tprod_fft(tprod_fft(tprod_fft(tprod_fft(ap, a), z), a), ap);
  } else if (one_three) {
    x = ap + tprod_fft(t_identity(a.n2(), a.n3()) - tprod_fft(ap, a), z);
  } else {
    x = ap + tprod_fft(z, t_identity(a.n1(), a.n3()) - tprod_fft(a, ap));
  }
  const ResidualReport report = class_membership(a, x, cls, tol);
  if (!report.pass) {
    throw CertificationFailure("family member misses class " + cls.to_string() + " (max residual " +
                               format_number(report.max_value()) + ")");
  }
  return x;
}

}  // namespace qtgi
