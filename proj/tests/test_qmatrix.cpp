#include <gtest/gtest.h>

#include <cmath>

#include "qtgi/errors.hpp"
#include "qtgi/qmatrix.hpp"
#include "test_support.hpp"

namespace {

using namespace qtgi;
using qtgi::testing::random_qmatrix;
using qtgi::testing::rel_diff;
using qtgi::testing::Rng;

const Quaternion i = Quaternion::unit_i();
const Quaternion j = Quaternion::unit_j();
const Quaternion k = Quaternion::unit_k();
const Complex ci(0.0, 1.0);

TEST(Chi, EmbedUnits) {
  CMatrix ei(2, 2);
  ei << ci, 0.0, 0.0, -ci;
  EXPECT_EQ(chi_embed(QMatrix{{i}}).inner, ei);

  CMatrix ej(2, 2);
  ej << 0.0, 1.0, -1.0, 0.0;
  EXPECT_EQ(chi_embed(QMatrix{{j}}).inner, ej);
}

TEST(Chi, Homomorphism) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const QMatrix a = random_qmatrix(rng, 3, 4);
    const QMatrix b = random_qmatrix(rng, 4, 2);
    const CMatrix lhs = chi_embed(a * b).inner;
    const CMatrix rhs = chi_embed(a).inner * chi_embed(b).inner;
    EXPECT_LE((lhs - rhs).norm(), 1e-13 * lhs.norm());
    EXPECT_EQ(chi_embed(a.adjoint()).inner, chi_embed(a).inner.adjoint());
  }
}

TEST(Chi, ExtractRoundTrip) {
  Rng rng(12);
  const QMatrix a = random_qmatrix(rng, 3, 5);
  const ChiMatrix c = chi_embed(a);
  EXPECT_EQ(chi_deviation(c.inner), 0.0);
  EXPECT_EQ(chi_extract(c), a);
}

TEST(Chi, ExtractRejectsNonImage) {
  CMatrix x(2, 2);
  x << 1.0, 0.0, 0.0, 0.0;
  try {
    chi_extract(x);
    FAIL() << "expected StructureViolation";
  } catch (const StructureViolation& e) {
    EXPECT_NEAR(e.deviation(), std::sqrt(2.0), 1e-15);
  }
}

TEST(QMatrixSvd, SingleEntry) {
  const QMatSVD s = qm_svd(QMatrix{{i}});
  ASSERT_EQ(s.S.size(), 1);
  EXPECT_NEAR(s.S(0), 1.0, 1e-15);
  EXPECT_LE(rel_diff(s.U * QMatrix{{s.S(0)}} * s.V.adjoint(), QMatrix{{i}}), 1e-15);
}

TEST(QMatrixSvd, Zero) {
  const QMatSVD s = qm_svd(QMatrix::zero(2, 3));
  ASSERT_EQ(s.S.size(), 2);
  EXPECT_EQ(s.S(0), 0.0);
  EXPECT_EQ(s.S(1), 0.0);
  EXPECT_LE(rel_diff(s.U.adjoint() * s.U, QMatrix::identity(2)), 1e-14);
  EXPECT_LE(rel_diff(s.V.adjoint() * s.V, QMatrix::identity(3)), 1e-14);
}

TEST(QMatrixSvd, DiagonalSorted) {
  const QMatSVD s = qm_svd(QMatrix::diagonal({2.0, 3.0 * j}));
  ASSERT_EQ(s.S.size(), 2);
  EXPECT_NEAR(s.S(0), 3.0, 1e-14);
  EXPECT_NEAR(s.S(1), 2.0, 1e-14);
}

TEST(QMatrixSvd, Reconstructs) {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const QMatrix a = random_qmatrix(rng, 4, 3);
    const QMatSVD s = qm_svd(a);
    QMatrix sig(4, 3);
    for (std::size_t d = 0; d < 3; ++d) {
      sig(d, d) = s.S(static_cast<Eigen::Index>(d));
    }
    EXPECT_LE(rel_diff(s.U * sig * s.V.adjoint(), a), 1e-13);
    EXPECT_LE(rel_diff(s.U.adjoint() * s.U, QMatrix::identity(4)), 1e-13);
    EXPECT_LE(rel_diff(s.V.adjoint() * s.V, QMatrix::identity(3)), 1e-13);
  }
}

TEST(QMatrixRank, DependentRows) {
  // Row 2 is i times row 1.
  EXPECT_EQ(qm_rank(QMatrix{{1.0, j}, {i, k}}), 1u);
  EXPECT_EQ(qm_rank(QMatrix::identity(3)), 3u);
  EXPECT_EQ(qm_rank(QMatrix::zero(2, 2)), 0u);
}

TEST(QMatrixPinv, Column) {
  const QMatrix x = qm_pinv(QMatrix{{i}, {j}});
  EXPECT_LE(rel_diff(x, QMatrix{{-0.5 * i, -0.5 * j}}), 1e-15);
}

TEST(QMatrixPinv, PenroseEquations) {
  Rng rng(14);
  const QMatrix f = random_qmatrix(rng, 4, 2);
  const QMatrix a = f * random_qmatrix(rng, 2, 5);
  const QMatrix x = qm_pinv(a);
  EXPECT_LE(rel_diff(a * x * a, a), 1e-12);
  EXPECT_LE(rel_diff(x * a * x, x), 1e-12);
  EXPECT_LE(rel_diff((a * x).adjoint(), a * x), 1e-12);
  EXPECT_LE(rel_diff((x * a).adjoint(), x * a), 1e-12);
}

TEST(QMatrixIndex, Examples) {
  EXPECT_EQ(qm_index(QMatrix{{0.0, 1.0}, {0.0, 0.0}}), 2u);
  EXPECT_EQ(qm_index(QMatrix::diagonal({1.0, 0.0})), 1u);
  EXPECT_EQ(qm_index(QMatrix::identity(2)), 0u);
}

TEST(QMatrixDrazin, Diagonal) {
  EXPECT_LE(rel_diff(qm_drazin(QMatrix::diagonal({2.0, 0.0})), QMatrix::diagonal({0.5, 0.0})), 1e-15);
}

TEST(QMatrixDrazin, NilpotentIsZero) {
  EXPECT_LE(qm_drazin(QMatrix{{0.0, 1.0}, {0.0, 0.0}}).fro_norm(), 1e-15);
}

TEST(QMatrixDrazin, Equations) {
  Rng rng(15);
  const QMatrix a = qtgi::testing::invertible_plus_nilpotent(rng, 4, 2);
  const QMatrix x = qm_drazin(a);
  const std::size_t ind = qm_index(a);
  EXPECT_EQ(ind, 2u);
  EXPECT_LE(rel_diff(qm_power(a, ind + 1) * x, qm_power(a, ind)), 1e-10);
  EXPECT_LE(rel_diff(x * a * x, x), 1e-10);
  EXPECT_LE(rel_diff(a * x, x * a), 1e-10);
}

TEST(QMatrixCoreNilpotent, Split) {
  Rng rng(16);
  const QMatrix a = qtgi::testing::invertible_plus_nilpotent(rng, 4, 2);
  const CoreNilpotent cn = qm_core_nilpotent(a);
  EXPECT_LE(rel_diff(cn.core + cn.nilpotent, a), 1e-12);
  EXPECT_LE(qm_power(cn.nilpotent, 2).fro_norm(), 1e-10);
  EXPECT_LE((cn.core * cn.nilpotent).fro_norm(), 1e-10);
  EXPECT_EQ(qm_index(cn.core), 1u);
}

TEST(QMatrixFrd, Factors) {
  Rng rng(17);
  const QMatrix a = random_qmatrix(rng, 4, 2) * random_qmatrix(rng, 2, 3);
  const FullRankDecomp d = qm_frd(a);
  EXPECT_EQ(d.r, 2u);
  EXPECT_EQ(d.F.cols(), 2u);
  EXPECT_EQ(d.G.rows(), 2u);
  EXPECT_LE(rel_diff(d.F * d.G, a), 1e-12);
  EXPECT_THROW(qm_frd(QMatrix::zero(2, 2)), RankZero);
}

TEST(QMatrixAlong, PinvAlongAdjoint) {
  Rng rng(18);
  const QMatrix a = random_qmatrix(rng, 3, 4);
  const QMatrix z = qm_inv_along_right(a, a.adjoint(), a.adjoint());
  EXPECT_LE(rel_diff(z, qm_pinv(a)), 1e-12);
}

TEST(QMatrixAlong, InvertibleAlongIdentity) {
  Rng rng(19);
  const QMatrix a = random_qmatrix(rng, 3, 3);
  const QMatrix id = QMatrix::identity(3);
  EXPECT_LE(rel_diff(qm_inv_along_right(a, id, id), qm_inverse(a)), 1e-12);
  EXPECT_LE(rel_diff(qm_inv_along_left(a, id, id), qm_inverse(a)), 1e-12);
  EXPECT_LE(rel_diff(qm_inv_along_right_frd(a, id, id), qm_inverse(a)), 1e-12);
}

TEST(QMatrixAlong, ZeroIsNotInvertible) {
  const QMatrix id = QMatrix::identity(2);
  EXPECT_THROW(qm_inv_along_right(QMatrix::zero(2, 2), id, id), NotInvertibleAlong);
  EXPECT_THROW(qm_inv_along_left(QMatrix::zero(2, 2), id, id), NotInvertibleAlong);
}

TEST(QMatrixAlong, FrdRankMismatch) {
  const QMatrix b = QMatrix::diagonal({1.0, 0.0});
  EXPECT_THROW(qm_inv_along_right_frd(QMatrix::identity(2), b, QMatrix::identity(2)), RankMismatch);
}

TEST(QMatrix, ProductShapes) {
  EXPECT_THROW(QMatrix::zero(2, 3) * QMatrix::zero(2, 3), DimensionMismatch);
  EXPECT_EQ(qm_power(QMatrix{{2.0}}, 0), QMatrix::identity(1));
}

}  // namespace
