#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qtgi/errors.hpp"
#include "qtgi/inverses.hpp"
#include "qtgi/verification.hpp"
#include "test_support.hpp"

namespace {

using namespace qtgi;
using qtgi::testing::random_tensor;
using qtgi::testing::Rng;

TEST(Residuals, ZeroCandidate) {
  Rng rng(31);
  const QTensor a = random_tensor(rng, 2, 3, 2);
  const ResidualReport r = penrose_residuals(a, QTensor(3, 2, 2));
  ASSERT_EQ(r.values.size(), 4u);
  EXPECT_DOUBLE_EQ(r.values[0], 1.0);
  EXPECT_EQ(r.values[1], 0.0);
  EXPECT_FALSE(r.pass);
}

TEST(Residuals, ShapeChecked) {
  EXPECT_THROW(penrose_residuals(QTensor(2, 3, 2), QTensor(2, 3, 2)), DimensionMismatch);
}

TEST(Residuals, Relative) {
  QTensor a(1, 1, 1);
  a(0, 0, 0) = 4.0;
  QTensor b(1, 1, 1);
  b(0, 0, 0) = 2.0;
  EXPECT_DOUBLE_EQ(relative_residual(a, b), 1.0);
  b(0, 0, 0) = 0.25;
  EXPECT_DOUBLE_EQ(relative_residual(a, b), 3.75);
}

TEST(Residuals, NanFails) {
  const ResidualReport r = make_report({"x"}, {std::nan("")}, 1.0);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(make_report({"x"}, {0.5}, 1.0).pass);
}

TEST(Residuals, ReportPrints) {
  std::ostringstream os;
  os << make_report({"AXA=A"}, {0.25}, 1e-10);
  EXPECT_NE(os.str().find("AXA=A"), std::string::npos);
}

TEST(Residuals, FDiagonal) {
  QTensor ones(2, 2, 2);
  for (auto& q : ones.entries()) {
    q = 1.0;
  }
  EXPECT_DOUBLE_EQ(f_diagonal_residual(ones), std::sqrt(0.5));
  EXPECT_EQ(f_diagonal_residual(QTensor(2, 2, 2)), 0.0);
  EXPECT_EQ(f_diagonal_residual(t_identity(3, 2)), 0.0);
}

TEST(Residuals, Orthogonality) {
  EXPECT_EQ(orthogonality_residual(t_identity(3, 4)), 0.0);
  EXPECT_GT(orthogonality_residual(t_identity(3, 4) * 2.0), 1.0);
}

TEST(Residuals, ScaledInputsStillPass) {
  Rng rng(32);
  for (double s : {1e-6, 1.0, 1e6}) {
    const QTensor a = random_tensor(rng, 3, 2, 3) * s;
    EXPECT_TRUE(penrose_residuals(a, t_pinv(a)).pass) << "scale " << s;
  }
}

TEST(Residuals, DrazinOfIdentity) {
  const QTensor id = t_identity(2, 3);
  EXPECT_TRUE(drazin_residuals(id, id, 0).pass);
  EXPECT_FALSE(drazin_residuals(id, id * 2.0, 0).pass);
}

TEST(PenroseClassText, Parse) {
  EXPECT_EQ(PenroseClass::parse("1,3"), (PenroseClass{1, 3}));
  EXPECT_EQ(PenroseClass::parse("{1,4}"), (PenroseClass{1, 4}));
  EXPECT_EQ(PenroseClass::parse("1234"), (PenroseClass{1, 2, 3, 4}));
  EXPECT_EQ((PenroseClass{1, 3}).equations(), (std::vector<int>{1, 3}));
  EXPECT_THROW(PenroseClass::parse(""), UnsupportedClass);
  EXPECT_THROW(PenroseClass::parse("5"), UnsupportedClass);
  EXPECT_THROW(PenroseClass::parse("1;2"), UnsupportedClass);
  EXPECT_THROW((PenroseClass{0}), UnsupportedClass);
}

TEST(PenroseClassText, Membership) {
  Rng rng(33);
  const QTensor a = random_tensor(rng, 3, 2, 2);
  const QTensor x = t_pinv(a);
  const ResidualReport r = class_membership(a, x, PenroseClass{1, 3});
  EXPECT_EQ(r.values.size(), 2u);
  EXPECT_TRUE(r.pass);
}

}  // namespace
