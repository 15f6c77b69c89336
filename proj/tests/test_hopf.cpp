#include <gtest/gtest.h>

#include <cliffop/hopf_ops.hpp>

using namespace cliffop;

TEST(HopfCauchy, BlockFormMatchesDenseAssembly) {
  const auto op = build_dirac(2);
  const auto g = make_s3_grid(4, 6, 4);
  const HopfCauchy hc(op, g);
  const auto C = assemble_cauchy(op, g);
  EXPECT_LE((hc.dense() - C.matrix).norm() / C.matrix.norm(), 1e-12);
  const VectorXcd u = VectorXcd::Random(hc.dim());
  EXPECT_LE((hc.apply(u) - C * u).norm(), 1e-11 * u.norm() * C.matrix.norm());
}

TEST(HopfCauchy, DefectMatchesDenseNorm) {
  const auto op = build_dirac(2);
  const auto g = make_s3_grid(4, 4, 6);
  const HopfCauchy hc(op, g, Subtraction::Constant);
  const auto C = assemble_cauchy(op, g, Subtraction::Constant);
  EXPECT_NEAR(hc.projection_defect(), projection_defect(C), 1e-9 * projection_defect(C));
}

TEST(HopfCauchy, TwistsCloseUp) {
  const auto g = make_s3_grid(4, 6, 8);
  const HopfCauchy hc(build_dirac(2), g);
  MatrixXcd a = MatrixXcd::Identity(2, 2), b = MatrixXcd::Identity(2, 2);
  for (int s = 0; s < 6; ++s) a = a * hc.twist1();
  for (int s = 0; s < 8; ++s) b = b * hc.twist2();
  EXPECT_LE((a - MatrixXcd::Identity(2, 2)).norm(), 1e-13);
  EXPECT_LE((b - MatrixXcd::Identity(2, 2)).norm(), 1e-13);
}

TEST(HopfCauchy, RejectsWrongSetup) {
  const auto g = make_s3_grid(4, 4, 4);
  EXPECT_THROW(HopfCauchy(build_dirac(3), g), InvalidArgument);
  const auto c = make_circle_grid(16);
  EXPECT_THROW(HopfCauchy(build_dirac(2), c), InvalidArgument);
}

TEST(HopfCauchy, ResolvedDefectDecreasesUnderRefinement) {
  const auto op = build_dirac(2);
  double prev = 1e300;
  for (int m : {6, 8, 10}) {
    const auto g = make_s3_grid(m, m, m);
    const HopfCauchy hc(op, g);
    const double d = resolved_projection_defect(g, 2, 3, [&](const VectorXcd& u) { return hc.apply(u); });
    EXPECT_LT(d, prev) << m;
    prev = d;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(HopfCauchy, ResolvedDefectDetectsNonProjection) {
  // Doubling C gives C^2 = I on solution traces: defect about 3/4.
  const auto g = make_s3_grid(6, 6, 6);
  const HopfCauchy hc(build_dirac(2), g);
  const double d = resolved_projection_defect(g, 2, 1, [&](const VectorXcd& u) { return VectorXcd(2.0 * hc.apply(u)); });
  EXPECT_GT(d, 0.5);
}
