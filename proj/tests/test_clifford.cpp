#include <random>

#include <gtest/gtest.h>

#include <cliffop/clifford.hpp>
#include <cliffop/polynomial.hpp>

using namespace cliffop;

namespace {

MatrixXcd m2(cd a, cd b, cd c, cd d) {
  MatrixXcd m(2, 2);
  m << a, b, c, d;
  return m;
}

VectorXd random_covector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> nd;
  VectorXd x(dim);
  for (int m = 0; m < dim; ++m) x(m) = nd(rng);
  return x;
}

}  // namespace

TEST(Clifford, CauchyRiemannBase) {
  const auto op = build_dirac(1);
  EXPECT_EQ(op.k(), 1);
  EXPECT_EQ(op.alpha(0)(0, 0), cd(0.0));
  EXPECT_EQ(op.beta(0)(0, 0), cd(1.0));
}

TEST(Clifford, TwoDimensionalMatricesVerbatim) {
  const auto op = build_dirac(2);
  EXPECT_EQ(op.alpha(0), m2(0, 0, 0, 1));
  EXPECT_EQ(op.alpha(1), m2(0, 0, 1, 0));
  EXPECT_EQ(op.beta(0), m2(1, 0, 0, 0));
  EXPECT_EQ(op.beta(1), m2(0, -1, 0, 0));
}

TEST(Clifford, IdentitiesExactUpToFive) {
  for (int n = 1; n <= 5; ++n) {
    const auto op = build_dirac(n);
    EXPECT_EQ(op.k(), 1 << (n - 1));
    const auto rep = check_identities(op);
    EXPECT_EQ(rep.max_residual, 0.0) << "n = " << n;
    EXPECT_TRUE(rep.violations.empty());
  }
}

TEST(Clifford, BrokenCoefficientsAreLocated) {
  const auto good = build_dirac(2);
  std::vector<MatrixXcd> a = good.alpha(), b = good.beta();
  b[1] *= 2.0;
  const auto rep = check_identities(DiracOperator(a, b), 1e-14);
  ASSERT_FALSE(rep.violations.empty());
  bool hit = false;
  for (const auto& v : rep.violations) hit |= (v.j == 1 || v.k == 1);
  EXPECT_TRUE(hit);
  EXPECT_GT(rep.max_residual, 0.5);
}

TEST(Clifford, ConstructorRejectsMismatchedShapes) {
  EXPECT_THROW(DiracOperator({MatrixXcd::Identity(2, 2)}, {MatrixXcd::Identity(3, 3)}), InvalidArgument);
  EXPECT_THROW(DiracOperator({}, {}), InvalidArgument);
  EXPECT_THROW(build_dirac(0), InvalidArgument);
}

TEST(Clifford, SymbolFactorizesLaplacian) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 4; ++n) {
    const auto op = build_dirac(n);
    const MatrixXcd E = MatrixXcd::Identity(op.k(), op.k());
    for (int t = 0; t < 100; ++t) {
      const VectorXd xi = random_covector(rng, 2 * n);
      const MatrixXcd s = principal_symbol(op, xi);
      EXPECT_LE((s.adjoint() * s - 0.25 * xi.squaredNorm() * E).norm(), 1e-12 * xi.squaredNorm());
    }
  }
}

TEST(Clifford, CauchyRiemannSymbolValue) {
  const auto op = build_dirac(1);
  const VectorXd xi = (VectorXd(2) << 1.0, 0.0).finished();
  EXPECT_NEAR(std::abs(principal_symbol(op, xi)(0, 0) - cd(-0.5, 0.0)), 0.0, 1e-15);
  const VectorXd eta = (VectorXd(2) << 0.0, 1.0).finished();
  EXPECT_NEAR(std::abs(principal_symbol(op, eta)(0, 0) - cd(0.0, -0.5)), 0.0, 1e-15);
  EXPECT_THROW(principal_symbol(op, VectorXd::Ones(3)), InvalidArgument);
}

TEST(Clifford, AdjointSymbolIsMinusConjugateTranspose) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    const auto op = build_dirac(n);
    const VectorXd xi = random_covector(rng, 2 * n);
    EXPECT_LE((adjoint_symbol(op, xi) + principal_symbol(op, xi).adjoint()).norm(), 1e-14);
  }
}

TEST(Clifford, BoundarySymbolIsQuarterIsometry) {
  const auto op = build_dirac(2);
  VectorXcd nu(2);
  nu << 1.0, 0.0;
  EXPECT_LE((boundary_symbol(op, nu) - 0.5 * MatrixXcd::Identity(2, 2)).norm(), 1e-15);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const VectorXcd w = to_complex(random_covector(rng, 4)).normalized();
    const MatrixXcd s = boundary_symbol(op, w);
    EXPECT_LE((s.adjoint() * s - 0.25 * MatrixXcd::Identity(2, 2)).norm(), 1e-14);
  }
  VectorXcd bad(2);
  bad << 2.0, 0.0;
  EXPECT_THROW(boundary_symbol(op, bad), PreconditionError);
}

TEST(Clifford, GammaMatchesContraction) {
  const auto op = build_dirac(3);
  std::mt19937_64 rng(5);
  const VectorXd x = random_covector(rng, 6);
  MatrixXcd sum = MatrixXcd::Zero(op.k(), op.k());
  for (int m = 0; m < 6; ++m) sum += x(m) * op.gamma(m);
  EXPECT_LE((sum - op.gamma(x)).norm(), 1e-14);
}

TEST(Clifford, RotationTwistCovariance) {
  const auto op = build_dirac(2);
  std::mt19937_64 rng(9);
  for (int j = 0; j < 2; ++j) {
    const double phi = 0.7;
    const auto [U, V] = rotation_twist(op, j, phi);
    const VectorXd x = random_covector(rng, 4);
    VectorXcd z = to_complex(x);
    z(j) *= std::polar(1.0, phi);
    const MatrixXcd lhs = op.gamma(to_real(z));
    EXPECT_LE((lhs - U * op.gamma(x) * V.adjoint()).norm(), 1e-13);
    EXPECT_LE((V.adjoint() * V - MatrixXcd::Identity(2, 2)).norm(), 1e-14);
  }
  // N equal steps close up.
  const auto V = rotation_twist(op, 0, 2.0 * kPi / 8).second;
  MatrixXcd acc = MatrixXcd::Identity(2, 2);
  for (int s = 0; s < 8; ++s) acc = acc * V;
  EXPECT_LE((acc - MatrixXcd::Identity(2, 2)).norm(), 1e-13);
}

TEST(PolynomialSolutions, CauchyRiemannDegreeTwo) {
  const auto basis = polynomial_solutions(build_dirac(1), 2);
  EXPECT_TRUE(basis.exact());
  EXPECT_EQ(basis.size(), 3u);  // 1, z, z^2
  EXPECT_EQ(basis.max_residual(), 0.0);
}

TEST(PolynomialSolutions, TwoDimensionalContainsKnownSolutions) {
  const auto basis = polynomial_solutions(build_dirac(2), 1);
  EXPECT_EQ(basis.max_residual(), 0.0);
  // u = (z1, 0) and u = (conj z2, 0)
  MatrixXcd c1 = MatrixXcd::Zero(2, basis.monomials().size());
  c1(0, basis.index_of({1, 0, 0, 0})) = 1.0;
  MatrixXcd c2 = MatrixXcd::Zero(2, basis.monomials().size());
  c2(0, basis.index_of({0, 0, 0, 1})) = 1.0;
  EXPECT_LE(basis.distance_to_span(c1), 1e-12);
  EXPECT_LE(basis.distance_to_span(c2), 1e-12);
  // u = (conj z1, 0) is not a solution.
  MatrixXcd c3 = MatrixXcd::Zero(2, basis.monomials().size());
  c3(0, basis.index_of({0, 0, 1, 0})) = 1.0;
  EXPECT_GT(basis.distance_to_span(c3), 0.5);
}

TEST(PolynomialSolutions, EvaluationMatchesMonomials) {
  const auto basis = polynomial_solutions(build_dirac(2), 2);
  EXPECT_EQ(basis.max_residual(), 0.0);
  const VectorXd x = (VectorXd(4) << 0.3, -0.2, 0.5, 0.1).finished();
  const VectorXcd z = to_complex(x);
  MatrixXcd c = MatrixXcd::Zero(2, basis.monomials().size());
  c(1, basis.index_of({1, 1, 0, 0})) = 2.0;
  EXPECT_NEAR(std::abs(basis.evaluate(c, x)(1) - 2.0 * z(0) * z(1)), 0.0, 1e-15);
}
