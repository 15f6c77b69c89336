#include <gtest/gtest.h>

#include <cliffop/toeplitz.hpp>

using namespace cliffop;

namespace {

VectorXcd samples(int N, cd (*m)(double)) {
  VectorXcd v(N);
  for (int j = 0; j < N; ++j) v(j) = m(2.0 * kPi * j / N);
  return v;
}

}  // namespace

class CircleToeplitz : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    grid_ = new BoundaryGrid(make_circle_grid(128));
    pi_ = new BoundaryOperator(szego_projection(assemble_cauchy(build_dirac(1), *grid_)));
  }
  static void TearDownTestSuite() {
    delete pi_;
    delete grid_;
  }
  static Multiplier exp_mult(int k) {
    return Multiplier::scalar(*grid_, 1, [k](double t) { return std::polar(1.0, k * t); }, "e" + std::to_string(k));
  }
  static BoundaryGrid* grid_;
  static BoundaryOperator* pi_;
};
BoundaryGrid* CircleToeplitz::grid_ = nullptr;
BoundaryOperator* CircleToeplitz::pi_ = nullptr;

TEST(Winding, ExponentialsAndShiftedCircle) {
  for (int k = -3; k <= 3; ++k) {
    VectorXcd m(256);
    for (int j = 0; j < 256; ++j) m(j) = std::polar(1.0, k * 2.0 * kPi * j / 256);
    const auto r = winding_index(m);
    EXPECT_EQ(r.winding, k);
    EXPECT_EQ(r.index, -k);
  }
  EXPECT_EQ(winding_index(samples(64, [](double t) { return cd(2.0 + std::cos(t), std::sin(t)); })).winding, 0);
  EXPECT_EQ(winding_index(samples(64, [](double t) { return cd(0.5 + std::cos(t), std::sin(t)); })).winding, 1);
}

TEST(Winding, Errors) {
  EXPECT_THROW(winding_index(samples(64, [](double t) { return cd(std::cos(t)); })), NonFredholmError);
  EXPECT_THROW(winding_index(samples(8, [](double t) { return std::polar(1.0, 3 * t); })), ResolutionError);
  EXPECT_THROW(winding_index(VectorXcd::Ones(1)), InvalidArgument);
}

TEST_F(CircleToeplitz, BothRoutesGiveMinusWinding) {
  for (int k = -3; k <= 3; ++k) {
    const auto T = toeplitz_op(*pi_, exp_mult(k));
    const auto kt = numeric_kernel_count(T, pi_);
    const auto ke = numeric_kernel_count(extension_op(T, *pi_), nullptr);
    EXPECT_FALSE(kt.inconclusive);
    EXPECT_FALSE(ke.inconclusive);
    EXPECT_EQ(kt.index, -k) << k;
    EXPECT_EQ(ke.index, kt.index) << k;
    EXPECT_EQ(kt.ker, std::max(-k, 0));
    EXPECT_EQ(kt.coker, std::max(k, 0));
  }
}

TEST_F(CircleToeplitz, InvertibleSymbolHasTrivialKernel) {
  const auto M = Multiplier::scalar(*grid_, 1, [](double t) { return cd(2.0 + std::cos(t), std::sin(t)); }, "a");
  const auto kc = numeric_kernel_count(toeplitz_op(*pi_, M), pi_);
  EXPECT_EQ(kc.ker, 0);
  EXPECT_EQ(kc.coker, 0);
}

TEST_F(CircleToeplitz, RangeBasisIsOrthonormalHalf) {
  const MatrixXcd V = range_basis(*pi_);
  EXPECT_EQ(V.cols(), 65);  // modes 0..63 and the Nyquist mode
  EXPECT_LE((V.adjoint() * V - MatrixXcd::Identity(65, 65)).norm(), 1e-10);
}

TEST_F(CircleToeplitz, SemicommutatorIdentityAndRankOne) {
  const auto sc = semicommutator(*pi_, exp_mult(1), exp_mult(-1));
  EXPECT_LE(sc.identity_residual, 1e-9);
  int above = 0;
  for (Eigen::Index i = 0; i < sc.singular_values.size(); ++i) above += sc.singular_values(i) > 1e-6;
  EXPECT_EQ(above, 1);
  EXPECT_NEAR(sc.singular_values(0), 1.0, 1e-10);
  // With the commutator on the second factor the identity does not hold.
  EXPECT_GT(sc.swapped_residual, 0.5);
}

TEST_F(CircleToeplitz, SemicommutatorCompactForSmoothSymbols) {
  const auto a = Multiplier::scalar(*grid_, 1, [](double t) { return cd(std::exp(std::cos(t))); }, "a");
  const auto b = Multiplier::scalar(*grid_, 1, [](double t) { return cd(1.0 / (2.0 + std::sin(t))); }, "b");
  const auto sc = semicommutator(*pi_, a, b);
  EXPECT_LE(sc.identity_residual, 1e-9);
  // Singular values decay fast: a handful above 1e-6.
  int above = 0;
  for (Eigen::Index i = 0; i < sc.singular_values.size(); ++i) above += sc.singular_values(i) > 1e-6;
  EXPECT_GE(above, 1);
  EXPECT_LE(above, 20);
}

TEST_F(CircleToeplitz, ShapeChecks) {
  const auto other = make_circle_grid(64);
  const auto M = Multiplier::scalar(other, 1, [](double) { return cd(1.0); });
  EXPECT_THROW(toeplitz_op(*pi_, M), InvalidArgument);
  EXPECT_THROW(exp_mult(1) * M, InvalidArgument);
}
