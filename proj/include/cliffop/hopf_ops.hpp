#pragma once

/**
 * @file hopf_ops.hpp
 * @brief C_h on a Hopf grid of S^3 in block-circulant form.
 *
 * The torus rotations (z1, z2) -> (e^{i phi} z1, z2) and (z1, e^{i psi} z2) map the grid
 * onto itself and satisfy C(Ri, Rl) = V C(i, l) V^* with the spin lift V of the rotation.
 * After the pointwise unitary twist u~ = V1^{-p} V2^{-q} u at node (a, p, q) the
 * operator is block circulant in (p, q), so a 2D DFT splits it into N_t1 * N_t2 blocks
 * of size N_eta * k. Norms computed blockwise are exact.
 */

#include <vector>

#include "boundary_ops.hpp"
#include "polynomial.hpp"

namespace cliffop {

class HopfCauchy {
 public:
  HopfCauchy(const DiracOperator& op, const BoundaryGrid& g, Subtraction rule = Subtraction::Linear)
      : grid_(&g), k_(op.k()) {
    if (g.kind != GridKind::Hopf || op.n() != 2)
      throw InvalidArgument("HopfCauchy: needs a Hopf grid and an operator on C^2");
    if (g.domain.center.norm() != 0.0) throw InvalidArgument("HopfCauchy: sphere must be centered at 0");
    ne_ = g.params[0];
    n1_ = g.params[1];
    n2_ = g.params[2];
    v1_ = rotation_twist(op, 0, 2.0 * kPi / n1_).second;
    v2_ = rotation_twist(op, 1, 2.0 * kPi / n2_).second;
    p1_ = powers(v1_, n1_);
    p2_ = powers(v2_, n2_);

    const CauchyData data(op, g, rule);
    const int k = k_;
    const Eigen::Index nb = Eigen::Index(ne_) * k;
    // h[(s * n2 + t)] is the nb x nb matrix H(s, t) with entries H_ab(s, t).
    std::vector<MatrixXcd> h(std::size_t(n1_) * n2_, MatrixXcd::Zero(nb, nb));
    for (int a = 0; a < ne_; ++a) {
      const MatrixXcd row = cauchy_row(data, index(a, 0, 0));
      for (int b = 0; b < ne_; ++b)
        for (int s = 0; s < n1_; ++s)
          for (int t = 0; t < n2_; ++t)
            h[std::size_t(s) * n2_ + t].block(a * k, b * k, k, k) =
                row.middleCols(index(b, s, t) * k, k) * p1_[s] * p2_[t];
    }
    // B_m = sum_{s,t} H(s,t) e^{2 pi i (m1 s / n1 + m2 t / n2)}, separable.
    std::vector<MatrixXcd> tmp(std::size_t(n1_) * n2_, MatrixXcd::Zero(nb, nb));
    for (int s = 0; s < n1_; ++s)
      for (int m2 = 0; m2 < n2_; ++m2) {
        MatrixXcd& acc = tmp[std::size_t(s) * n2_ + m2];
        for (int t = 0; t < n2_; ++t) acc += std::polar(1.0, 2.0 * kPi * double(m2) * t / n2_) * h[std::size_t(s) * n2_ + t];
      }
    blocks_.assign(std::size_t(n1_) * n2_, MatrixXcd::Zero(nb, nb));
    for (int m1 = 0; m1 < n1_; ++m1)
      for (int m2 = 0; m2 < n2_; ++m2) {
        MatrixXcd& acc = blocks_[std::size_t(m1) * n2_ + m2];
        for (int s = 0; s < n1_; ++s) acc += std::polar(1.0, 2.0 * kPi * double(m1) * s / n1_) * tmp[std::size_t(s) * n2_ + m2];
      }
  }

  Eigen::Index index(int a, int p, int q) const {
    return (Eigen::Index(a) * n1_ + ((p % n1_) + n1_) % n1_) * n2_ + ((q % n2_) + n2_) % n2_;
  }
  int k() const { return k_; }
  Eigen::Index dim() const { return grid_->size() * k_; }
  const MatrixXcd& twist1() const { return v1_; }
  const MatrixXcd& twist2() const { return v2_; }
  const std::vector<MatrixXcd>& blocks() const { return blocks_; }

  /// C_h u via twist, DFT, blockwise multiply, inverse DFT, untwist.
  VectorXcd apply(const VectorXcd& u) const {
    if (u.size() != dim()) throw InvalidArgument("HopfCauchy::apply: density length mismatch");
    const int k = k_;
    const Eigen::Index nb = Eigen::Index(ne_) * k;
    // spectra[m] holds nb coefficients
    std::vector<VectorXcd> tw(std::size_t(n1_) * n2_, VectorXcd(nb));
    for (int a = 0; a < ne_; ++a)
      for (int p = 0; p < n1_; ++p)
        for (int q = 0; q < n2_; ++q)
          tw[std::size_t(p) * n2_ + q].segment(a * k, k) =
              p1_[(n1_ - p) % n1_] * p2_[(n2_ - q) % n2_] * u.segment(index(a, p, q) * k, k);
    auto dft = [&](std::vector<VectorXcd>& x, double sign) {
      std::vector<VectorXcd> y(x.size(), VectorXcd::Zero(nb));
      for (int p = 0; p < n1_; ++p)
        for (int m2 = 0; m2 < n2_; ++m2)
          for (int q = 0; q < n2_; ++q)
            y[std::size_t(p) * n2_ + m2] += std::polar(1.0, sign * 2.0 * kPi * double(m2) * q / n2_) * x[std::size_t(p) * n2_ + q];
      for (auto& v : x) v.setZero();
      for (int m1 = 0; m1 < n1_; ++m1)
        for (int p = 0; p < n1_; ++p) {
          const cd w = std::polar(1.0, sign * 2.0 * kPi * double(m1) * p / n1_);
          for (int m2 = 0; m2 < n2_; ++m2) x[std::size_t(m1) * n2_ + m2] += w * y[std::size_t(p) * n2_ + m2];
        }
    };
    dft(tw, -1.0);
    for (std::size_t m = 0; m < tw.size(); ++m) tw[m] = blocks_[m] * tw[m] / double(n1_ * n2_);
    dft(tw, 1.0);
    VectorXcd out(dim());
    for (int a = 0; a < ne_; ++a)
      for (int p = 0; p < n1_; ++p)
        for (int q = 0; q < n2_; ++q)
          out.segment(index(a, p, q) * k, k) = p1_[p] * p2_[q] * tw[std::size_t(p) * n2_ + q].segment(a * k, k);
    return out;
  }

  /// Dense C_h reconstructed from the blocks (small grids only).
  MatrixXcd dense() const {
    MatrixXcd M(dim(), dim());
    for (Eigen::Index c = 0; c < dim(); ++c) M.col(c) = apply(VectorXcd::Unit(dim(), c));
    return M;
  }

  /// ||C_h^2 - I/4||_2, optionally in the L^2(S) inner product (weights).
  double projection_defect(bool weighted = false) const {
    double worst = 0.0;
    const Eigen::Index nb = Eigen::Index(ne_) * k_;
    VectorXd s = VectorXd::Ones(nb);
    if (weighted)
      for (int a = 0; a < ne_; ++a) s.segment(a * k_, k_).setConstant(std::sqrt(grid_->weights(index(a, 0, 0))));
    for (const auto& B : blocks_) {
      const MatrixXcd Bs = s.asDiagonal() * B * s.cwiseInverse().asDiagonal();
      MatrixXcd D = Bs * Bs;
      D.diagonal().array() -= 0.25;
      worst = std::max(worst, spectral_norm(D));
    }
    return worst;
  }

 private:
  static std::vector<MatrixXcd> powers(const MatrixXcd& v, int count) {
    std::vector<MatrixXcd> out(count);
    out[0] = MatrixXcd::Identity(v.rows(), v.cols());
    for (int i = 1; i < count; ++i) out[i] = out[i - 1] * v;
    return out;
  }

  const BoundaryGrid* grid_;
  int k_;
  int ne_ = 0, n1_ = 0, n2_ = 0;
  MatrixXcd v1_, v2_;
  std::vector<MatrixXcd> p1_, p2_;
  std::vector<MatrixXcd> blocks_;
};

/**
 * Defect ||C_h^2 - I/4|| restricted to the traces of C^k-valued polynomials of real
 * degree <= degree, measured in L^2(S). These are the densities the grid resolves.
 */
template <class ApplyC>
double resolved_projection_defect(const BoundaryGrid& g, int k, int degree, ApplyC&& apply_c) {
  const int d = 2 * g.n();
  const auto exps = monomials_upto(g.n(), degree);  // length-2n exponents, reused as real exponents
  const Eigen::Index N = g.size();
  MatrixXcd P = MatrixXcd::Zero(N * k, Eigen::Index(exps.size()) * k);
  for (std::size_t e = 0; e < exps.size(); ++e)
    for (Eigen::Index i = 0; i < N; ++i) {
      double v = 1.0;
      for (int m = 0; m < d; ++m) v *= std::pow(g.nodes(m, i), exps[e][m]);
      for (int a = 0; a < k; ++a) P(i * k + a, Eigen::Index(e) * k + a) = v;
    }
  VectorXd s(N * k);
  for (Eigen::Index i = 0; i < N; ++i) s.segment(i * k, k).setConstant(std::sqrt(g.weights(i)));
  const MatrixXcd SP = s.asDiagonal() * P;
  Eigen::JacobiSVD<MatrixXcd> svd(SP, Eigen::ComputeThinU);
  const VectorXd sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > 1e-9 * sv(0)) ++r;
  const MatrixXcd Q = svd.matrixU().leftCols(r);
  MatrixXcd D(N * k, r);
  for (Eigen::Index c = 0; c < r; ++c) {
    const VectorXcd x = s.cwiseInverse().asDiagonal() * Q.col(c);
    const VectorXcd y = apply_c(apply_c(x));
    D.col(c) = s.asDiagonal() * y - 0.25 * Q.col(c);
  }
  return spectral_norm(D);
}

}  // namespace cliffop
