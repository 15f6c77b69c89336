#pragma once

/**
 * @file boundary_ops.hpp
 * @brief Nystrom discretization of the Cauchy-type integral C, the projection
 *        Pi = I/2 + C, interior and exterior evaluation, and a Fourier oracle on the circle.
 *
 * Densities are block vectors: component a at node i sits at index i * k + a.
 */

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "kernels.hpp"

namespace cliffop {

struct Density {
  const BoundaryGrid* grid = nullptr;
  int k = 1;
  VectorXcd values;

  Density() = default;
  Density(const BoundaryGrid& g, int k_, VectorXcd v) : grid(&g), k(k_), values(std::move(v)) {
    if (values.size() != g.size() * k) throw InvalidArgument("Density: length must equal k * N");
  }

  /// Samples f(x) in C^k at every node.
  template <class F>
  static Density sample(const BoundaryGrid& g, int k, F&& f) {
    VectorXcd v(g.size() * k);
    for (Eigen::Index i = 0; i < g.size(); ++i) v.segment(i * k, k) = f(VectorXd(g.nodes.col(i)));
    return Density(g, k, std::move(v));
  }

  VectorXcd at(Eigen::Index i) const { return values.segment(i * k, k); }
};

struct BoundaryOperator {
  const BoundaryGrid* grid = nullptr;
  int k = 1;
  MatrixXcd matrix;
  std::string label;

  Eigen::Index dim() const { return matrix.rows(); }
  VectorXcd operator*(const VectorXcd& v) const { return matrix * v; }
};

inline void require_same_grid(const BoundaryOperator& a, const BoundaryOperator& b) {
  if (a.grid != b.grid || a.k != b.k || a.dim() != b.dim())
    throw InvalidArgument("operators live on different grids");
}

enum class Subtraction {
  Constant,  // subtract u(z_i); exact on constants
  Linear     // subtract the linear solution of Au = 0 matching u and its tangential derivatives at z_i
};

/// Per-node data shared by every row of C.
struct CauchyData {
  KernelContext ctx;
  const BoundaryGrid* grid;
  Subtraction rule;
  std::vector<MatrixXcd> node_contract;  // A(zeta_j)
  std::vector<MatrixXcd> sigma_w;        // sigma(zeta_j) w_j
  MatrixXcd zc;                          // complex node coordinates, n x N

  CauchyData(const DiracOperator& op, const BoundaryGrid& g, Subtraction r = Subtraction::Linear)
      : ctx(op), grid(&g), rule(r) {
    if (op.n() != g.n()) throw InvalidArgument("grid dimension does not match the operator");
    const Eigen::Index N = g.size();
    node_contract.resize(N);
    sigma_w.resize(N);
    zc.resize(op.n(), N);
    for (Eigen::Index j = 0; j < N; ++j) {
      zc.col(j) = to_complex(g.nodes.col(j));
      node_contract[j] = op.contract(zc.col(j));
      sigma_w[j] = g.weights(j) * boundary_symbol(op, g.complex_normals.col(j), 1e-10);
    }
  }
  int k() const { return ctx.op.k(); }
};

/// Row block of C_h for target node i: a k x (k N) matrix.
inline MatrixXcd cauchy_row(const CauchyData& cd_, Eigen::Index i) {
  const BoundaryGrid& g = *cd_.grid;
  const int k = cd_.k(), n = g.n();
  const Eigen::Index N = g.size();
  const MatrixXcd E = MatrixXcd::Identity(k, k);
  MatrixXcd row = MatrixXcd::Zero(k, k * N);
  MatrixXcd sum = MatrixXcd::Zero(k, k);
  const std::size_t nt = cd_.rule == Subtraction::Linear ? g.tangents.size() : 0;
  std::vector<MatrixXcd> p_t(nt, MatrixXcd::Zero(k, k));
  MatrixXcd p_nu = MatrixXcd::Zero(k, k);
  const VectorXd xi = g.nodes.col(i);
  const VectorXd nui = g.normals.col(i);
  MatrixXcd kb(k, k);
  for (Eigen::Index j = 0; j < N; ++j) {
    if (j == i) continue;
    const double r2 = (cd_.zc.col(i) - cd_.zc.col(j)).squaredNorm();
    const double scale = -cd_.ctx.normalization / std::pow(r2, n);
    kb.noalias() = scale * (cd_.node_contract[i] - cd_.node_contract[j]).adjoint() * cd_.sigma_w[j];
    row.middleCols(j * k, k) = kb;
    sum += kb;
    if (nt) {
      const VectorXd d = g.nodes.col(j) - xi;
      for (std::size_t c = 0; c < nt; ++c) p_t[c] += d.dot(g.tangents[c].col(i)) * kb;
      p_nu += d.dot(nui) * kb;
    }
  }
  row.middleCols(i * k, k) += 0.5 * E - sum;
  if (nt) {
    const MatrixXcd ginv = 4.0 * cd_.ctx.op.gamma(nui).adjoint();
    for (std::size_t c = 0; c < nt; ++c) {
      const VectorXd t = g.tangents[c].col(i);
      const MatrixXcd q = (p_t[c] - p_nu * ginv * cd_.ctx.op.gamma(t)) / t.squaredNorm();
      g.diffs[c].for_row(i, [&](Eigen::Index l, cd w) { row.middleCols(l * k, k) -= w * q; });
    }
  }
  return row;
}

/**
 * Nystrom matrix of C: (C_h u)(z_i) = u_i / 2 + sum_{j != i} w_j K(z_i, zeta_j)(u_j - l_i(zeta_j)),
 * where l_i is u_i (Constant) or the local linear solution through u_i (Linear).
 */
inline BoundaryOperator assemble_cauchy(const DiracOperator& op, const BoundaryGrid& g,
                                        Subtraction rule = Subtraction::Linear) {
  const CauchyData data(op, g, rule);
  const int k = op.k();
  BoundaryOperator C{&g, k, MatrixXcd(k * g.size(), k * g.size()), "C"};
  for (Eigen::Index i = 0; i < g.size(); ++i) C.matrix.middleRows(i * k, k) = cauchy_row(data, i);
  return C;
}

/// (C_h u)(z_i) without forming the matrix.
inline VectorXcd apply_cauchy_at(const CauchyData& data, Eigen::Index i, const VectorXcd& u) {
  if (u.size() != data.grid->size() * data.k()) throw InvalidArgument("density length mismatch");
  return cauchy_row(data, i) * u;
}

inline BoundaryOperator szego_projection(const BoundaryOperator& C) {
  BoundaryOperator P = C;
  P.matrix.diagonal().array() += 0.5;
  P.label = "Pi";
  return P;
}

/// ||C_h^2 - I/4||_2.
inline double projection_defect(const BoundaryOperator& C) {
  MatrixXcd D = C.matrix * C.matrix;
  D.diagonal().array() -= 0.25;
  return spectral_norm(D);
}

namespace detail {
inline void require_clear_of_boundary(const BoundaryGrid& g, const VectorXd& z, bool interior) {
  if (z.size() != 2 * g.n()) throw InvalidArgument("evaluation point must lie in R^{2n}");
  const double depth = g.domain.depth(z);
  const double band = 2.0 * g.spacing();
  if (interior && depth <= 0.0) throw DomainError("point is not inside the domain");
  if (!interior && depth >= 0.0) throw DomainError("point is not outside the domain");
  if (std::abs(depth) < band) throw DomainError("point lies within the guard band around S");
}
}  // namespace detail

/**
 * Boundary term sum_j w_j K(z, zeta_j) u_j of the Green formula at an interior point,
 * plus int_D Phi(z - zeta) (Au)(zeta) dv when volume samples are supplied (n = 1).
 */
inline VectorXcd interior_eval(const DiracOperator& op, const BoundaryGrid& g, const Density& u,
                               const VectorXd& z, const VolumeGrid* vol = nullptr,
                               const VectorXcd* au_samples = nullptr) {
  if (u.grid != &g || u.k != op.k()) throw InvalidArgument("interior_eval: density does not match grid");
  detail::require_clear_of_boundary(g, z, true);
  const KernelContext ctx(op);
  const VectorXcd zc = to_complex(z);
  const int k = op.k();
  VectorXcd acc = VectorXcd::Zero(k);
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    const MatrixXcd K = cauchy_kernel(ctx, zc, to_complex(g.nodes.col(j)), g.complex_normals.col(j));
    acc += g.weights(j) * (K * u.at(j));
  }
  if (vol) {
    if (g.n() != 1) throw InvalidArgument("interior_eval: volume term is available for n = 1 only");
    if (!au_samples || au_samples->size() != vol->size() * k)
      throw InvalidArgument("interior_eval: volume term needs Au sampled at every volume node");
    for (Eigen::Index j = 0; j < vol->size(); ++j) {
      const VectorXcd d = zc - to_complex(vol->nodes.col(j));
      if (d.squaredNorm() == 0.0) continue;  // measure-zero node at the pole, weight is zero anyway
      acc += vol->weights(j) * (phi(ctx, d) * au_samples->segment(j * k, k));
    }
  }
  return acc;
}

/// ||sum_j w_j Phi(w - zeta_j) sigma(zeta_j) u_j|| for an exterior point w.
inline double exterior_vanishing(const DiracOperator& op, const BoundaryGrid& g, const Density& u,
                                 const VectorXd& w) {
  if (u.grid != &g || u.k != op.k()) throw InvalidArgument("exterior_vanishing: density does not match grid");
  detail::require_clear_of_boundary(g, w, false);
  const KernelContext ctx(op);
  const VectorXcd wc = to_complex(w);
  VectorXcd acc = VectorXcd::Zero(op.k());
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    const MatrixXcd s = boundary_symbol(op, g.complex_normals.col(j), 1e-10);
    acc += g.weights(j) * (phi(ctx, wc - to_complex(g.nodes.col(j))) * s * u.at(j));
  }
  return acc.norm();
}

/// Orthogonal projector onto Fourier modes k in [lo, hi] on N equispaced samples.
inline MatrixXcd fourier_band(int N, int lo, int hi) {
  MatrixXcd P = MatrixXcd::Zero(N, N);
  VectorXcd row(N);
  for (int s = 0; s < N; ++s) {
    cd acc = 0.0;
    for (int m = lo; m <= hi; ++m) acc += std::polar(1.0, 2.0 * kPi * double(m) * s / N);
    row(s) = acc / double(N);
  }
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) P(j, l) = row(((j - l) % N + N) % N);
  return P;
}

/// Projector onto |k| <= M.
inline MatrixXcd band_projector(int N, int M) { return fourier_band(N, -M, M); }

/// Szego oracle on the unit circle: projector onto the modes 0..M, built by DFT synthesis.
inline BoundaryOperator exact_szego_circle(int N, int M, const BoundaryGrid* grid = nullptr) {
  if (M < 0) throw InvalidArgument("exact_szego_circle: cutoff must be >= 0");
  if (N <= 2 * M) throw AliasingError("exact_szego_circle: need N > 2M");
  return BoundaryOperator{grid, 1, fourier_band(N, 0, M), "Pi_oracle"};
}

}  // namespace cliffop
