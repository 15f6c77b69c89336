#pragma once

/**
 * @file toeplitz.hpp
 * @brief Toeplitz operators T_M = Pi M, the extension E = T Pi + (I - Pi), the winding
 *        number index for scalar symbols on the circle, finite-section kernel counts
 *        and the semicommutator T_{M1} T_{M2} - T_{M1 M2}.
 */

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "boundary_ops.hpp"

namespace cliffop {

/// Per-node k x k multiplication operator.
struct Multiplier {
  int k = 1;
  std::vector<MatrixXcd> values;
  std::string descriptor;

  template <class F>
  static Multiplier sample(const BoundaryGrid& g, int k, F&& f, std::string descriptor = {}) {
    Multiplier m{k, {}, std::move(descriptor)};
    m.values.reserve(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      MatrixXcd v = f(VectorXd(g.nodes.col(i)));
      if (v.rows() != k || v.cols() != k) throw InvalidArgument("Multiplier: value must be k x k");
      m.values.push_back(std::move(v));
    }
    return m;
  }

  /// Scalar symbol m(theta) on a circle grid, times the identity.
  static Multiplier scalar(const BoundaryGrid& g, int k, const std::function<cd(double)>& m,
                           std::string descriptor = {}) {
    return sample(
        g, k,
        [&](const VectorXd& x) {
          const VectorXd y = x - g.domain.center;
          return MatrixXcd(m(std::atan2(y(1), y(0))) * MatrixXcd::Identity(k, k));
        },
        std::move(descriptor));
  }

  double sup_norm() const {
    double s = 0.0;
    for (const auto& v : values) s = std::max(s, spectral_norm(v));
    return s;
  }

  MatrixXcd matrix() const {
    const Eigen::Index N = Eigen::Index(values.size());
    MatrixXcd M = MatrixXcd::Zero(N * k, N * k);
    for (Eigen::Index i = 0; i < N; ++i) M.block(i * k, i * k, k, k) = values[i];
    return M;
  }
};

inline Multiplier operator*(const Multiplier& a, const Multiplier& b) {
  if (a.k != b.k || a.values.size() != b.values.size()) throw InvalidArgument("multiplier size mismatch");
  Multiplier m{a.k, {}, a.descriptor + "*" + b.descriptor};
  for (std::size_t i = 0; i < a.values.size(); ++i) m.values.push_back(a.values[i] * b.values[i]);
  return m;
}

inline BoundaryOperator toeplitz_op(const BoundaryOperator& Pi, const Multiplier& M) {
  if (M.k != Pi.k || Eigen::Index(M.values.size()) * M.k != Pi.dim())
    throw InvalidArgument("toeplitz_op: multiplier does not match the grid");
  return BoundaryOperator{Pi.grid, Pi.k, Pi.matrix * M.matrix(), "T_" + M.descriptor};
}

inline BoundaryOperator extension_op(const BoundaryOperator& T, const BoundaryOperator& Pi) {
  require_same_grid(T, Pi);
  MatrixXcd E = T.matrix * Pi.matrix - Pi.matrix;
  E.diagonal().array() += 1.0;
  return BoundaryOperator{T.grid, T.k, std::move(E), "E_" + T.label};
}

struct WindingResult {
  int winding = 0;
  int index = 0;  // predicted index of T_m: minus the winding number
};

/// Winding number of closed-curve samples m_0..m_{N-1} by summed phase increments.
inline WindingResult winding_index(const VectorXcd& m, double max_step = kPi / 2) {
  if (m.size() < 2) throw InvalidArgument("winding_index: need at least two samples");
  const double top = m.cwiseAbs().maxCoeff();
  if (!(m.cwiseAbs().minCoeff() > 1e-12 * top)) throw NonFredholmError("winding_index: symbol vanishes");
  double total = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double step = std::arg(m((i + 1) % m.size()) / m(i));
    if (std::abs(step) >= max_step) throw ResolutionError("winding_index: phase increment too large");
    total += step;
  }
  WindingResult r;
  r.winding = int(std::lround(total / (2.0 * kPi)));
  r.index = -r.winding;
  return r;
}

struct KernelCount {
  int ker = 0;
  int coker = 0;
  int index = 0;
  bool inconclusive = false;
  std::vector<double> ker_fractions, coker_fractions;
};

/// Orthonormal basis of the range of Pi (columns), from Pi Pi^* eigenvectors above 1/4.
inline MatrixXcd range_basis(const BoundaryOperator& Pi) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(Pi.matrix * Pi.matrix.adjoint());
  const VectorXd ev = es.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.25) keep.push_back(i);
  MatrixXcd V(Pi.dim(), Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) V.col(Eigen::Index(c)) = es.eigenvectors().col(keep[c]);
  return V;
}

namespace detail {
/// Eigenvalues of X^* P_low X: how the near-null subspace X splits between low and high modes.
inline std::vector<double> low_mode_fractions(const MatrixXcd& X, const MatrixXcd& Plow) {
  if (X.cols() == 0) return {};
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(X.adjoint() * Plow * X);
  return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
}
}  // namespace detail

/**
 * Finite-section estimate of dim ker and dim coker of T on ran(Pi) (or of T on the whole
 * space when Pi is null). Singular vectors with singular value below tau span a near-null
 * subspace; its directions carrying at least eta of their energy in the modes
 * |k| <= N/4 are counted, the rest are truncation artifacts at the top of the band.
 * Fractions within 0.05 of eta make the result inconclusive.
 */
inline KernelCount numeric_kernel_count(const BoundaryOperator& T, const BoundaryOperator* Pi,
                                        double tau = 1e-6, double eta = 0.9) {
  if (!T.grid || T.grid->kind != GridKind::Circle || T.k != 1)
    throw InvalidArgument("numeric_kernel_count: scalar operators on circle grids only");
  const int N = int(T.dim());
  const MatrixXcd V = Pi ? range_basis(*Pi) : MatrixXcd::Identity(N, N);
  const MatrixXcd Tr = V.adjoint() * T.matrix * V;
  // Right and left singular subspaces for singular values below tau, from the Gram matrices.
  auto near_null = [&](const MatrixXcd& gram) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gram);
    Eigen::Index cnt = 0;
    while (cnt < es.eigenvalues().size() && es.eigenvalues()(cnt) < tau * tau) ++cnt;
    return MatrixXcd(V * es.eigenvectors().leftCols(cnt));
  };
  const MatrixXcd Xker = near_null(Tr.adjoint() * Tr);
  const MatrixXcd Xcok = near_null(Tr * Tr.adjoint());
  const MatrixXcd Plow = band_projector(N, N / 4);
  KernelCount kc;
  kc.ker_fractions = detail::low_mode_fractions(Xker, Plow);
  kc.coker_fractions = detail::low_mode_fractions(Xcok, Plow);
  for (double f : kc.ker_fractions) {
    if (std::abs(f - eta) < 0.05) kc.inconclusive = true;
    if (f >= eta) ++kc.ker;
  }
  for (double f : kc.coker_fractions) {
    if (std::abs(f - eta) < 0.05) kc.inconclusive = true;
    if (f >= eta) ++kc.coker;
  }
  kc.index = kc.ker - kc.coker;
  return kc;
}

struct SemicommutatorResult {
  MatrixXcd R;                 // T_{M1} T_{M2} - T_{M1 M2} on ran(Pi), orthonormal coordinates
  VectorXd singular_values;    // descending
  double identity_residual;    // relative, corrected order [C, M1](M2/2 - C M2)
  double swapped_residual;     // relative, order [C, M2](M1/2 - C M1)
};

inline SemicommutatorResult semicommutator(const BoundaryOperator& Pi, const Multiplier& M1,
                                           const Multiplier& M2) {
  const MatrixXcd V = range_basis(Pi);
  const MatrixXcd m1 = M1.matrix(), m2 = M2.matrix();
  const MatrixXcd& P = Pi.matrix;
  MatrixXcd C = P;
  C.diagonal().array() -= 0.5;
  const MatrixXcd Rfull = P * m1 * P * m2 - P * (m1 * m2);
  SemicommutatorResult out;
  out.R = V.adjoint() * Rfull * V;
  Eigen::JacobiSVD<MatrixXcd> svd(out.R);
  out.singular_values = svd.singularValues();
  const double scale = std::max(M1.sup_norm() * M2.sup_norm(), 1e-300);
  auto comm = [&](const MatrixXcd& m) { return MatrixXcd(C * m - m * C); };
  const MatrixXcd fixed = (Rfull + comm(m1) * (0.5 * m2 - C * m2)) * V;
  const MatrixXcd swapped = (Rfull + comm(m2) * (0.5 * m1 - C * m1)) * V;
  out.identity_residual = spectral_norm(fixed) / scale;
  out.swapped_residual = spectral_norm(swapped) / scale;
  return out;
}

}  // namespace cliffop
