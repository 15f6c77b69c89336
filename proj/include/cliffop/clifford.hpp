#pragma once

/**
 * @file clifford.hpp
 * @brief Constant-coefficient Dirac operators A = sum_j alpha_j d/dz_j + beta_j d/dzbar_j
 *        on C^n, their coefficient identities and principal symbols.
 *
 * Symbol convention: sigma(d/dx_m) = -xi_m. With zeta_j(xi) = xi_j + i xi_{n+j}
 * this gives sigma(d/dz_j) = -conj(zeta_j)/2 and sigma(d/dzbar_j) = -zeta_j/2,
 * so the Cauchy-Riemann operator has symbol -(xi_1 + i xi_2)/2.
 */

#include <cmath>
#include <utility>
#include <vector>

#include "types.hpp"

namespace cliffop {

/// Coefficient matrices (alpha_j, beta_j), j = 1..n, each k x k.
class DiracOperator {
 public:
  DiracOperator(std::vector<MatrixXcd> alpha, std::vector<MatrixXcd> beta)
      : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_.empty() || alpha_.size() != beta_.size())
      throw InvalidArgument("DiracOperator: alpha and beta must be non-empty lists of equal length");
    k_ = static_cast<int>(alpha_.front().rows());
    for (std::size_t j = 0; j < alpha_.size(); ++j) {
      if (alpha_[j].rows() != k_ || alpha_[j].cols() != k_ || beta_[j].rows() != k_ ||
          beta_[j].cols() != k_)
        throw InvalidArgument("DiracOperator: all coefficient matrices must be k x k");
    }
  }

  int n() const { return static_cast<int>(alpha_.size()); }
  int k() const { return k_; }
  const std::vector<MatrixXcd>& alpha() const { return alpha_; }
  const std::vector<MatrixXcd>& beta() const { return beta_; }
  const MatrixXcd& alpha(int j) const { return alpha_.at(j); }
  const MatrixXcd& beta(int j) const { return beta_.at(j); }

  /// A(w) := sum_j alpha_j conj(w_j) + beta_j w_j for w in C^n (the matrix A(wbar, w)).
  MatrixXcd contract(const Eigen::Ref<const VectorXcd>& w) const {
    if (w.size() != n()) throw InvalidArgument("contract: vector length must equal n");
    MatrixXcd out = MatrixXcd::Zero(k_, k_);
    for (int j = 0; j < n(); ++j) out += alpha_[j] * std::conj(w(j)) + beta_[j] * w(j);
    return out;
  }

  /// Real-coordinate coefficient Gamma_m with A = sum_m Gamma_m d/dx_m, m = 0..2n-1.
  MatrixXcd gamma(int m) const {
    const int nn = n();
    if (m < 0 || m >= 2 * nn) throw InvalidArgument("gamma: coordinate index out of range");
    if (m < nn) return 0.5 * (alpha_[m] + beta_[m]);
    return 0.5 * kI * (beta_[m - nn] - alpha_[m - nn]);
  }

  /// Gamma(x) = sum_m x_m Gamma_m = A(z(x)) / 2 for real x in R^{2n}.
  MatrixXcd gamma(const Eigen::Ref<const VectorXd>& x) const {
    if (x.size() != 2 * n()) throw InvalidArgument("gamma: covector length must be 2n");
    return 0.5 * contract(to_complex(x));
  }

 private:
  std::vector<MatrixXcd> alpha_;
  std::vector<MatrixXcd> beta_;
  int k_ = 0;
};

/**
 * Recursive doubling: D_1 = (alpha = 0, beta = 1); from D_{m-1} of size k,
 * alpha_j <- diag(alpha_j, beta_j^*), beta_j <- diag(beta_j, alpha_j^*) for j < m,
 * alpha_m = [[0,0],[E,0]], beta_m = [[0,-E],[0,0]]. Result has k = 2^{n-1}.
 */
inline DiracOperator build_dirac(int n) {
  if (n < 1) throw InvalidArgument("build_dirac: n must be >= 1");
  std::vector<MatrixXcd> alpha{MatrixXcd::Zero(1, 1)};
  std::vector<MatrixXcd> beta{MatrixXcd::Constant(1, 1, cd(1.0, 0.0))};
  for (int m = 2; m <= n; ++m) {
    const Eigen::Index k = alpha.front().rows();
    std::vector<MatrixXcd> na, nb;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      MatrixXcd a = MatrixXcd::Zero(2 * k, 2 * k);
      MatrixXcd b = MatrixXcd::Zero(2 * k, 2 * k);
      a.topLeftCorner(k, k) = alpha[j];
      a.bottomRightCorner(k, k) = beta[j].adjoint();
      b.topLeftCorner(k, k) = beta[j];
      b.bottomRightCorner(k, k) = alpha[j].adjoint();
      na.push_back(std::move(a));
      nb.push_back(std::move(b));
    }
    MatrixXcd am = MatrixXcd::Zero(2 * k, 2 * k);
    MatrixXcd bm = MatrixXcd::Zero(2 * k, 2 * k);
    am.bottomLeftCorner(k, k) = MatrixXcd::Identity(k, k);
    bm.topRightCorner(k, k) = -MatrixXcd::Identity(k, k);
    na.push_back(std::move(am));
    nb.push_back(std::move(bm));
    alpha = std::move(na);
    beta = std::move(nb);
  }
  return DiracOperator(std::move(alpha), std::move(beta));
}

struct IdentityViolation {
  int j = 0;
  int k = 0;
  int family = 0;  // 1: a_j^* a_k + b_k^* b_j = delta E, 2: a_j^* b_k + a_k^* b_j = 0
  double residual = 0.0;
};

struct IdentityReport {
  double max_residual = 0.0;
  std::vector<IdentityViolation> violations;
  bool ok(double tol = 0.0) const { return max_residual <= tol; }
};

/// Residuals of the coefficient identities that make A^*A = -(1/4) Laplacian.
inline IdentityReport check_identities(const DiracOperator& op, double report_tol = 0.0) {
  IdentityReport rep;
  const int n = op.n();
  const MatrixXcd E = MatrixXcd::Identity(op.k(), op.k());
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      MatrixXcd f1 = op.alpha(j).adjoint() * op.alpha(k) + op.beta(k).adjoint() * op.beta(j);
      if (j == k) f1 -= E;
      const MatrixXcd f2 = op.alpha(j).adjoint() * op.beta(k) + op.alpha(k).adjoint() * op.beta(j);
      const double r1 = f1.cwiseAbs().maxCoeff();
      const double r2 = f2.cwiseAbs().maxCoeff();
      if (r1 > report_tol) rep.violations.push_back({j, k, 1, r1});
      if (r2 > report_tol) rep.violations.push_back({j, k, 2, r2});
      rep.max_residual = std::max({rep.max_residual, r1, r2});
    }
  }
  return rep;
}

inline void require_covector(const DiracOperator& op, const Eigen::Ref<const VectorXd>& xi) {
  if (xi.size() != 2 * op.n())
    throw InvalidArgument("covector must have length 2n = " + std::to_string(2 * op.n()));
}

/// sigma^1(A)(xi) = -(1/2) sum_j [alpha_j conj(zeta_j) + beta_j zeta_j].
inline MatrixXcd principal_symbol(const DiracOperator& op, const Eigen::Ref<const VectorXd>& xi) {
  require_covector(op, xi);
  return -0.5 * op.contract(to_complex(xi));
}

/// sigma^1(A^*)(xi) for the formal adjoint A^* = -sum_j (alpha_j^* d/dzbar_j + beta_j^* d/dz_j).
/// Under the real symbol convention this is minus the conjugate transpose of sigma^1(A)(xi).
inline MatrixXcd adjoint_symbol(const DiracOperator& op, const Eigen::Ref<const VectorXd>& xi) {
  require_covector(op, xi);
  const VectorXcd zeta = to_complex(xi);
  MatrixXcd out = MatrixXcd::Zero(op.k(), op.k());
  for (int j = 0; j < op.n(); ++j)
    out += op.alpha(j).adjoint() * zeta(j) + op.beta(j).adjoint() * std::conj(zeta(j));
  return 0.5 * out;
}

/// sigma(zeta) = (1/2) sum_j [alpha_j conj(nu_c,j) + beta_j nu_c,j]; sigma^* sigma = E/4.
inline MatrixXcd boundary_symbol(const DiracOperator& op, const Eigen::Ref<const VectorXcd>& nu_c,
                                 double unit_tol = 1e-12) {
  if (nu_c.size() != op.n()) throw InvalidArgument("boundary_symbol: normal must lie in C^n");
  if (std::abs(nu_c.norm() - 1.0) > unit_tol)
    throw PreconditionError("boundary_symbol: complex normal is not a unit vector");
  return 0.5 * op.contract(nu_c);
}

/**
 * Spin lift of the rotation z_j -> e^{i phi} z_j: returns (U, V) with
 * Gamma(R x) = U Gamma(x) V^*. Both carry the phase e^{i phi/2}, so a full turn
 * through N equal steps gives V^N = E. Kernels built from Gamma(d)^* Gamma(nu)
 * transform as K(Rz, R zeta) = V K(z, zeta) V^*.
 */
inline std::pair<MatrixXcd, MatrixXcd> rotation_twist(const DiracOperator& op, int j, double phi) {
  if (j < 0 || j >= op.n()) throw InvalidArgument("rotation_twist: complex index out of range");
  const MatrixXcd ga = 2.0 * op.gamma(j);
  const MatrixXcd gb = 2.0 * op.gamma(op.n() + j);
  const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  const cd phase = std::polar(1.0, 0.5 * phi);
  const MatrixXcd E = MatrixXcd::Identity(op.k(), op.k());
  MatrixXcd U = phase * (c * E + s * gb * ga.adjoint());
  MatrixXcd V = phase * (c * E + s * gb.adjoint() * ga);
  return {std::move(U), std::move(V)};
}

}  // namespace cliffop
