#pragma once

/**
 * @file kernels.hpp
 * @brief Fundamental solutions of the Laplacian and of A, and the boundary Cauchy kernel.
 */

#include <cmath>

#include "clifford.hpp"

namespace cliffop {

/// e(z) = ln|z| / (2 pi) for n = 1, else (n-1)!/(2 pi^n) |z|^{2-2n} / (2-2n).
inline double laplace_fundamental(int n, const Eigen::Ref<const VectorXcd>& z) {
  if (n < 1 || z.size() != n) throw InvalidArgument("laplace_fundamental: point must lie in C^n");
  const double r = z.norm();
  if (r == 0.0) throw SingularityError("laplace_fundamental: z = 0");
  if (n == 1) return std::log(r) / (2.0 * kPi);
  const double c = std::tgamma(double(n)) / (2.0 * std::pow(kPi, n));
  return c / (2.0 - 2.0 * n) * std::pow(r, 2.0 - 2.0 * n);
}

struct KernelContext {
  DiracOperator op;
  int n;
  double normalization;  // (n-1)! / pi^n

  explicit KernelContext(DiracOperator op_)
      : op(std::move(op_)), n(op.n()), normalization(std::tgamma(double(op.n())) / std::pow(kPi, op.n())) {}
};

/// Phi(d) = (n-1)!/pi^n [sum_j alpha_j conj(d_j) + beta_j d_j]^* / |d|^{2n}.
inline MatrixXcd phi(const KernelContext& ctx, const Eigen::Ref<const VectorXcd>& d) {
  if (d.size() != ctx.n) throw InvalidArgument("phi: displacement must lie in C^n");
  const double r2 = d.squaredNorm();
  if (r2 == 0.0) throw SingularityError("phi: zero displacement");
  return (ctx.normalization / std::pow(r2, ctx.n)) * ctx.op.contract(d).adjoint();
}

/// K(z, zeta) = -Phi(z - zeta) sigma(zeta), the integrand of C without the ds weight.
inline MatrixXcd cauchy_kernel(const KernelContext& ctx, const Eigen::Ref<const VectorXcd>& z,
                               const Eigen::Ref<const VectorXcd>& zeta,
                               const Eigen::Ref<const VectorXcd>& nu_c) {
  if (z.size() != ctx.n || zeta.size() != ctx.n)
    throw InvalidArgument("cauchy_kernel: points must lie in C^n");
  const VectorXcd d = z - zeta;
  if (d.squaredNorm() == 0.0) throw SingularityError("cauchy_kernel: coincident points");
  return -phi(ctx, d) * boundary_symbol(ctx.op, nu_c, 1e-10);
}

}  // namespace cliffop
