#pragma once

/**
 * @file symbols.hpp
 * @brief Order-zero principal symbols of C, Pi and E_Psi on the cosphere bundle of a
 *        sphere, the calibration scalar kappa, ellipticity scans and an oscillatory
 *        probe that reads the symbol off the discretized operator.
 */

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "boundary_ops.hpp"

namespace cliffop {

/// Boundary point z with a covector xi tangent to S at z.
struct CosphereSample {
  VectorXd z;
  VectorXd xi;
};

/// Unit outward normal of the sphere at z.
inline VectorXd sphere_normal(const Domain& dom, const VectorXd& z) {
  return (z - dom.center).normalized();
}

inline void validate_sample(const Domain& dom, const CosphereSample& s, double tol = 1e-12) {
  if (s.z.size() != 2 * dom.n || s.xi.size() != 2 * dom.n)
    throw InvalidArgument("cosphere sample must lie in R^{2n} x R^{2n}");
  if (std::abs(dom.rho(s.z)) > tol * std::max(1.0, dom.radius * dom.radius))
    throw PreconditionError("cosphere sample: z is not on S");
  const double nx = s.xi.norm();
  if (nx == 0.0) throw PreconditionError("cosphere sample: xi = 0");
  if (std::abs(sphere_normal(dom, s.z).dot(s.xi)) > tol * nx)
    throw PreconditionError("cosphere sample: xi is not tangent to S");
}

/// kappa sigma^1(A^*)(z, xi/|xi|) sigma(z).
inline MatrixXcd cauchy_symbol(const DiracOperator& op, const CosphereSample& s, cd kappa,
                               const Domain* dom = nullptr) {
  const Domain unit(op.n(), 1.0);
  const Domain& d = dom ? *dom : unit;
  validate_sample(d, s);
  const VectorXd nu = sphere_normal(d, s.z);
  return kappa * adjoint_symbol(op, s.xi.normalized()) * boundary_symbol(op, to_complex(nu), 1e-10);
}

/// Oracle datum: the Fourier multiplier of C on a positive mode of the unit circle.
struct CalibrationOracle {
  VectorXd z = (VectorXd(2) << 1.0, 0.0).finished();
  VectorXd xi = (VectorXd(2) << 0.0, 1.0).finished();  // direction of increasing angle
  cd value;

  /// Reads the multiplier of C = Pi - I/2 on e^{i theta} from the Fourier-truncation oracle.
  static CalibrationOracle from_fourier(int N = 16, int mode = 1) {
    const MatrixXcd P = exact_szego_circle(N, N / 2 - 1).matrix;
    VectorXcd e(N);
    for (int j = 0; j < N; ++j) e(j) = std::polar(1.0, 2.0 * kPi * mode * j / N);
    CalibrationOracle o;
    o.value = e.dot(P * e) / double(N) - 0.5;
    return o;
  }
};

/**
 * kappa with (kappa s)^2 = 1/4 for s = sigma^1(A^*)(xi) sigma(z) at the oracle sample, and
 * kappa s equal to the oracle's multiplier. convention_sign = -1 evaluates the
 * calibration under the opposite symbol sign convention sigma(d/dx_m) = +xi_m.
 */
inline cd calibrate_kappa(const DiracOperator& op1, const CalibrationOracle& oracle = CalibrationOracle::from_fourier(),
                          double convention_sign = 1.0) {
  if (op1.n() != 1) throw InvalidArgument("calibrate_kappa: oracle data is for n = 1");
  const MatrixXcd s = convention_sign * cauchy_symbol(op1, {oracle.z, oracle.xi}, 1.0);
  const cd sv = s(0, 0);
  if (std::abs(sv) < 1e-14) throw CalibrationError("calibrate_kappa: symbol vanishes at the oracle sample");
  const cd kappa = oracle.value / sv;
  if (std::abs(kappa * kappa * sv * sv - 0.25) > 1e-12)
    throw CalibrationError("calibrate_kappa: oracle multiplier is incompatible with idempotency");
  return kappa;
}

/// sigma^0(Pi) = E/2 + sigma^0(C).
inline MatrixXcd projection_symbol(const DiracOperator& op, const CosphereSample& s, cd kappa,
                                   const Domain* dom = nullptr) {
  MatrixXcd P = cauchy_symbol(op, s, kappa, dom);
  P.diagonal().array() += 0.5;
  return P;
}

/// |(1/4 pi) int dt / (t^2 + a^2) - 1/(4a)| by composite Gauss-Legendre on [-L, L] plus tail series.
inline double pv_integral_check(double a) {
  if (!(a > 0.0)) throw InvalidArgument("pv_integral_check: |xi| must be positive");
  const double L = 50.0 * a;
  const int panels = 200, m = 20;
  auto [x, w] = gauss_legendre(m);
  double acc = 0.0;
  const double hp = 2.0 * L / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = -L + p * hp;
    for (int i = 0; i < m; ++i) {
      const double t = lo + 0.5 * hp * (x(i) + 1.0);
      acc += 0.5 * hp * w(i) / (t * t + a * a);
    }
  }
  // int_L^inf dt / (t^2 + a^2) = sum_m (-1)^m a^{2m} / ((2m+1) L^{2m+1})
  double tail = 0.0, term = 1.0 / L;
  for (int k = 0; k < 30; ++k) {
    tail += (k % 2 ? -1.0 : 1.0) * term / (2 * k + 1);
    term *= (a * a) / (L * L);
  }
  acc += 2.0 * tail;
  return std::abs(acc / (4.0 * kPi) - 1.0 / (4.0 * a));
}

/// (z, xi) -> k x k matrix; multiplier symbols ignore xi.
using SymbolField = std::function<MatrixXcd(const VectorXd& z, const VectorXd& xi)>;

/// sigma^0(E_Psi) = P M P + (E - P) with P = sigma^0(Pi).
inline MatrixXcd toeplitz_ext_symbol(const DiracOperator& op, const SymbolField& M, const CosphereSample& s,
                                     cd kappa, const Domain* dom = nullptr) {
  const MatrixXcd P = projection_symbol(op, s, kappa, dom);
  const MatrixXcd E = MatrixXcd::Identity(op.k(), op.k());
  return P * M(s.z, s.xi) * P + (E - P);
}

struct EllipticityReport {
  double min_sv = std::numeric_limits<double>::infinity();
  CosphereSample witness;
  bool elliptic = false;
};

inline double min_singular_value(const MatrixXcd& m) {
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

inline EllipticityReport ellipticity_scan(const DiracOperator& op, const SymbolField& M,
                                          const std::vector<CosphereSample>& samples, cd kappa,
                                          double tol = 1e-8, const Domain* dom = nullptr) {
  if (samples.empty()) throw InvalidArgument("ellipticity_scan: no samples");
  EllipticityReport rep;
  for (const auto& s : samples) {
    const double v = min_singular_value(toeplitz_ext_symbol(op, M, s, kappa, dom));
    if (v < rep.min_sv) {
      rep.min_sv = v;
      rep.witness = s;
    }
  }
  rep.elliptic = rep.min_sv > tol;
  return rep;
}

/// Both unit tangent directions at every node of a circle grid.
inline std::vector<CosphereSample> circle_cosphere(const BoundaryGrid& g) {
  std::vector<CosphereSample> out;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const VectorXd t = g.tangents[0].col(i).normalized();
    out.push_back({g.nodes.col(i), t});
    out.push_back({g.nodes.col(i), -t});
  }
  return out;
}

/// Random unit tangent covectors, `per_node` at every `stride`-th node, seeded.
inline std::vector<CosphereSample> random_cosphere(const BoundaryGrid& g, int per_node, std::uint64_t seed,
                                                   Eigen::Index stride = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<CosphereSample> out;
  const int d = 2 * g.n();
  for (Eigen::Index i = 0; i < g.size(); i += std::max<Eigen::Index>(stride, 1)) {
    const VectorXd nu = g.normals.col(i);
    for (int r = 0; r < per_node; ++r) {
      VectorXd x(d);
      for (int m = 0; m < d; ++m) x(m) = nd(rng);
      x -= x.dot(nu) * nu;
      out.push_back({g.nodes.col(i), x.normalized()});
    }
  }
  return out;
}

/**
 * Applies C_h to u(zeta) = w(zeta) e^{i omega <zeta - z, xi/|xi|>} v at node i, where
 * w = ((1 + <nu(zeta), nu(z)>)/2)^window_power localizes the probe near z, and returns
 * the result (the phase and window equal 1 at z).
 */
inline VectorXcd numeric_symbol_extraction(const CauchyData& data, Eigen::Index i, const VectorXd& xi,
                                           double omega, const VectorXcd& v, int window_power = 16) {
  const BoundaryGrid& g = *data.grid;
  const int k = data.k();
  if (v.size() != k) throw InvalidArgument("numeric_symbol_extraction: v must lie in C^k");
  if (xi.size() != 2 * g.n() || xi.norm() == 0.0) throw InvalidArgument("numeric_symbol_extraction: bad covector");
  const VectorXd nz = g.normals.col(i);
  if (std::abs(nz.dot(xi)) > 1e-12 * xi.norm())
    throw PreconditionError("numeric_symbol_extraction: xi is not tangent at z");
  if (omega * g.spacing() > 0.25)
    throw PreconditionError("numeric_symbol_extraction: omega * h exceeds 1/4");
  const VectorXd xh = xi.normalized();
  const VectorXd z = g.nodes.col(i);
  VectorXcd u(g.size() * k);
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    const double w = std::pow(0.5 * (1.0 + g.normals.col(j).dot(nz)), window_power);
    u.segment(j * k, k) = (w * std::polar(1.0, omega * (g.nodes.col(j) - z).dot(xh))) * v;
  }
  return apply_cauchy_at(data, i, u);
}

}  // namespace cliffop
