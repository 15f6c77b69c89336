#pragma once

/**
 * @file geometry.hpp
 * @brief Balls in C^n, boundary quadrature on the circle and on S^3 (Hopf coordinates),
 *        a polar volume rule for the disc, and the divergence-theorem check of the
 *        boundary form dzeta ^ dzetabar[j].
 */

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace cliffop {

/// Ball of given radius and center in R^{2n}; rho(x) = |x - center|^2 - radius^2.
struct Domain {
  int n = 1;
  double radius = 1.0;
  VectorXd center;

  Domain() : center(VectorXd::Zero(2)) {}
  Domain(int n_, double radius_, VectorXd center_ = VectorXd())
      : n(n_), radius(radius_), center(center_.size() ? std::move(center_) : VectorXd::Zero(2 * n_)) {
    if (n < 1) throw InvalidArgument("Domain: n must be >= 1");
    if (!(radius > 0.0)) throw InvalidArgument("Domain: radius must be positive");
    if (center.size() != 2 * n) throw InvalidArgument("Domain: center must lie in R^{2n}");
  }

  double rho(const Eigen::Ref<const VectorXd>& x) const {
    return (x - center).squaredNorm() - radius * radius;
  }
  /// Euclidean distance to S, positive inside.
  double depth(const Eigen::Ref<const VectorXd>& x) const { return radius - (x - center).norm(); }
  double area() const;
  double volume() const;
};

inline double Domain::area() const {
  const int d = 2 * n;
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d) * std::pow(radius, d - 1);
}

inline double Domain::volume() const {
  const int d = 2 * n;
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0) * std::pow(radius, d);
}

namespace detail {
/// (P_m(t), P_m'(t)) by the three-term recurrence.
inline std::pair<double, double> legendre(int m, double t) {
  double p0 = 1.0, p1 = t;
  if (m == 0) return {1.0, 0.0};
  for (int l = 2; l <= m; ++l) {
    const double p2 = ((2.0 * l - 1.0) * t * p1 - (l - 1.0) * p0) / l;
    p0 = p1;
    p1 = p2;
  }
  return {p1, m * (t * p1 - p0) / (t * t - 1.0)};
}
}  // namespace detail

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
inline std::pair<VectorXd, VectorXd> gauss_legendre(int m) {
  if (m < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  VectorXd x(m), w(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = detail::legendre(m, t);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    const double dp = detail::legendre(m, t).second;
    x(i) = -t;
    x(m - 1 - i) = t;
    w(i) = w(m - 1 - i) = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  if (m % 2 == 1) x((m - 1) / 2) = 0.0;
  return {x, w};
}

/// Spectral differentiation on N equispaced periodic samples (unit period 2 pi).
/// For even N the Nyquist mode is treated as the positive frequency +N/2.
inline MatrixXcd fourier_diff_matrix(int N) {
  VectorXcd d = VectorXcd::Zero(N);
  for (int s = 0; s < N; ++s) {
    cd acc = 0.0;
    for (int k = 0; k < N; ++k) {
      int kk = k;
      if (2 * k > N) kk = k - N;
      acc += kI * double(kk) * std::polar(1.0, 2.0 * kPi * double(k) * s / N);
    }
    d(s) = acc / double(N);
  }
  MatrixXcd D(N, N);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) D(j, l) = d(((j - l) % N + N) % N);
  return D;
}

/// Polynomial-interpolation differentiation on arbitrary distinct nodes (barycentric form).
inline MatrixXd interp_diff_matrix(const VectorXd& x) {
  const Eigen::Index m = x.size();
  VectorXd bw(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double p = 1.0;
    for (Eigen::Index j = 0; j < m; ++j)
      if (j != i) p *= x(i) - x(j);
    bw(i) = 1.0 / p;
  }
  MatrixXd D = MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double diag = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == i) continue;
      D(i, j) = bw(j) / bw(i) / (x(i) - x(j));
      diag -= D(i, j);
    }
    D(i, i) = diag;
  }
  return D;
}

/**
 * Differentiation along one grid coordinate. Node index i is split as
 * (outer, idx, inner) with idx = (i / stride) % extent; the row of node i couples
 * to nodes i + (l - idx) * stride with weights factor(idx, l).
 */
struct CoordinateDiff {
  MatrixXcd factor;
  Eigen::Index stride = 1;
  Eigen::Index extent = 0;

  template <class F>
  void for_row(Eigen::Index i, F&& f) const {
    const Eigen::Index idx = (i / stride) % extent;
    const Eigen::Index base = i - idx * stride;
    for (Eigen::Index l = 0; l < extent; ++l) {
      const cd c = factor(idx, l);
      if (c != cd(0.0)) f(base + l * stride, c);
    }
  }
};

enum class GridKind { Circle, Hopf };

struct BoundaryGrid {
  Domain domain;
  GridKind kind = GridKind::Circle;
  std::vector<int> params;        // {N} or {N_eta, N_t1, N_t2}
  MatrixXd nodes;                 // 2n x N
  VectorXd weights;               // N
  MatrixXd normals;               // 2n x N
  MatrixXcd complex_normals;      // n x N
  std::vector<MatrixXd> tangents; // per grid coordinate, d x / d coordinate, 2n x N
  std::vector<CoordinateDiff> diffs;
  VectorXd local_spacing;         // N

  int n() const { return domain.n; }
  Eigen::Index size() const { return nodes.cols(); }
  double spacing() const { return local_spacing.maxCoeff(); }
  VectorXd node(Eigen::Index i) const { return nodes.col(i); }
};

namespace detail {
inline void fill_complex_normals(BoundaryGrid& g) {
  const int n = g.n();
  g.complex_normals.resize(n, g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i)
    for (int j = 0; j < n; ++j) g.complex_normals(j, i) = cd(g.normals(j, i), g.normals(n + j, i));
}
}  // namespace detail

/// Equispaced nodes center + R e^{2 pi i m / N} with trapezoid weights 2 pi R / N.
inline BoundaryGrid make_circle_grid(int N, double R = 1.0, VectorXd center = VectorXd()) {
  if (N < 4 || N % 2 != 0) throw InvalidArgument("make_circle_grid: N must be even and >= 4");
  BoundaryGrid g;
  g.domain = Domain(1, R, std::move(center));
  g.kind = GridKind::Circle;
  g.params = {N};
  g.nodes.resize(2, N);
  g.normals.resize(2, N);
  MatrixXd tan(2, N);
  for (int m = 0; m < N; ++m) {
    const double th = 2.0 * kPi * m / N;
    g.normals(0, m) = std::cos(th);
    g.normals(1, m) = std::sin(th);
    g.nodes.col(m) = g.domain.center + R * g.normals.col(m);
    tan(0, m) = -R * std::sin(th);
    tan(1, m) = R * std::cos(th);
  }
  g.weights = VectorXd::Constant(N, 2.0 * kPi * R / N);
  g.tangents = {tan};
  g.diffs = {CoordinateDiff{fourier_diff_matrix(N), 1, N}};
  g.local_spacing = VectorXd::Constant(N, 2.0 * kPi * R / N);
  detail::fill_complex_normals(g);
  return g;
}

/**
 * S^3 of radius R in Hopf coordinates z1 = R cos(eta) e^{i t1}, z2 = R sin(eta) e^{i t2};
 * Gauss-Legendre in eta on [0, pi/2], trapezoid in t1 and t2.
 * Node (a, p, q) has index (a * N_t1 + p) * N_t2 + q.
 */
inline BoundaryGrid make_s3_grid(int n_eta, int n_t1, int n_t2, double R = 1.0,
                                 VectorXd center = VectorXd()) {
  if (n_eta < 4 || n_t1 < 4 || n_t2 < 4)
    throw InvalidArgument("make_s3_grid: all node counts must be >= 4");
  BoundaryGrid g;
  g.domain = Domain(2, R, std::move(center));
  g.kind = GridKind::Hopf;
  g.params = {n_eta, n_t1, n_t2};
  const Eigen::Index N = Eigen::Index(n_eta) * n_t1 * n_t2;
  auto [xg, wg] = gauss_legendre(n_eta);
  const VectorXd eta = (xg.array() + 1.0) * (kPi / 4.0);
  const VectorXd weta = wg * (kPi / 4.0);

  VectorXd gap(n_eta);
  for (int a = 0; a < n_eta; ++a) {
    const double lo = a == 0 ? 0.0 : eta(a - 1);
    const double hi = a == n_eta - 1 ? kPi / 2 : eta(a + 1);
    gap(a) = std::max(eta(a) - lo, hi - eta(a));
  }

  g.nodes.resize(4, N);
  g.normals.resize(4, N);
  g.weights.resize(N);
  g.local_spacing.resize(N);
  MatrixXd te(4, N), t1v(4, N), t2v(4, N);
  const double dt1 = 2.0 * kPi / n_t1, dt2 = 2.0 * kPi / n_t2;
  for (int a = 0; a < n_eta; ++a) {
    const double ce = std::cos(eta(a)), se = std::sin(eta(a));
    for (int p = 0; p < n_t1; ++p) {
      const double c1 = std::cos(dt1 * p), s1 = std::sin(dt1 * p);
      for (int q = 0; q < n_t2; ++q) {
        const double c2 = std::cos(dt2 * q), s2 = std::sin(dt2 * q);
        const Eigen::Index i = (Eigen::Index(a) * n_t1 + p) * n_t2 + q;
        g.normals.col(i) << ce * c1, se * c2, ce * s1, se * s2;
        g.nodes.col(i) = g.domain.center + R * g.normals.col(i);
        g.weights(i) = R * R * R * weta(a) * se * ce * dt1 * dt2;
        te.col(i) << -R * se * c1, R * ce * c2, -R * se * s1, R * ce * s2;
        t1v.col(i) << -R * ce * s1, 0.0, R * ce * c1, 0.0;
        t2v.col(i) << 0.0, -R * se * s2, 0.0, R * se * c2;
        g.local_spacing(i) = R * std::max({gap(a), ce * dt1, se * dt2});
      }
    }
  }
  g.tangents = {te, t1v, t2v};
  g.diffs = {CoordinateDiff{interp_diff_matrix(eta).cast<cd>(), Eigen::Index(n_t1) * n_t2, n_eta},
             CoordinateDiff{fourier_diff_matrix(n_t1), n_t2, n_t1},
             CoordinateDiff{fourier_diff_matrix(n_t2), 1, n_t2}};
  detail::fill_complex_normals(g);
  return g;
}

/// Interior quadrature for a disc (n = 1): polar rule about a pole inside the disc.
struct VolumeGrid {
  Domain domain;
  VectorXd pole;
  MatrixXd nodes;   // 2 x M
  VectorXd weights; // M
  Eigen::Index size() const { return nodes.cols(); }
};

/**
 * Gauss-Legendre in r (Jacobian r) and trapezoid in phi about the pole p; the ray
 * p + r e^{i phi} leaves the disc at r = R(phi). Putting the pole at the evaluation
 * point of a volume potential absorbs its 1/|z - zeta| singularity into the Jacobian.
 */
inline VolumeGrid make_disc_grid(int n_r, int n_t, double R = 1.0, VectorXd pole = VectorXd(),
                                 VectorXd center = VectorXd()) {
  if (n_r < 4 || n_t < 4) throw InvalidArgument("make_disc_grid: node counts must be >= 4");
  VolumeGrid v;
  v.domain = Domain(1, R, std::move(center));
  v.pole = pole.size() ? std::move(pole) : v.domain.center;
  if (v.pole.size() != 2) throw InvalidArgument("make_disc_grid: pole must lie in R^2");
  if (v.domain.rho(v.pole) >= 0.0) throw DomainError("make_disc_grid: pole must lie inside the disc");
  auto [xg, wg] = gauss_legendre(n_r);
  const VectorXd q = v.pole - v.domain.center;
  const double q2 = q.squaredNorm();
  v.nodes.resize(2, Eigen::Index(n_r) * n_t);
  v.weights.resize(Eigen::Index(n_r) * n_t);
  Eigen::Index idx = 0;
  for (int t = 0; t < n_t; ++t) {
    const double phi = 2.0 * kPi * t / n_t;
    const double ex = std::cos(phi), ey = std::sin(phi);
    const double qe = q(0) * ex + q(1) * ey;
    const double rmax = -qe + std::sqrt(qe * qe + R * R - q2);
    for (int r = 0; r < n_r; ++r) {
      const double rr = 0.5 * rmax * (xg(r) + 1.0);
      v.nodes(0, idx) = v.pole(0) + rr * ex;
      v.nodes(1, idx) = v.pole(1) + rr * ey;
      v.weights(idx) = 0.5 * rmax * wg(r) * rr * (2.0 * kPi / n_t);
      ++idx;
    }
  }
  return v;
}

/// Complex polynomial in real coordinates y = x - center: sum_t c_t y^{e_t}.
struct RealPolynomial {
  int dim = 0;
  std::vector<std::pair<std::vector<int>, cd>> terms;

  cd operator()(const Eigen::Ref<const VectorXd>& y) const {
    cd acc = 0.0;
    for (const auto& [e, c] : terms) {
      cd v = c;
      for (int m = 0; m < dim; ++m)
        if (e[m]) v *= std::pow(y(m), e[m]);
      acc += v;
    }
    return acc;
  }

  RealPolynomial partial(int m) const {
    RealPolynomial out{dim, {}};
    for (const auto& [e, c] : terms) {
      if (e[m] == 0) continue;
      auto f = e;
      f[m] -= 1;
      out.terms.emplace_back(f, c * double(e[m]));
    }
    return out;
  }

  /// Exact integral over the ball of radius R centered at the origin of y.
  cd ball_integral(double R) const {
    cd acc = 0.0;
    for (const auto& [e, c] : terms) {
      int deg = 0;
      bool even = true;
      double num = 1.0, bsum = 0.0;
      for (int m = 0; m < dim; ++m) {
        deg += e[m];
        if (e[m] % 2) even = false;
        const double b = 0.5 * (e[m] + 1);
        num *= std::tgamma(b);
        bsum += b;
      }
      if (!even) continue;
      const double sphere = 2.0 * num / std::tgamma(bsum);
      acc += c * sphere * std::pow(R, deg + dim) / double(deg + dim);
    }
    return acc;
  }
};

struct PullbackReport {
  cd surface;       // integral over S of f nu_{c,j} ds
  cd volume;        // integral over D of (d/dx_j + i d/dx_{n+j}) f dv = 2 int dbar_j f dv
  double residual;  // max over m in {j, n+j} of |int_S f nu_m ds - int_D d_m f dv|
};

/**
 * Divergence-theorem form of the pullback identity for dzeta ^ dzetabar[j]:
 * int_S f nu_m ds = int_D d f / d x_m dv for the two real coordinates of z_j.
 * The volume side uses the disc rule when supplied, else the exact ball integral.
 */
inline PullbackReport check_form_pullback(const BoundaryGrid& g, int j, const RealPolynomial& f,
                                          const VolumeGrid* vol = nullptr) {
  const int n = g.n();
  if (j < 0 || j >= n) throw InvalidArgument("check_form_pullback: complex index out of range");
  if (f.dim != 2 * n) throw InvalidArgument("check_form_pullback: polynomial dimension must be 2n");
  if (vol && n != 1) throw InvalidArgument("check_form_pullback: volume grids exist only for n = 1");
  cd surf[2] = {0.0, 0.0}, voln[2] = {0.0, 0.0};
  const int ms[2] = {j, n + j};
  for (int s = 0; s < 2; ++s) {
    for (Eigen::Index i = 0; i < g.size(); ++i)
      surf[s] += g.weights(i) * g.normals(ms[s], i) * f(g.nodes.col(i) - g.domain.center);
    const RealPolynomial df = f.partial(ms[s]);
    if (vol) {
      for (Eigen::Index i = 0; i < vol->size(); ++i)
        voln[s] += vol->weights(i) * df(vol->nodes.col(i) - vol->domain.center);
    } else {
      voln[s] = df.ball_integral(g.domain.radius);
    }
  }
  PullbackReport rep;
  rep.surface = surf[0] + kI * surf[1];
  rep.volume = voln[0] + kI * voln[1];
  rep.residual = std::max(std::abs(surf[0] - voln[0]), std::abs(surf[1] - voln[1]));
  return rep;
}

}  // namespace cliffop
