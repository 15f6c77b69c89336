#pragma once

/**
 * @file cayley.hpp
 * @brief Quaternions, octonions by Cayley-Dickson doubling, the matrix form of the
 *        doubling product, real-linear maps mixing complex conjugation, and the
 *        octonionic Dirac operator on C^4 with its commuting multipliers.
 *
 * A quaternion w + x i + y j + z k is also written q = u + v j with u = w + x i,
 * v = y + z i. Vectors of C^4 are (u1, u2, u3, u4) <-> (u1 + u3 j, u2 + u4 j).
 */

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "types.hpp"

namespace cliffop {

template <class T>
struct Quaternion {
  T w{0}, x{0}, y{0}, z{0};

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
  Quaternion conj() const { return {w, -x, -y, -z}; }
  T norm2() const { return w * w + x * x + y * y + z * z; }
};

template <class T>
struct Octonion {
  Quaternion<T> a, b;

  friend Octonion operator+(const Octonion& p, const Octonion& q) { return {p.a + q.a, p.b + q.b}; }
  friend Octonion operator-(const Octonion& p, const Octonion& q) { return {p.a - q.a, p.b - q.b}; }
  friend bool operator==(const Octonion& p, const Octonion& q) { return p.a == q.a && p.b == q.b; }
  T norm2() const { return a.norm2() + b.norm2(); }
  std::array<T, 8> components() const { return {a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z}; }
};

/// (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).
template <class T>
Octonion<T> octonion_mult(const Octonion<T>& p, const Octonion<T>& q) {
  return {p.a * q.a - q.b.conj() * p.b, q.b * p.a + p.b * q.a.conj()};
}

/// The 2 x 2 quaternion matrix [[a, -b], [conj b, conj a]] attached to the pair (a, b).
template <class T>
struct DicksonMatrix {
  std::array<std::array<Quaternion<T>, 2>, 2> e;

  static DicksonMatrix from_pair(const Octonion<T>& o) {
    DicksonMatrix m;
    m.e[0][0] = o.a;
    m.e[0][1] = -o.b;
    m.e[1][0] = o.b.conj();
    m.e[1][1] = o.a.conj();
    return m;
  }
  Octonion<T> pair() const { return {e[0][0], -e[0][1]}; }
  /// Whether the entries have the [[a, -b], [conj b, conj a]] pattern.
  bool well_formed() const { return e[1][0] == (-e[0][1]).conj() && e[1][1] == e[0][0].conj(); }
  friend bool operator==(const DicksonMatrix& p, const DicksonMatrix& q) { return p.e == q.e; }
};

/// Matrix of the Cayley-Dickson product of the underlying pairs.
template <class T>
DicksonMatrix<T> dickson_product(const DicksonMatrix<T>& D, const DicksonMatrix<T>& P) {
  return DicksonMatrix<T>::from_pair(octonion_mult(D.pair(), P.pair()));
}

/// Closed-form entries commonly quoted for the product matrix
/// [[ac - conj(d) b, -da - b conj(c)], [conj(c) b + conj(a) conj(d), -conj(b) d + conj(c) a]].
template <class T>
DicksonMatrix<T> dickson_entrywise(const DicksonMatrix<T>& D, const DicksonMatrix<T>& P) {
  const auto [a, b] = D.pair();
  const auto [c, d] = P.pair();
  DicksonMatrix<T> m;
  m.e[0][0] = a * c - d.conj() * b;
  m.e[0][1] = -(d * a) - b * c.conj();
  m.e[1][0] = c.conj() * b + a.conj() * d.conj();
  m.e[1][1] = -(b.conj() * d) + c.conj() * a;
  return m;
}

template <class T>
struct AlternativityResidual {
  T left;   // squared norm of D(DP) - (DD)P
  T right;  // squared norm of (PD)D - P(DD)
};

template <class T>
AlternativityResidual<T> alternativity_check(const DicksonMatrix<T>& D, const DicksonMatrix<T>& P) {
  const auto dd = dickson_product(D, D);
  const auto l = dickson_product(D, dickson_product(D, P)).pair() - dickson_product(dd, P).pair();
  const auto r = dickson_product(dickson_product(P, D), D).pair() - dickson_product(P, dd).pair();
  return {l.norm2(), r.norm2()};
}

/**
 * Real-linear map u -> A u + B conj(u) on C^m, stored as the real 2m x 2m matrix acting
 * on (Re u, Im u): [[Ar + Br, -Ai + Bi], [Ai + Bi, Ar - Br]].
 */
struct RealLinearMap {
  MatrixXd R;

  static RealLinearMap from_blocks(const MatrixXcd& A, const MatrixXcd& B) {
    if (A.rows() != A.cols() || B.rows() != A.rows() || B.cols() != A.cols())
      throw InvalidArgument("RealLinearMap: blocks must be square and of equal size");
    const Eigen::Index m = A.rows();
    RealLinearMap out{MatrixXd(2 * m, 2 * m)};
    out.R.topLeftCorner(m, m) = A.real() + B.real();
    out.R.topRightCorner(m, m) = -A.imag() + B.imag();
    out.R.bottomLeftCorner(m, m) = A.imag() + B.imag();
    out.R.bottomRightCorner(m, m) = A.real() - B.real();
    return out;
  }
  static RealLinearMap identity(Eigen::Index m) { return {MatrixXd::Identity(2 * m, 2 * m)}; }

  Eigen::Index m() const { return R.rows() / 2; }
  /// Complex-linear part A.
  MatrixXcd linear_part() const {
    const Eigen::Index n = m();
    const MatrixXd P = R.topLeftCorner(n, n), Q = R.topRightCorner(n, n);
    const MatrixXd Rr = R.bottomLeftCorner(n, n), S = R.bottomRightCorner(n, n);
    return MatrixXcd((P + S) / 2) + kI * MatrixXcd((Rr - Q) / 2);
  }
  /// Conjugation part B.
  MatrixXcd conj_part() const {
    const Eigen::Index n = m();
    const MatrixXd P = R.topLeftCorner(n, n), Q = R.topRightCorner(n, n);
    const MatrixXd Rr = R.bottomLeftCorner(n, n), S = R.bottomRightCorner(n, n);
    return MatrixXcd((P - S) / 2) + kI * MatrixXcd((Rr + Q) / 2);
  }
  VectorXcd apply(const VectorXcd& u) const {
    const Eigen::Index n = m();
    VectorXd x(2 * n);
    x << u.real(), u.imag();
    const VectorXd y = R * x;
    return y.head(n).cast<cd>() + kI * y.tail(n).cast<cd>();
  }
  friend RealLinearMap operator*(const RealLinearMap& a, const RealLinearMap& b) { return {a.R * b.R}; }
  friend RealLinearMap operator+(const RealLinearMap& a, const RealLinearMap& b) { return {a.R + b.R}; }
  friend RealLinearMap operator-(const RealLinearMap& a, const RealLinearMap& b) { return {a.R - b.R}; }
};

/// (A + B c)(C + D c) = (AC + B conj(D)) + (AD + B conj(C)) c, in block form.
inline std::pair<MatrixXcd, MatrixXcd> compose_blocks(const MatrixXcd& A, const MatrixXcd& B,
                                                      const MatrixXcd& C, const MatrixXcd& D) {
  return {A * C + B * D.conjugate(), A * D + B * C.conjugate()};
}

/// One entry of the 4 x 4 octonionic operator: sign * (d/dz_j or d/dzbar_j), optionally after conjugation.
struct OctonionEntry {
  int sign = 0;  // 0 marks an empty entry
  int j = 0;     // complex coordinate, 0-based
  bool bar = false;
  bool conj = false;
};

/// Coefficient table of the octonionic operator acting on (u1, u2, u3, u4).
inline std::array<std::array<OctonionEntry, 4>, 4> octonion_dirac() {
  auto db = [](int j, int s, bool c) { return OctonionEntry{s, j - 1, true, c}; };
  auto d = [](int j, int s) { return OctonionEntry{s, j - 1, false, false}; };
  return {{{db(1, 1, false), db(2, -1, false), db(3, -1, true), db(4, 1, true)},
           {d(2, 1), d(1, 1), db(4, 1, true), db(3, 1, true)},
           {db(3, 1, true), db(4, -1, true), db(1, 1, false), db(2, -1, false)},
           {db(4, -1, true), db(3, -1, true), d(2, 1), d(1, 1)}}};
}

/**
 * Principal symbol at a real covector xi in R^8: d/dz_j -> -conj(zeta_j)/2,
 * d/dzbar_j -> -zeta_j/2 with zeta_j = xi_j + i xi_{4+j}. Entries that conjugate first
 * go to the conjugation block; the real representation of the operator has real
 * coefficients, so the covector enters both blocks the same way.
 */
inline RealLinearMap octonion_dirac_symbol(const VectorXd& xi) {
  if (xi.size() != 8) throw InvalidArgument("octonion_dirac_symbol: covector must lie in R^8");
  const VectorXcd zeta = to_complex(xi);
  const auto table = octonion_dirac();
  MatrixXcd A = MatrixXcd::Zero(4, 4), B = MatrixXcd::Zero(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const OctonionEntry& e = table[r][c];
      if (e.sign == 0) continue;
      const cd s = double(e.sign) * -0.5 * (e.bar ? zeta(e.j) : std::conj(zeta(e.j)));
      (e.conj ? B : A)(r, c) += s;
    }
  return RealLinearMap::from_blocks(A, B);
}

/// Quaternion conjugation on a slot (u, v) <-> u + v j: (conj u, -v).
inline RealLinearMap quaternion_conjugation() {
  MatrixXcd A = MatrixXcd::Zero(2, 2), B = MatrixXcd::Zero(2, 2);
  A(1, 1) = -1.0;
  B(0, 0) = 1.0;
  return RealLinearMap::from_blocks(A, B);
}

namespace detail {
/// Embed a real-linear map on one quaternion slot (u_s, u_{s+2}) into C^4 at block (r, c).
inline void place_slot(MatrixXd& R, const RealLinearMap& X, int row_slot, int col_slot) {
  const int rows[2] = {row_slot, row_slot + 2}, cols[2] = {col_slot, col_slot + 2};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int pa = 0; pa < 2; ++pa)
        for (int pb = 0; pb < 2; ++pb) R(rows[a] + 4 * pa, cols[b] + 4 * pb) += X.R(a + 2 * pa, b + 2 * pb);
}
}  // namespace detail

/// M = [[X, -Y C], [Y C, X]] on (q1, q2), with C quaternion conjugation on each slot.
inline RealLinearMap commutant_multiplier(const RealLinearMap& X, const RealLinearMap& Y) {
  if (X.m() != 2 || Y.m() != 2) throw InvalidArgument("commutant_multiplier: X and Y act on C^2");
  const RealLinearMap YC = Y * quaternion_conjugation();
  RealLinearMap M{MatrixXd::Zero(8, 8)};
  detail::place_slot(M.R, X, 0, 0);
  detail::place_slot(M.R, X, 1, 1);
  detail::place_slot(M.R, RealLinearMap{-YC.R}, 0, 1);
  detail::place_slot(M.R, YC, 1, 0);
  return M;
}

/// X = [[w1, -w2 c], [w2 c, w1]] on a quaternion slot: left multiplication by w1 + w2 j.
inline RealLinearMap x_form_left(cd w1, cd w2) {
  MatrixXcd A = w1 * MatrixXcd::Identity(2, 2), B = MatrixXcd::Zero(2, 2);
  B(0, 1) = -w2;
  B(1, 0) = w2;
  return RealLinearMap::from_blocks(A, B);
}

/// Right multiplication by w1 + w2 j: the complex-linear map [[w1, -conj w2], [w2, conj w1]].
inline RealLinearMap x_form_right(cd w1, cd w2) {
  MatrixXcd A(2, 2);
  A << w1, -std::conj(w2), w2, std::conj(w1);
  return RealLinearMap::from_blocks(A, MatrixXcd::Zero(2, 2));
}

/// (w1^1 w1^2 - w2^1 conj(w2^2), w2^1 conj(w1^2) + w1^1 w2^2).
inline std::pair<cd, cd> x_algebra_product(std::pair<cd, cd> x1, std::pair<cd, cd> x2) {
  const auto [a1, b1] = x1;
  const auto [a2, b2] = x2;
  return {a1 * a2 - b1 * std::conj(b2), b1 * std::conj(a2) + a1 * b2};
}

struct XInvertibility {
  bool invertible = false;
  double real_det = 0.0;  // determinant of the real 4 x 4 representation
  cd formula_det;       // w1^2 + |w2|^2
};

inline XInvertibility x_invertibility(cd w1, cd w2, double tol = 1e-12) {
  XInvertibility r;
  r.real_det = x_form_left(w1, w2).R.determinant();
  r.invertible = std::abs(r.real_det) > tol;
  r.formula_det = w1 * w1 + std::norm(w2);
  return r;
}

}  // namespace cliffop
