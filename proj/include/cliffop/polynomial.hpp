#pragma once

/**
 * @file polynomial.hpp
 * @brief C^k-valued polynomial solutions of Au = 0 in z, zbar.
 *
 * A monomial is z^a zbar^b with exponent vector (a_1..a_n, b_1..b_n). The nullspace
 * is computed over Q(i) when every coefficient matrix has Gaussian-integer entries,
 * otherwise by SVD with a relative threshold of 1e-10.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "clifford.hpp"

namespace cliffop {

using Rational = boost::multiprecision::cpp_rational;

/// Gaussian rational re + i im.
struct QI {
  Rational re{0}, im{0};
  QI() = default;
  QI(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  bool is_zero() const { return re == 0 && im == 0; }
  friend QI operator+(const QI& a, const QI& b) { return {a.re + b.re, a.im + b.im}; }
  friend QI operator-(const QI& a, const QI& b) { return {a.re - b.re, a.im - b.im}; }
  friend QI operator*(const QI& a, const QI& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend QI operator/(const QI& a, const QI& b) {
    const Rational d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  cd to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

using Exponent = std::vector<int>;

/// All exponent vectors of length 2n with total degree <= d, graded then lexicographic.
inline std::vector<Exponent> monomials_upto(int n, int d) {
  std::vector<Exponent> out;
  Exponent e(2 * n, 0);
  for (int deg = 0; deg <= d; ++deg) {
    std::vector<Exponent> level;
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == 2 * n - 1) {
        e[pos] = left;
        level.push_back(e);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, deg);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

class PolySolutionBasis {
 public:
  PolySolutionBasis(DiracOperator op, int degree, std::vector<Exponent> monomials,
                    std::vector<MatrixXcd> basis, bool exact)
      : op_(std::move(op)), degree_(degree), monomials_(std::move(monomials)),
        basis_(std::move(basis)), exact_(exact) {}

  const DiracOperator& op() const { return op_; }
  int degree() const { return degree_; }
  bool exact() const { return exact_; }
  const std::vector<Exponent>& monomials() const { return monomials_; }
  /// Each element is a k x (#monomials) coefficient table.
  const std::vector<MatrixXcd>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }

  Eigen::Index index_of(const Exponent& e) const {
    auto it = std::find(monomials_.begin(), monomials_.end(), e);
    return it == monomials_.end() ? -1 : Eigen::Index(it - monomials_.begin());
  }

  /// Values of every monomial at z (complex coordinates).
  VectorXcd monomial_values(const Eigen::Ref<const VectorXcd>& z) const {
    const int n = op_.n();
    VectorXcd out(monomials_.size());
    for (std::size_t m = 0; m < monomials_.size(); ++m) {
      cd v = 1.0;
      for (int j = 0; j < n; ++j) {
        for (int p = 0; p < monomials_[m][j]; ++p) v *= z(j);
        for (int p = 0; p < monomials_[m][n + j]; ++p) v *= std::conj(z(j));
      }
      out(m) = v;
    }
    return out;
  }

  /// Evaluate a coefficient table at a real point x in R^{2n}.
  VectorXcd evaluate(const MatrixXcd& coeffs, const Eigen::Ref<const VectorXd>& x) const {
    return coeffs * monomial_values(to_complex(x));
  }
  VectorXcd evaluate(std::size_t i, const Eigen::Ref<const VectorXd>& x) const {
    return evaluate(basis_.at(i), x);
  }

  /// Coefficient table of A u (degree drops by one; stored on the same monomial list).
  MatrixXcd apply_operator(const MatrixXcd& coeffs) const {
    const int n = op_.n();
    MatrixXcd out = MatrixXcd::Zero(op_.k(), monomials_.size());
    for (std::size_t m = 0; m < monomials_.size(); ++m) {
      const Exponent& e = monomials_[m];
      for (int j = 0; j < n; ++j) {
        if (e[j] > 0) {
          Exponent f = e;
          --f[j];
          out.col(index_of(f)) += double(e[j]) * op_.alpha(j) * coeffs.col(m);
        }
        if (e[n + j] > 0) {
          Exponent f = e;
          --f[n + j];
          out.col(index_of(f)) += double(e[n + j]) * op_.beta(j) * coeffs.col(m);
        }
      }
    }
    return out;
  }

  /// Largest relative coefficient norm of A u over the basis.
  double max_residual() const {
    double r = 0.0;
    for (const auto& c : basis_) r = std::max(r, apply_operator(c).norm() / std::max(c.norm(), 1e-300));
    return r;
  }

  /// Least-squares distance of a coefficient table from the span of the basis, relative.
  double distance_to_span(const MatrixXcd& coeffs) const {
    const Eigen::Index rows = coeffs.size();
    MatrixXcd B(rows, basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
      B.col(i) = Eigen::Map<const VectorXcd>(basis_[i].data(), rows);
    const VectorXcd v = Eigen::Map<const VectorXcd>(coeffs.data(), rows);
    if (basis_.empty()) return 1.0;
    const VectorXcd c = B.completeOrthogonalDecomposition().solve(v);
    return (B * c - v).norm() / std::max(v.norm(), 1e-300);
  }

 private:
  DiracOperator op_;
  int degree_;
  std::vector<Exponent> monomials_;
  std::vector<MatrixXcd> basis_;
  bool exact_;
};

namespace detail {

inline bool gaussian_integer(const MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cd v = m.data()[i];
    if (v.real() != std::round(v.real()) || v.imag() != std::round(v.imag())) return false;
    if (std::abs(v.real()) > 1e15 || std::abs(v.imag()) > 1e15) return false;
  }
  return true;
}

/// Row-reduce in place; returns a nullspace basis (one vector per free column).
inline std::vector<std::vector<QI>> exact_nullspace(std::vector<std::vector<QI>> M, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
    std::size_t p = r;
    while (p < M.size() && M[p][c].is_zero()) ++p;
    if (p == M.size()) continue;
    std::swap(M[p], M[r]);
    const QI inv = QI(1) / M[r][c];
    for (std::size_t k = c; k < cols; ++k) M[r][k] = M[r][k] * inv;
    for (std::size_t q = 0; q < M.size(); ++q) {
      if (q == r || M[q][c].is_zero()) continue;
      const QI f = M[q][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!M[r][k].is_zero()) M[q][k] = M[q][k] - f * M[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<QI>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<QI> v(cols);
    v[f] = QI(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = QI(0) - M[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/**
 * Basis of {u : Au = 0} among C^k-valued polynomials of total degree <= degree.
 * Unknowns are the coefficients c_{m,a} (monomial m, component a); equations are the
 * coefficients of A u on monomials of degree <= degree - 1.
 */
inline PolySolutionBasis polynomial_solutions(const DiracOperator& op, int degree) {
  if (degree < 0) throw InvalidArgument("polynomial_solutions: degree must be >= 0");
  const int n = op.n(), k = op.k();
  const auto monos = monomials_upto(n, degree);
  const auto lower = monomials_upto(n, std::max(degree - 1, 0));
  const std::size_t nl = degree == 0 ? 0 : lower.size();
  std::map<Exponent, std::size_t> lower_index;
  for (std::size_t i = 0; i < nl; ++i) lower_index[lower[i]] = i;
  const std::size_t cols = monos.size() * k, rows = nl * k;

  bool exact = true;
  for (int j = 0; j < n; ++j)
    exact = exact && detail::gaussian_integer(op.alpha(j)) && detail::gaussian_integer(op.beta(j));

  // Equation row (lower monomial l, component a); unknown column (monomial m, component b).
  MatrixXcd Md = MatrixXcd::Zero(rows, cols);
  for (std::size_t m = 0; m < monos.size(); ++m) {
    for (int j = 0; j < n; ++j) {
      for (int which = 0; which < 2; ++which) {
        const int slot = which == 0 ? j : n + j;
        const int p = monos[m][slot];
        if (p == 0) continue;
        Exponent f = monos[m];
        --f[slot];
        const std::size_t l = lower_index.at(f);
        const MatrixXcd& coef = which == 0 ? op.alpha(j) : op.beta(j);
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) Md(l * k + a, m * k + b) += double(p) * coef(a, b);
      }
    }
  }

  std::vector<MatrixXcd> basis;
  auto to_table = [&](const VectorXcd& v) {
    MatrixXcd t(k, monos.size());
    for (std::size_t m = 0; m < monos.size(); ++m)
      for (int b = 0; b < k; ++b) t(b, m) = v(m * k + b);
    return t;
  };

  if (exact) {
    std::vector<std::vector<QI>> M(rows, std::vector<QI>(cols));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const cd v = Md(r, c);
        if (v != cd(0.0))
          M[r][c] = QI(Rational(static_cast<long long>(v.real())), Rational(static_cast<long long>(v.imag())));
      }
    for (const auto& v : detail::exact_nullspace(std::move(M), cols)) {
      VectorXcd vd(cols);
      for (std::size_t c = 0; c < cols; ++c) vd(c) = v[c].to_complex();
      basis.push_back(to_table(vd));
    }
  } else if (rows == 0) {
    for (std::size_t c = 0; c < cols; ++c) basis.push_back(to_table(VectorXcd::Unit(cols, c)));
  } else {
    Eigen::JacobiSVD<MatrixXcd> svd(Md, Eigen::ComputeFullV);
    const VectorXd s = svd.singularValues();
    const double thresh = 1e-10 * std::max(s.size() ? s(0) : 0.0, 1.0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > thresh) ++rank;
    for (Eigen::Index c = rank; c < Eigen::Index(cols); ++c) basis.push_back(to_table(svd.matrixV().col(c)));
  }
  return PolySolutionBasis(op, degree, monos, std::move(basis), exact);
}

}  // namespace cliffop
