#pragma once

/**
 * @file types.hpp
 * @brief Scalar/matrix aliases and the error hierarchy shared by every module.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cliffop {

using cd = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;
using MatrixXd = Eigen::MatrixXd;
using VectorXd = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

/// Base class of all library errors; carries a short machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& w) : Error("invalid-argument", w) {}
};
struct SingularityError : Error {
  explicit SingularityError(const std::string& w) : Error("singularity", w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error("precondition", w) {}
};
struct CalibrationError : Error {
  explicit CalibrationError(const std::string& w) : Error("calibration", w) {}
};
struct NonFredholmError : Error {
  explicit NonFredholmError(const std::string& w) : Error("non-fredholm", w) {}
};
struct ResolutionError : Error {
  explicit ResolutionError(const std::string& w) : Error("resolution", w) {}
};
struct AliasingError : Error {
  explicit AliasingError(const std::string& w) : Error("aliasing", w) {}
};

/// Complex coordinates z_j = x_j + i x_{n+j} of a real point x in R^{2n}.
inline VectorXcd to_complex(const Eigen::Ref<const VectorXd>& x) {
  const Eigen::Index n = x.size() / 2;
  VectorXcd z(n);
  for (Eigen::Index j = 0; j < n; ++j) z(j) = cd(x(j), x(n + j));
  return z;
}

inline VectorXd to_real(const Eigen::Ref<const VectorXcd>& z) {
  const Eigen::Index n = z.size();
  VectorXd x(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    x(j) = z(j).real();
    x(n + j) = z(j).imag();
  }
  return x;
}

/// Largest singular value.
inline double spectral_norm(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  // Largest eigenvalue of the smaller Gram matrix; the top singular value is well conditioned.
  const MatrixXcd g = m.rows() >= m.cols() ? MatrixXcd(m.adjoint() * m) : MatrixXcd(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

}  // namespace cliffop
