#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace liebasis {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when an argument lies outside the mathematical domain of an
/// operation (n < 2, Casimir key out of range, dimension mismatch, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a computed object violates one of its structural invariants.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default numerical tolerances.
namespace tol {
inline constexpr double construction = 1e-12;
inline constexpr double homomorphism = 1e-10;
inline constexpr double commute = 1e-9;
inline constexpr double cluster = 1e-6;
inline constexpr double scalar = 1e-8;
inline constexpr double rank = 1e-8;
inline constexpr double fingerprint = 1e-6;
}  // namespace tol

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline double hermitian_defect(const Matrix& a) { return (a - a.adjoint()).norm(); }

/// ||A - (Tr A / d) I||_F, the distance of A from the scalar matrices.
inline double scalar_defect(const Matrix& a) {
  const auto d = a.rows();
  if (d == 0) return 0.0;
  const cplx mean = a.trace() / static_cast<double>(d);
  return (a - mean * Matrix::Identity(d, d)).norm();
}

}  // namespace liebasis
