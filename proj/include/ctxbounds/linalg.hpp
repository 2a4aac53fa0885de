#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace ctxbounds {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct SymmetricEigen {
  RealVector values;   // ascending
  RealMatrix vectors;  // columns, orthonormal
};

/// Cyclic Jacobi rotations on a real symmetric matrix. Only the upper
/// triangle is read. Sweeps stop once the off-diagonal Frobenius norm falls
/// below `tol` times the matrix norm.
SymmetricEigen jacobi_eigen(const RealMatrix& a, double tol = 1e-15, int max_sweeps = 100);

struct HermitianEigen {
  RealVector values;      // ascending, each eigenvalue once per multiplicity
  ComplexMatrix vectors;  // columns, orthonormal
};

/// Hermitian eigenproblem solved through the real symmetric embedding
/// [[Re A, -Im A], [Im A, Re A]] of size 2d, whose spectrum is that of A with
/// every eigenvalue doubled.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

/// Dense Hermitian operator on C^d.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  /// Throws std::invalid_argument if `m` is not square, has non-finite
  /// entries, or deviates from its adjoint by more than `tol` (entrywise).
  /// The stored matrix is the exact Hermitian part of `m`.
  static HermitianOperator from_matrix(const ComplexMatrix& m, double tol = 1e-12);
  static HermitianOperator from_real(const RealMatrix& m, double tol = 1e-12);

  /// |v⟩⟨v| / ⟨v|v⟩. Throws on a zero vector.
  static HermitianOperator projector_onto(const ComplexVector& v);

  static HermitianOperator identity(std::size_t d);
  static HermitianOperator zero(std::size_t d);

  std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;
  HermitianOperator& operator+=(const HermitianOperator& o);

 private:
  explicit HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

RealVector eigenvalues(const HermitianOperator& a);
double max_eigenvalue(const HermitianOperator& a);
double min_eigenvalue(const HermitianOperator& a);

/// Largest absolute eigenvalue.
double operator_norm(const HermitianOperator& a);

/// ‖A − B‖ in operator norm. Throws DimensionMismatch.
double operator_norm_distance(const HermitianOperator& a, const HermitianOperator& b);

/// Re tr(AB).
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace ctxbounds
