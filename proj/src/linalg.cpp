#include "ctxbounds/linalg.hpp"

#include "ctxbounds/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ctxbounds {

SymmetricEigen jacobi_eigen(const RealMatrix& input, double tol, int max_sweeps) {
  if (input.rows() != input.cols()) throw std::invalid_argument("jacobi_eigen: matrix is not square");
  const Eigen::Index n = input.rows();
  RealMatrix a = input.triangularView<Eigen::Upper>();
  a.triangularView<Eigen::StrictlyLower>() = a.transpose().triangularView<Eigen::StrictlyLower>();
  RealMatrix v = RealMatrix::Identity(n, n);

  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(2.0 * off) <= tol * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p,q); t = tan θ chosen with |θ| ≤ π/4.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
  const Eigen::Index d = a.rows();
  RealMatrix embed(2 * d, 2 * d);
  embed.topLeftCorner(d, d) = a.real();
  embed.topRightCorner(d, d) = -a.imag();
  embed.bottomLeftCorner(d, d) = a.imag();
  embed.bottomRightCorner(d, d) = a.real();
  const SymmetricEigen se = jacobi_eigen(embed);

  // Each eigenvalue of A appears twice, with real eigenvectors (u;w) and
  // (-w;u) that map to the same complex ray u + i w. Keep one complex vector
  // per ray by Gram-Schmidt against the ones already accepted.
  HermitianEigen out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  Eigen::Index accepted = 0;
  for (Eigen::Index k = 0; k < 2 * d && accepted < d; ++k) {
    ComplexVector z(d);
    for (Eigen::Index r = 0; r < d; ++r) z(r) = Complex(se.vectors(r, k), se.vectors(r + d, k));
    for (Eigen::Index j = 0; j < accepted; ++j) z -= out.vectors.col(j).dot(z) * out.vectors.col(j);
    const double norm = z.norm();
    if (norm < 0.5) continue;
    out.vectors.col(accepted) = z / norm;
    out.values(accepted) = se.values(k);
    ++accepted;
  }
  if (accepted != d) throw std::runtime_error("hermitian_eigen: eigenvector extraction failed");
  return out;
}

HermitianOperator HermitianOperator::from_matrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator matrix is not square");
  if (!m.allFinite()) throw std::invalid_argument("operator matrix has non-finite entries");
  const double deviation = m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("operator matrix is not Hermitian (deviation " + std::to_string(deviation) + ")");
  }
  return HermitianOperator(ComplexMatrix(0.5 * (m + m.adjoint())));
}

HermitianOperator HermitianOperator::from_real(const RealMatrix& m, double tol) {
  return from_matrix(m.cast<Complex>(), tol);
}

HermitianOperator HermitianOperator::projector_onto(const ComplexVector& v) {
  const double n2 = v.squaredNorm();
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw std::invalid_argument("cannot project onto a zero vector");
  ComplexMatrix p = v * v.adjoint() / n2;
  return HermitianOperator(ComplexMatrix(0.5 * (p + p.adjoint())));
}

HermitianOperator HermitianOperator::identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return HermitianOperator(ComplexMatrix::Identity(n, n));
}

HermitianOperator HermitianOperator::zero(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return HermitianOperator(ComplexMatrix::Zero(n, n));
}

namespace {
void check_same_dimension(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch("operator dimensions differ: " + std::to_string(a.dimension()) + " vs " +
                            std::to_string(b.dimension()));
  }
}
}  // namespace

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  check_same_dimension(*this, o);
  return HermitianOperator(ComplexMatrix(m_ + o.m_));
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  check_same_dimension(*this, o);
  return HermitianOperator(ComplexMatrix(m_ - o.m_));
}

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(ComplexMatrix(m_ * s)); }

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
  check_same_dimension(*this, o);
  m_ += o.m_;
  return *this;
}

RealVector eigenvalues(const HermitianOperator& a) { return hermitian_eigen(a.matrix()).values; }

double max_eigenvalue(const HermitianOperator& a) {
  const RealVector ev = eigenvalues(a);
  return ev.size() == 0 ? 0.0 : ev(ev.size() - 1);
}

double min_eigenvalue(const HermitianOperator& a) {
  const RealVector ev = eigenvalues(a);
  return ev.size() == 0 ? 0.0 : ev(0);
}

double operator_norm(const HermitianOperator& a) {
  const RealVector ev = eigenvalues(a);
  return ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
}

double operator_norm_distance(const HermitianOperator& a, const HermitianOperator& b) {
  return operator_norm(a - b);
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  check_same_dimension(a, b);
  return (a.matrix() * b.matrix()).trace().real();
}

}  // namespace ctxbounds
