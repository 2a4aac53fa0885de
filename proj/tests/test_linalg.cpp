#include "ctxbounds/errors.hpp"
#include "ctxbounds/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ctxbounds;

namespace {

RealMatrix random_symmetric(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  RealMatrix a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = r; c < n; ++c) a(r, c) = a(c, r) = g(rng);
  }
  return a;
}

HermitianOperator random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) a(r, c) = {g(rng), g(rng)};
  }
  return HermitianOperator::from_matrix((a + a.adjoint()) / 2.0);
}

ComplexVector unit(double angle) {
  ComplexVector v(2);
  v << std::cos(angle), std::sin(angle);
  return v;
}

}  // namespace

TEST_CASE("Jacobi agrees with Eigen") {
  std::mt19937_64 rng(3);
  for (Eigen::Index n : {1, 2, 3, 5, 8, 13, 30}) {
    const RealMatrix a = random_symmetric(n, rng);
    const SymmetricEigen mine = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<RealMatrix> ref(a);
    CHECK((mine.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    const RealMatrix rebuilt = mine.vectors * mine.values.asDiagonal() * mine.vectors.transpose();
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((mine.vectors.transpose() * mine.vectors - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Hermitian eigenproblem") {
  std::mt19937_64 rng(4);
  for (Eigen::Index n : {1, 2, 4, 7}) {
    const HermitianOperator a = random_hermitian(n, rng);
    const HermitianEigen e = hermitian_eigen(a.matrix());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(a.matrix());
    REQUIRE(e.values.size() == n);
    CHECK((e.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    const ComplexMatrix rebuilt = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK((rebuilt - a.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
  // Degenerate spectrum: the identity plus a rank-one piece.
  ComplexVector v(3);
  v << Complex(1, 1), Complex(0, -1), 2.0;
  const HermitianOperator a = HermitianOperator::identity(3) + HermitianOperator::projector_onto(v);
  const HermitianEigen e = hermitian_eigen(a.matrix());
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  CHECK(e.values(2) == doctest::Approx(2.0));
}

TEST_CASE("operator norm distance") {
  const HermitianOperator a = HermitianOperator::projector_onto(unit(0.3));
  CHECK(operator_norm_distance(a, a) == doctest::Approx(0.0));
  CHECK(operator_norm_distance(HermitianOperator::identity(3), HermitianOperator::zero(3)) == doctest::Approx(1.0));
  const double theta = std::numbers::pi / 6;
  const double d = operator_norm_distance(HermitianOperator::projector_onto(unit(0.0)),
                                          HermitianOperator::projector_onto(unit(theta)));
  CHECK(d == doctest::Approx(0.5).epsilon(1e-10));
  for (double t : {0.1, 0.7, 1.2, 1.5}) {
    CHECK(operator_norm_distance(HermitianOperator::projector_onto(unit(0.4)),
                                 HermitianOperator::projector_onto(unit(0.4 + t))) ==
          doctest::Approx(std::sin(t)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(operator_norm_distance(HermitianOperator::identity(2), HermitianOperator::identity(3)),
                  DimensionMismatch);
}

TEST_CASE("property: norm is a metric") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    const HermitianOperator a = random_hermitian(n, rng);
    const HermitianOperator b = random_hermitian(n, rng);
    const HermitianOperator c = random_hermitian(n, rng);
    const double ab = operator_norm_distance(a, b);
    CHECK(ab == doctest::Approx(operator_norm_distance(b, a)));
    CHECK(ab <= operator_norm_distance(a, c) + operator_norm_distance(c, b) + 1e-12);
    CHECK(ab > 1e-6);
    CHECK(operator_norm_distance(a, a) < 1e-12);
    // max_ρ |tr ρA − tr ρB| is attained at an eigenvector of A − B.
    const RealVector ev = eigenvalues(a - b);
    CHECK(ab == doctest::Approx(std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)))));
  }
}

TEST_CASE("Hermiticity is enforced") {
  ComplexMatrix m(2, 2);
  m << 1.0, Complex(0, 1), Complex(0, 1), 0.0;
  CHECK_THROWS_AS(HermitianOperator::from_matrix(m), std::invalid_argument);
  CHECK_THROWS_AS(HermitianOperator::identity(2) + HermitianOperator::identity(3), DimensionMismatch);
  CHECK(trace_product(HermitianOperator::identity(3), HermitianOperator::identity(3)) == doctest::Approx(3.0));
}
