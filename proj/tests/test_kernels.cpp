#include <doctest.h>

#include <omp.h>

#include <stdexcept>

#include "support/oracles.hpp"
#include "tlscond/kernels.hpp"
#include "tlscond/structured.hpp"

using namespace tlscond;

TEST_CASE("mixed numerator: parallel matches serial") {
  Rng rng(7);
  for (Index k : {1, 3}) {
    const Index m = 40, n = 17;
    Matrix A = oracle::random_matrix(m, n, rng);
    A(3, 4) = 0.0;
    const Vector x = oracle::random_vector(n, rng);
    const Vector r = oracle::random_vector(m, rng);
    const Matrix Z1 = oracle::random_matrix(k, n, rng);
    const Matrix Z2 = oracle::random_matrix(k, m, rng);
    const Vector s = kernels::mixed_numerator_serial(A, x, r, Z1, Z2);
    const Vector p = kernels::mixed_numerator(A, x, r, Z1, Z2);
    CHECK((s - p).norm() <= 1e-13 * s.norm());
  }
}

TEST_CASE("mixed numerator: independent of thread count") {
  Rng rng(8);
  const Index m = 30, n = 12, k = 2;
  const Matrix A = oracle::random_matrix(m, n, rng);
  const Vector x = oracle::random_vector(n, rng);
  const Vector r = oracle::random_vector(m, rng);
  const Matrix Z1 = oracle::random_matrix(k, n, rng);
  const Matrix Z2 = oracle::random_matrix(k, m, rng);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Vector one = kernels::mixed_numerator(A, x, r, Z1, Z2);
  omp_set_num_threads(4);
  const Vector four = kernels::mixed_numerator(A, x, r, Z1, Z2);
  omp_set_num_threads(saved);
  CHECK(one == four);
}

TEST_CASE("mixed numerator: matches the definition") {
  Matrix A(2, 2);
  A << 1, -2, 0, 3;
  Vector x(2), r(2);
  x << 0.5, -1;
  r << 2, 1;
  Matrix Z1(1, 2), Z2(1, 2);
  Z1 << 1, 2;
  Z2 << -1, 1;
  double ref = 0.0;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) ref += std::abs(A(i, j)) * std::abs(Z1(0, j) * r(i) - x(j) * Z2(0, i));
  CHECK(kernels::mixed_numerator_serial(A, x, r, Z1, Z2)(0) == doctest::Approx(ref));
  CHECK(kernels::mixed_numerator(A, x, r, Z1, Z2)(0) == doctest::Approx(ref));
}

TEST_CASE("mixed numerator: shape checks") {
  const Matrix A = Matrix::Ones(3, 2);
  CHECK_THROWS_AS(kernels::mixed_numerator(A, Vector::Ones(3), Vector::Ones(3), Matrix::Ones(1, 2),
                                           Matrix::Ones(1, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(kernels::mixed_numerator_serial(A, Vector::Ones(2), Vector::Ones(3),
                                                  Matrix::Ones(1, 2), Matrix::Ones(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("basis actions: parallel matches serial and dense products") {
  const LinearStructure S = LinearStructure::toeplitz(15, 9);
  Rng rng(9);
  const Vector x = oracle::random_vector(9, rng);
  const Vector r = oracle::random_vector(15, rng);
  const kernels::BasisActions s = kernels::basis_actions_serial(S.basis(), x, r);
  const kernels::BasisActions p = kernels::basis_actions(S.basis(), x, r);
  CHECK(s.Sx == p.Sx);
  CHECK(s.StR == p.StR);
  for (Index i = 0; i < S.q(); ++i) {
    const Matrix Si(S.basis()[i]);
    CHECK((s.Sx.col(i) - Si * x).norm() < 1e-14);
    CHECK((s.StR.col(i) - Si.transpose() * r).norm() < 1e-14);
  }
}

TEST_CASE("max threads is positive") { CHECK(kernels::max_threads() >= 1); }
