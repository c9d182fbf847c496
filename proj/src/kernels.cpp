#include "tlscond/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

namespace tlscond::kernels {

namespace {

void check_shapes(const Matrix& A, const Vector& x, const Vector& r, const Matrix& Z1,
                  const Matrix& Z2) {
  if (x.size() != A.cols() || r.size() != A.rows() || Z1.cols() != A.cols() ||
      Z2.cols() != A.rows() || Z1.rows() != Z2.rows()) {
    throw std::invalid_argument("mixed_numerator: inconsistent shapes");
  }
}

// Contribution of column j of A to every row l.
void column_contribution(const Matrix& A, const Vector& x, const Vector& r, const Matrix& Z1,
                         const Matrix& Z2, Index j, double* out) {
  const Index k = Z1.rows();
  const Index m = A.rows();
  const double xj = x(j);
  for (Index i = 0; i < m; ++i) {
    const double a = std::abs(A(i, j));
    if (a == 0.0) continue;
    const double ri = r(i);
    for (Index l = 0; l < k; ++l) {
      out[l] += a * std::abs(Z1(l, j) * ri - xj * Z2(l, i));
    }
  }
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

Vector mixed_numerator_serial(const Matrix& A, const Vector& x, const Vector& r,
                              const Matrix& Z1, const Matrix& Z2) {
  check_shapes(A, x, r, Z1, Z2);
  const Index k = Z1.rows();
  Vector out = Vector::Zero(k);
  for (Index l = 0; l < k; ++l) {
    double acc = 0.0;
    for (Index j = 0; j < A.cols(); ++j) {
      for (Index i = 0; i < A.rows(); ++i) {
        const double a = std::abs(A(i, j));
        if (a == 0.0) continue;
        acc += a * std::abs(Z1(l, j) * r(i) - x(j) * Z2(l, i));
      }
    }
    out(l) = acc;
  }
  return out;
}

Vector mixed_numerator(const Matrix& A, const Vector& x, const Vector& r, const Matrix& Z1,
                       const Matrix& Z2) {
  check_shapes(A, x, r, Z1, Z2);
  const Index k = Z1.rows();
  const Index n = A.cols();
  // One k-vector per column of A, summed afterwards in column order.
  Matrix partial = Matrix::Zero(k, n);
#pragma omp parallel for schedule(dynamic, 1)
  for (Index j = 0; j < n; ++j) {
    column_contribution(A, x, r, Z1, Z2, j, partial.col(j).data());
  }
  Vector out = Vector::Zero(k);
  for (Index j = 0; j < n; ++j) out += partial.col(j);
  return out;
}

BasisActions basis_actions_serial(const std::vector<SparseMatrix>& basis, const Vector& x,
                                  const Vector& r) {
  const Index q = static_cast<Index>(basis.size());
  BasisActions out{Matrix::Zero(r.size(), q), Matrix::Zero(x.size(), q)};
  for (Index t = 0; t < q; ++t) {
    const SparseMatrix& S = basis[static_cast<std::size_t>(t)];
    for (Index col = 0; col < S.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(S, col); it; ++it) {
        out.Sx(it.row(), t) += it.value() * x(it.col());
        out.StR(it.col(), t) += it.value() * r(it.row());
      }
    }
  }
  return out;
}

BasisActions basis_actions(const std::vector<SparseMatrix>& basis, const Vector& x,
                           const Vector& r) {
  const Index q = static_cast<Index>(basis.size());
  BasisActions out{Matrix::Zero(r.size(), q), Matrix::Zero(x.size(), q)};
  // Each basis element writes only its own column.
#pragma omp parallel for schedule(dynamic, 4)
  for (Index t = 0; t < q; ++t) {
    const SparseMatrix& S = basis[static_cast<std::size_t>(t)];
    for (Index col = 0; col < S.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(S, col); it; ++it) {
        out.Sx(it.row(), t) += it.value() * x(it.col());
        out.StR(it.col(), t) += it.value() * r(it.row());
      }
    }
  }
  return out;
}

}  // namespace tlscond::kernels
