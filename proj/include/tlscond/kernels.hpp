#pragma once

// Data-parallel inner loops. Every kernel has a plain serial version kept as
// the reference for tests and a parallel version used by the library. The
// parallel versions reduce partial results in a fixed index order, so their
// output does not depend on the thread count.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <vector>

namespace tlscond::kernels {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

// |L N| vec(|A|) without forming the k x mn matrix L N. Entry l is
//
//   sum_{i,j} |a_ij| * |Z1(l, j) * r_i - x_j * Z2(l, i)|
//
// with Z1 = L P^{-1} (k x n) and Z2 = L P^{-1} W (k x m). Zero entries of A
// are skipped. O(k * nnz(A)) time, O(k * n) scratch.
Vector mixed_numerator_serial(const Matrix& A, const Vector& x, const Vector& r,
                              const Matrix& Z1, const Matrix& Z2);
Vector mixed_numerator(const Matrix& A, const Vector& x, const Vector& r, const Matrix& Z1,
                       const Matrix& Z2);

// Per-basis products for a linear structure: column i of Sx is S_i x and
// column i of StR is S_i^T r.
struct BasisActions {
  Matrix Sx;   // m x q
  Matrix StR;  // n x q
};

BasisActions basis_actions_serial(const std::vector<SparseMatrix>& basis, const Vector& x,
                                  const Vector& r);
BasisActions basis_actions(const std::vector<SparseMatrix>& basis, const Vector& x,
                           const Vector& r);

// Number of OpenMP threads the parallel kernels will use.
int max_threads();

}  // namespace tlscond::kernels
