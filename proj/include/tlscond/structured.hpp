#pragma once

#include <Eigen/SparseCore>

#include <vector>

#include "tlscond/conditioning.hpp"

namespace tlscond {

using SparseMatrix = Eigen::SparseMatrix<double>;

// A linear subspace of m x n matrices spanned by S_1, ..., S_q, so that
// every member is A = sum_i a_i S_i.
//
// Construction checks that the basis is linearly independent. abs_additive()
// reports whether |A| = sum_i |a_i| |S_i| holds for every member; it is
// derived from pairwise disjoint supports, which is sufficient.
class LinearStructure {
 public:
  LinearStructure(Index m, Index n, std::vector<SparseMatrix> basis);

  // Toeplitz structure with q = m + n - 1. Coordinate t (zero-based) owns the
  // diagonal with offset col - row = n - 1 - t: the first coordinate is the
  // top-right corner, coordinate n - 1 the main diagonal, the last the
  // bottom-left corner.
  static LinearStructure toeplitz(Index m, Index n);

  Index m() const noexcept { return m_; }
  Index n() const noexcept { return n_; }
  Index q() const noexcept { return static_cast<Index>(basis_.size()); }
  bool abs_additive() const noexcept { return abs_additive_; }
  const std::vector<SparseMatrix>& basis() const noexcept { return basis_; }

  // sum_i a_i S_i.
  Matrix assemble(const Vector& a) const;
  // [vec(S_1) ... vec(S_q)], mn x q, column-major vec.
  SparseMatrix vectorized() const;

 private:
  Index m_;
  Index n_;
  std::vector<SparseMatrix> basis_;
  bool abs_additive_ = false;
};

struct StructuredCoordinates {
  Vector a;
};

// Least-squares coordinates of A in the structure. Throws NotInSubspace when
// ||A - sum a_i S_i||_F > tol * ||A||_F.
StructuredCoordinates decompose(const LinearStructure& structure, const Matrix& A,
                                double tol = 1e-12);

struct StructuredSensitivity {
  Matrix V;   // n x q, v_i = S_i^T r - W S_i x
  Matrix Ns;  // k x q, L P^{-1} V
};

StructuredSensitivity structured_sensitivity(const TlsSolution& sol, const Selection& L,
                                             const LinearStructure& structure);

Vector structured_frechet(const TlsSolution& sol, const Selection& L,
                          const LinearStructure& structure, const Vector& da, const Vector& db);

struct StructuredDirection {
  Vector da;
  Vector db;
};

StructuredDirection structured_adjoint(const TlsSolution& sol, const Selection& L,
                                       const LinearStructure& structure, const Vector& u);

struct StructuredMixedCondition {
  double kappa_s_inf = 0.0;
  double kappa_s_inf_rel = 0.0;
};

// |L N_s| |a| + |L H| |b|.
Vector structured_terms(const TlsSolution& sol, const Selection& L,
                        const LinearStructure& structure, const StructuredCoordinates& a);

StructuredMixedCondition structured_mixed_cond(const TlsSolution& sol, const Selection& L,
                                               const LinearStructure& structure,
                                               const StructuredCoordinates& a);

double structured_comp_cond(const TlsSolution& sol, const Selection& L,
                            const LinearStructure& structure, const StructuredCoordinates& a);

struct StructuredConditionReport {
  double kappa_s_inf = 0.0;
  double kappa_s_inf_rel = 0.0;
  double kappa_s_c = 0.0;
  double kappa_s2_bound = 0.0;
};

StructuredConditionReport structured_report(const TlsSolution& sol, const Selection& L,
                                            const LinearStructure& structure,
                                            const StructuredCoordinates& a);

}  // namespace tlscond
