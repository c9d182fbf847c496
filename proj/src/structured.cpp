#include "tlscond/structured.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseQR>

#include <cmath>
#include <string>

#include "tlscond/kernels.hpp"

namespace tlscond {

namespace {

// True when no two basis matrices share a nonzero position.
bool disjoint_supports(Index m, Index n, const std::vector<SparseMatrix>& basis) {
  std::vector<char> used(static_cast<std::size_t>(m * n), 0);
  for (const SparseMatrix& S : basis) {
    for (Index col = 0; col < S.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(S, col); it; ++it) {
        if (it.value() == 0.0) continue;
        char& slot = used[static_cast<std::size_t>(it.col() * m + it.row())];
        if (slot) return false;
        slot = 1;
      }
    }
  }
  return true;
}

}  // namespace

LinearStructure::LinearStructure(Index m, Index n, std::vector<SparseMatrix> basis)
    : m_(m), n_(n), basis_(std::move(basis)) {
  if (m_ < 1 || n_ < 1) throw InvalidArgument("structure dimensions must be positive");
  if (basis_.empty()) throw InvalidArgument("structure needs at least one basis matrix");
  for (std::size_t t = 0; t < basis_.size(); ++t) {
    SparseMatrix& S = basis_[t];
    if (S.rows() != m_ || S.cols() != n_) {
      throw DimensionMismatch("basis matrix " + std::to_string(t + 1) + " is " +
                              std::to_string(S.rows()) + "x" + std::to_string(S.cols()) +
                              ", expected " + std::to_string(m_) + "x" + std::to_string(n_));
    }
    S.prune(0.0);
    S.makeCompressed();
    if (S.nonZeros() == 0) {
      throw InvalidArgument("basis matrix " + std::to_string(t + 1) + " is zero");
    }
  }
  abs_additive_ = disjoint_supports(m_, n_, basis_);
  // Nonzero matrices with disjoint supports are independent; otherwise ask QR.
  if (!abs_additive_) {
    SparseMatrix M = vectorized();
    Eigen::SparseQR<SparseMatrix, Eigen::COLAMDOrdering<int>> qr(M);
    if (qr.info() != Eigen::Success || qr.rank() < q()) {
      throw InvalidArgument("basis matrices are linearly dependent");
    }
  }
}

LinearStructure LinearStructure::toeplitz(Index m, Index n) {
  if (m < 1 || n < 1) throw InvalidArgument("toeplitz structure needs m, n >= 1");
  std::vector<SparseMatrix> basis;
  basis.reserve(static_cast<std::size_t>(m + n - 1));
  for (Index t = 0; t < m + n - 1; ++t) {
    const Index offset = n - 1 - t;  // col - row
    std::vector<Eigen::Triplet<double>> entries;
    for (Index i = 0; i < m; ++i) {
      const Index j = i + offset;
      if (j >= 0 && j < n) entries.emplace_back(static_cast<int>(i), static_cast<int>(j), 1.0);
    }
    SparseMatrix S(m, n);
    S.setFromTriplets(entries.begin(), entries.end());
    basis.push_back(std::move(S));
  }
  return LinearStructure(m, n, std::move(basis));
}

Matrix LinearStructure::assemble(const Vector& a) const {
  if (a.size() != q()) {
    throw DimensionMismatch("coordinate vector has " + std::to_string(a.size()) +
                            " entries, structure has q = " + std::to_string(q()));
  }
  Matrix A = Matrix::Zero(m_, n_);
  for (Index t = 0; t < q(); ++t) {
    if (a(t) == 0.0) continue;
    const SparseMatrix& S = basis_[static_cast<std::size_t>(t)];
    for (Index col = 0; col < S.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(S, col); it; ++it) {
        A(it.row(), it.col()) += a(t) * it.value();
      }
    }
  }
  return A;
}

SparseMatrix LinearStructure::vectorized() const {
  std::vector<Eigen::Triplet<double>> entries;
  for (Index t = 0; t < q(); ++t) {
    const SparseMatrix& S = basis_[static_cast<std::size_t>(t)];
    for (Index col = 0; col < S.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(S, col); it; ++it) {
        entries.emplace_back(static_cast<int>(it.col() * m_ + it.row()), static_cast<int>(t),
                             it.value());
      }
    }
  }
  SparseMatrix M(m_ * n_, q());
  M.setFromTriplets(entries.begin(), entries.end());
  M.makeCompressed();
  return M;
}

StructuredCoordinates decompose(const LinearStructure& structure, const Matrix& A, double tol) {
  if (A.rows() != structure.m() || A.cols() != structure.n()) {
    throw DimensionMismatch("matrix is " + std::to_string(A.rows()) + "x" +
                            std::to_string(A.cols()) + ", structure is " +
                            std::to_string(structure.m()) + "x" + std::to_string(structure.n()));
  }
  const Index q = structure.q();
  Vector a(q);
  if (structure.abs_additive()) {
    // Disjoint supports make the basis orthogonal: project one at a time.
    for (Index t = 0; t < q; ++t) {
      const SparseMatrix& S = structure.basis()[static_cast<std::size_t>(t)];
      double num = 0.0;
      double den = 0.0;
      for (Index col = 0; col < S.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(S, col); it; ++it) {
          num += it.value() * A(it.row(), it.col());
          den += it.value() * it.value();
        }
      }
      a(t) = num / den;
    }
  } else {
    SparseMatrix M = structure.vectorized();
    Eigen::SparseQR<SparseMatrix, Eigen::COLAMDOrdering<int>> qr(M);
    const Vector vecA = Eigen::Map<const Vector>(A.data(), A.size());
    a = qr.solve(vecA);
  }
  const double resid = (A - structure.assemble(a)).norm();
  if (resid > tol * A.norm()) {
    throw NotInSubspace("matrix is not in the structure: residual " + std::to_string(resid) +
                        " exceeds " + std::to_string(tol) + " * ||A||_F");
  }
  return StructuredCoordinates{std::move(a)};
}

StructuredSensitivity structured_sensitivity(const TlsSolution& sol, const Selection& L,
                                             const LinearStructure& structure) {
  const Matrix& A = sol.problem.A();
  if (structure.m() != A.rows() || structure.n() != A.cols()) {
    throw DimensionMismatch("structure shape does not match A");
  }
  if (L.n() != A.cols()) throw DimensionMismatch("selection width does not match n");

  const kernels::BasisActions act = kernels::basis_actions(structure.basis(), sol.x, sol.r);
  const double scale = 2.0 / (1.0 + sol.x.squaredNorm());
  // W * Sx = A^T Sx + scale * x (r^T Sx)
  const Eigen::RowVectorXd rSx = sol.r.transpose() * act.Sx;
  StructuredSensitivity out;
  out.V = act.StR - A.transpose() * act.Sx - scale * sol.x * rSx;
  const Matrix Lt = L.matrix().transpose();
  const Matrix Z1 = apply_p_inverse(sol, Lt).transpose();
  out.Ns = Z1 * out.V;
  return out;
}

Vector structured_frechet(const TlsSolution& sol, const Selection& L,
                          const LinearStructure& structure, const Vector& da, const Vector& db) {
  if (da.size() != structure.q()) throw DimensionMismatch("da must have q entries");
  if (db.size() != sol.problem.m()) throw DimensionMismatch("db must have m entries");
  const StructuredSensitivity s = structured_sensitivity(sol, L, structure);
  const Vector Wdb = correction_matrix(sol) * db;
  return s.Ns * da + L.matrix() * apply_p_inverse(sol, Wdb);
}

StructuredDirection structured_adjoint(const TlsSolution& sol, const Selection& L,
                                       const LinearStructure& structure, const Vector& u) {
  if (u.size() != L.k()) throw DimensionMismatch("u must have k entries");
  const StructuredSensitivity s = structured_sensitivity(sol, L, structure);
  const Vector Ltu = L.matrix().transpose() * u;
  const Vector g = apply_p_inverse(sol, Ltu);
  return StructuredDirection{s.V.transpose() * g, correction_matrix(sol).transpose() * g};
}

Vector structured_terms(const TlsSolution& sol, const Selection& L,
                        const LinearStructure& structure, const StructuredCoordinates& a) {
  if (a.a.size() != structure.q()) throw DimensionMismatch("coordinates must have q entries");
  const StructuredSensitivity s = structured_sensitivity(sol, L, structure);
  const SensitivityCore core = sensitivity_core(sol, L);
  return s.Ns.cwiseAbs() * a.a.cwiseAbs() + core.H_abs_b;
}

StructuredMixedCondition structured_mixed_cond(const TlsSolution& sol, const Selection& L,
                                               const LinearStructure& structure,
                                               const StructuredCoordinates& a) {
  const Vector y = structured_terms(sol, L, structure, a);
  const Vector Lx = L.matrix() * sol.x;
  const double denom = Lx.lpNorm<Eigen::Infinity>();
  if (!(denom > 0.0)) throw SelectionNullSolution("||L x||_inf is zero; relative measure undefined");
  StructuredMixedCondition out;
  out.kappa_s_inf = y.lpNorm<Eigen::Infinity>();
  out.kappa_s_inf_rel = out.kappa_s_inf / denom;
  return out;
}

double structured_comp_cond(const TlsSolution& sol, const Selection& L,
                            const LinearStructure& structure, const StructuredCoordinates& a) {
  const Vector y = structured_terms(sol, L, structure, a);
  return scaled_inf_norm(y, L.matrix() * sol.x);
}

StructuredConditionReport structured_report(const TlsSolution& sol, const Selection& L,
                                            const LinearStructure& structure,
                                            const StructuredCoordinates& a) {
  const Vector y = structured_terms(sol, L, structure, a);
  const Vector Lx = L.matrix() * sol.x;
  const double denom = Lx.lpNorm<Eigen::Infinity>();
  if (!(denom > 0.0)) throw SelectionNullSolution("||L x||_inf is zero; relative measure undefined");
  StructuredConditionReport rep;
  rep.kappa_s_inf = y.lpNorm<Eigen::Infinity>();
  rep.kappa_s_inf_rel = rep.kappa_s_inf / denom;
  rep.kappa_s_c = scaled_inf_norm(y, Lx);
  rep.kappa_s2_bound = two_norm_bound(rep.kappa_s_inf, L.k());
  return rep;
}

}  // namespace tlscond
