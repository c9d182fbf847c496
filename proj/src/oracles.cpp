#include "tlscond/oracles.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <string>

namespace tlscond {

namespace {

Matrix dense_p_inverse(const TlsSolution& sol) {
  const Matrix P = form_p(sol);
  Eigen::FullPivLU<Matrix> lu(P);
  if (!lu.isInvertible()) throw NotGeneric("P is numerically singular");
  return lu.inverse();
}

void check_cap(Index entries, Index cap, const char* who) {
  if (entries > cap) {
    throw OracleRefused(std::string(who) + ": explicit matrix would have " +
                        std::to_string(entries) + " entries (cap " + std::to_string(cap) + ")");
  }
}

}  // namespace

ZhouCondition zhou_oracle(const TlsSolution& sol, Index cap) {
  const Matrix& A = sol.problem.A();
  const Vector& b = sol.problem.b();
  const Index m = A.rows();
  const Index n = A.cols();
  const Index cols = n * m + m;
  check_cap(n * cols, cap, "zhou_oracle");

  const Matrix Pinv = dense_p_inverse(sol);
  const Matrix PinvAt = Pinv * A.transpose();
  const Vector Ax = A * sol.x;

  Matrix M(n, cols);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) {
      M.col(j * m + i) = Pinv.col(j) * b(i) - sol.x(j) * PinvAt.col(i) - Pinv.col(j) * Ax(i);
    }
  }
  M.rightCols(m) = PinvAt;

  // v_{n+1}^T (x) u_{n+1}^T as a row of length (n+1) m.
  Eigen::RowVectorXd vu(cols);
  for (Index j = 0; j <= n; ++j) {
    vu.segment(j * m, m) = sol.svd.v_last(j) * sol.svd.u_last.transpose();
  }
  const Matrix N = (2.0 * sol.sigma_np1) * (Pinv * sol.x) * vu;

  Vector data(cols);
  data.head(n * m) = Eigen::Map<const Vector>(A.data(), n * m).cwiseAbs();
  data.tail(m) = b.cwiseAbs();
  const Vector y = (M + N).cwiseAbs() * data;

  ZhouCondition out;
  const double xinf = sol.x.lpNorm<Eigen::Infinity>();
  if (!(xinf > 0.0)) throw SelectionNullSolution("x = 0; m(A, b) undefined");
  out.m_ab = y.lpNorm<Eigen::Infinity>() / xinf;
  out.c_ab = scaled_inf_norm(y, sol.x);
  return out;
}

double li_jia_oracle(const TlsSolution& sol, const LinearStructure& structure,
                     const StructuredCoordinates& a, Index cap) {
  const Matrix& A = sol.problem.A();
  const Vector& b = sol.problem.b();
  const Vector& x = sol.x;
  const Vector& r = sol.r;
  const Index m = A.rows();
  const Index n = A.cols();
  const Index q = structure.q();
  const Index cols = n * m + m;
  check_cap(n * cols, cap, "li_jia_oracle");
  if (structure.m() != m || structure.n() != n) throw DimensionMismatch("structure shape mismatch");
  if (a.a.size() != q) throw DimensionMismatch("coordinates must have q entries");

  const double rr = r.squaredNorm();
  const double scale = A.norm() * x.norm() + b.norm();
  if (r.norm() <= 64.0 * std::numeric_limits<double>::epsilon() * scale) {
    throw OracleRefused("li_jia_oracle: residual is zero (consistent system)");
  }

  // G(x) = [x^T, -1] (x) I_m, m x (n+1) m.
  Matrix G = Matrix::Zero(m, cols);
  for (Index j = 0; j < n; ++j) G.block(0, j * m, m, m).diagonal().setConstant(x(j));
  G.block(0, n * m, m, m).diagonal().setConstant(-1.0);

  const Vector Atr = A.transpose() * r;
  Matrix inner = (2.0 / rr) * Atr * (r.transpose() * G) - A.transpose() * G;
  for (Index p = 0; p < n; ++p) inner.block(p, p * m, 1, m) += r.transpose();
  const Matrix K = dense_p_inverse(sol) * inner;

  // K * blkdiag(M^st, I_m)
  const SparseMatrix Mst = structure.vectorized();
  Matrix KM(n, q + m);
  KM.leftCols(q) = K.leftCols(n * m) * Mst;
  KM.rightCols(m) = K.rightCols(m);

  Vector data(q + m);
  data.head(q) = a.a.cwiseAbs();
  data.tail(m) = b.cwiseAbs();
  const Vector y = KM.cwiseAbs() * data;
  const double xinf = x.lpNorm<Eigen::Infinity>();
  if (!(xinf > 0.0)) throw SelectionNullSolution("x = 0; m_s(A, b) undefined");
  return y.lpNorm<Eigen::Infinity>() / xinf;
}

}  // namespace tlscond
