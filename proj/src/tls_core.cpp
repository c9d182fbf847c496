#include "tlscond/tls_core.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace tlscond {

namespace {

std::string shape(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace

TlsProblem::TlsProblem(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size()) {
    throw DimensionMismatch("A is " + shape(A_.rows(), A_.cols()) + " but b has " +
                            std::to_string(b_.size()) + " entries");
  }
  if (A_.cols() < 1 || A_.rows() <= A_.cols()) {
    throw InvalidArgument("TLS problem must be over-determined (m > n >= 1), got A " +
                          shape(A_.rows(), A_.cols()));
  }
  if (!A_.allFinite() || !b_.allFinite()) {
    throw InvalidArgument("A and b must contain only finite values");
  }
}

Matrix TlsProblem::augmented() const {
  Matrix C(m(), n() + 1);
  C.leftCols(n()) = A_;
  C.col(n()) = b_;
  return C;
}

SvdBundle compute_svd_bundle(const TlsProblem& problem) {
  const Index n = problem.n();
  SvdBundle out;

  Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> aug(
      problem.augmented(), Eigen::ComputeThinU | Eigen::ComputeFullV);
  out.sigma_aug = aug.singularValues();
  out.V_aug = aug.matrixV();
  out.U_aug = aug.matrixU();

  // Fix the sign so v_{n+1,n+1} >= 0; flip the left vector with it so that
  // [A, b] v = sigma u still holds.
  if (out.V_aug(n, n) < 0.0) {
    out.V_aug.col(n) = -out.V_aug.col(n);
    out.U_aug.col(n) = -out.U_aug.col(n);
  }
  out.v_last = out.V_aug.col(n);
  out.v_last_last = out.v_last(n);
  out.u_last = out.U_aug.col(n);

  Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> a_only(
      problem.A(), Eigen::ComputeFullV);
  out.sigma_tilde = a_only.singularValues();
  out.V_tilde = a_only.matrixV();
  return out;
}

GenericityReport genericity_from_svd(const SvdBundle& svd, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("genericity tolerance must be positive");
  const Index n = svd.sigma_tilde.size();
  GenericityReport rep;
  rep.sigma_tilde_n = svd.sigma_tilde(n - 1);
  rep.sigma_np1 = svd.sigma_aug(n);
  rep.v_last_last = svd.v_last_last;
  const double top = svd.sigma_tilde(0);
  rep.relative_gap = top > 0.0 ? (rep.sigma_tilde_n - rep.sigma_np1) / top : 0.0;
  rep.is_generic = rep.relative_gap > tol && std::abs(rep.v_last_last) > tol;
  return rep;
}

GenericityReport check_genericity(const TlsProblem& problem, double tol) {
  return genericity_from_svd(compute_svd_bundle(problem), tol);
}

TlsSolution solve_tls(const TlsProblem& problem, double tol) {
  SvdBundle svd = compute_svd_bundle(problem);
  GenericityReport gen = genericity_from_svd(svd, tol);
  if (!gen.is_generic) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "TLS problem is not generic: relative gap %.3e, v_{n+1,n+1} = %.3e (tol %.1e)",
                  gen.relative_gap, gen.v_last_last, tol);
    throw NotGeneric(buf);
  }

  const Index n = problem.n();
  const double s = svd.sigma_aug(n);
  Vector x = -svd.v_last.head(n) / svd.v_last_last;
  Vector r = problem.b() - problem.A() * x;

  PInverseFactors f;
  f.D.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double si = svd.sigma_aug(i);
    f.D(i) = (si - s) * (si + s);
    if (!(f.D(i) > 0.0)) {
      throw NotGeneric("sigma_" + std::to_string(i + 1) +
                       "^2 - sigma_{n+1}^2 is not positive; P is singular");
    }
  }
  const auto V11 = svd.V_aug.topLeftCorner(n, n);
  f.Q1 = Matrix::Identity(n, n) + x * x.transpose();
  f.Q = V11 * f.D.cwiseInverse().asDiagonal() * V11.transpose();
  // Q1 * V11 = V11 + x * (x^T V11), and x^T V11 = V21 by orthogonality of V.
  f.Q1V11 = V11 + x * svd.V_aug.bottomLeftCorner(1, n);

  return TlsSolution{problem, std::move(x), std::move(r), s, std::move(svd), std::move(f), gen};
}

Matrix apply_p_inverse(const TlsSolution& sol, const Matrix& y) {
  const Index n = sol.x.size();
  if (y.rows() != n) {
    throw DimensionMismatch("apply_p_inverse: expected " + std::to_string(n) + " rows, got " +
                            std::to_string(y.rows()));
  }
  const Matrix& G = sol.pinv.Q1V11;
  Matrix t = G.transpose() * y;
  t = sol.pinv.D.cwiseInverse().asDiagonal() * t;
  return G * t;
}

Vector apply_p_inverse(const TlsSolution& sol, const Vector& y) {
  const Matrix col = y;
  return apply_p_inverse(sol, col).col(0);
}

Matrix form_p(const TlsSolution& sol) {
  const Matrix& A = sol.problem.A();
  const Index n = A.cols();
  return A.transpose() * A - sol.sigma_np1 * sol.sigma_np1 * Matrix::Identity(n, n);
}

Matrix correction_matrix(const TlsSolution& sol) {
  const double scale = 2.0 / (1.0 + sol.x.squaredNorm());
  return sol.problem.A().transpose() + scale * sol.x * sol.r.transpose();
}

}  // namespace tlscond
