#pragma once

#include <Eigen/Dense>

#include "tlscond/errors.hpp"

namespace tlscond {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultGenericityTol = 1e-12;

// Over-determined data pair (A, b), m > n >= 1, all entries finite.
class TlsProblem {
 public:
  TlsProblem(Matrix A, Vector b);

  const Matrix& A() const noexcept { return A_; }
  const Vector& b() const noexcept { return b_; }
  Index m() const noexcept { return A_.rows(); }
  Index n() const noexcept { return A_.cols(); }

  // [A, b], m x (n+1).
  Matrix augmented() const;

 private:
  Matrix A_;
  Vector b_;
};

// Both SVDs the solver and the condition-number formulas need.
//
// U_aug holds only the leading n+1 left singular vectors; nothing downstream
// touches the trailing m-n-1 columns.
struct SvdBundle {
  Vector sigma_aug;    // n+1 singular values of [A, b], nonincreasing
  Matrix V_aug;        // (n+1) x (n+1)
  Matrix U_aug;        // m x (n+1)
  Vector v_last;       // last column of V_aug, oriented so v_last_last > 0
  double v_last_last = 0.0;
  Vector u_last;       // matching left singular vector
  Vector sigma_tilde;  // n singular values of A, nonincreasing
  Matrix V_tilde;      // n x n
};

struct GenericityReport {
  double sigma_tilde_n = 0.0;
  double sigma_np1 = 0.0;
  double relative_gap = 0.0;  // (sigma_tilde_n - sigma_np1) / sigma_tilde_1
  double v_last_last = 0.0;
  bool is_generic = false;
};

// P^{-1} = Q1 Q Q1 with Q1 = I + x x^T, Q = V11 D^{-1} V11^T and
// D_i = sigma_i^2 - sigma_{n+1}^2.
struct PInverseFactors {
  Matrix Q1;
  Matrix Q;
  Vector D;
  Matrix Q1V11;  // Q1 * V11, so that P^{-1} = (Q1 V11) D^{-1} (Q1 V11)^T
};

struct TlsSolution {
  TlsProblem problem;
  Vector x;
  Vector r;  // b - A x
  double sigma_np1 = 0.0;
  SvdBundle svd;
  PInverseFactors pinv;
  GenericityReport genericity;
};

// Computes both SVDs of the problem with QR-preconditioned Jacobi, which keeps
// relative accuracy in the small singular triplets of badly column-scaled data.
SvdBundle compute_svd_bundle(const TlsProblem& problem);

GenericityReport check_genericity(const TlsProblem& problem,
                                  double tol = kDefaultGenericityTol);
GenericityReport genericity_from_svd(const SvdBundle& svd, double tol);

// Classical SVD-based TLS solve. Throws NotGeneric.
TlsSolution solve_tls(const TlsProblem& problem, double tol = kDefaultGenericityTol);

// Q1 * (Q * (Q1 * y)) without forming or inverting P. y must have n rows.
Matrix apply_p_inverse(const TlsSolution& sol, const Matrix& y);
Vector apply_p_inverse(const TlsSolution& sol, const Vector& y);

// P = A^T A - sigma_{n+1}^2 I, formed explicitly. For checks and oracles only.
Matrix form_p(const TlsSolution& sol);

// A^T + 2 x r^T / (1 + x^T x), n x m.
Matrix correction_matrix(const TlsSolution& sol);

}  // namespace tlscond
