#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tlscond/tls_core.hpp"

namespace tlscond {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// The k x n matrix L that picks the linear function L x of the solution.
class Selection {
 public:
  Selection(Matrix L, std::string label = "L");

  static Selection identity(Index n);
  // Rows e_i^T for the given zero-based indices.
  static Selection rows(Index n, const std::vector<Index>& indices, std::string label = {});
  static Selection index(Index n, Index i, std::string label = {});
  // e_i^T for the first i maximizing (resp. minimizing) |x_i|.
  static Selection largest_component(const Vector& x);
  static Selection smallest_component(const Vector& x);

  const Matrix& matrix() const noexcept { return L_; }
  Index k() const noexcept { return L_.rows(); }
  Index n() const noexcept { return L_.cols(); }
  const std::string& label() const noexcept { return label_; }

 private:
  Matrix L_;
  std::string label_;
};

// {I_n, [e_1 e_2]^T, e_max^T, e_min^T}; the second entry is dropped when n < 2.
std::vector<Selection> standard_selections(const Vector& x);

// Dense pieces shared by every unstructured formula.
struct SensitivityCore {
  Matrix W;         // n x m, A^T + 2 x r^T / (1 + x^T x)
  Matrix Z1;        // k x n, L P^{-1}
  Matrix Z2;        // k x m, L P^{-1} W   (= L H)
  Vector H_abs_b;   // k,     |L P^{-1} W| |b|
  Vector Lx;        // k
};

SensitivityCore sensitivity_core(const TlsSolution& sol, const Selection& L);

// Derivative of L x along (dA, db).
Vector frechet_apply(const TlsSolution& sol, const Selection& L, const Matrix& dA,
                     const Vector& db);

struct DataDirection {
  Matrix dA;
  Vector db;
};

// Adjoint of frechet_apply under <u, v> and the trace inner product on data.
DataDirection frechet_adjoint(const TlsSolution& sol, const Selection& L, const Vector& u);

struct NormwiseCondition {
  double cond_abs = 0.0;
  double cond_rel = 0.0;
};

// SVD-based normwise condition number and its relative version
// cond_abs * ||[A, b]||_F / ||L x||_2.
NormwiseCondition normwise_cond(const TlsSolution& sol, const Selection& L);

struct MixedCondition {
  double kappa_inf = 0.0;
  double kappa_inf_rel = 0.0;
};

// The vector inside the infinity norm of the mixed and componentwise
// condition numbers: |L N| vec(|A|) + |L H| |b|.
Vector mixed_terms(const TlsSolution& sol, const Selection& L);
Vector mixed_terms(const TlsSolution& sol, const SensitivityCore& core);

MixedCondition mixed_cond(const TlsSolution& sol, const Selection& L);
double comp_cond(const TlsSolution& sol, const Selection& L);

// ||D^+_{Lx} y||_inf with the zero-component convention: a zero (Lx)_l
// contributes 0 when y_l = 0 and +inf otherwise.
double scaled_inf_norm(const Vector& y, const Vector& Lx);

// sqrt(k) * kappa_inf, an upper bound on the 2-norm mixed condition number.
double two_norm_bound(double kappa_inf, Index k);

struct UpperBounds {
  double kappa_inf_upper = 0.0;
  double kappa_c_upper = 0.0;
};

// Kronecker-free bounds on kappa_inf_rel and kappa_c built from |L P^{-1}|,
// |W|, |A|, |x|, |r| and |b|.
UpperBounds upper_bounds(const TlsSolution& sol, const Selection& L);

struct ConditionReport {
  double cond_abs = 0.0;
  double cond_rel = 0.0;
  double kappa_inf = 0.0;
  double kappa_inf_rel = 0.0;
  double kappa_c = 0.0;
  double kappa2_bound = 0.0;
  double kappa_inf_upper = 0.0;
  double kappa_c_upper = 0.0;
};

ConditionReport condition_report(const TlsSolution& sol, const Selection& L);

}  // namespace tlscond
