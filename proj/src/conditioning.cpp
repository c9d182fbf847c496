#include "tlscond/conditioning.hpp"

#include <cmath>

#include "tlscond/kernels.hpp"

namespace tlscond {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionMismatch(what);
}

void check_selection(const TlsSolution& sol, const Selection& L) {
  require(L.n() == sol.x.size(), "selection has " + std::to_string(L.n()) +
                                     " columns but the solution has " +
                                     std::to_string(sol.x.size()) + " entries");
}

Index first_extreme(const Vector& x, bool largest) {
  if (x.size() == 0) throw InvalidArgument("empty solution vector");
  Index best = 0;
  for (Index i = 1; i < x.size(); ++i) {
    const double v = std::abs(x(i));
    const double b = std::abs(x(best));
    if (largest ? v > b : v < b) best = i;
  }
  return best;
}

double inf_norm_nonzero(const Vector& Lx) {
  const double norm = Lx.lpNorm<Eigen::Infinity>();
  if (!(norm > 0.0)) throw SelectionNullSolution("||L x||_inf is zero; relative measure undefined");
  return norm;
}

}  // namespace

Selection::Selection(Matrix L, std::string label) : L_(std::move(L)), label_(std::move(label)) {
  if (L_.rows() < 1 || L_.cols() < 1) throw InvalidArgument("selection must be non-empty");
  if (L_.rows() > L_.cols()) {
    throw InvalidArgument("selection must have k <= n rows, got " + std::to_string(L_.rows()) +
                          "x" + std::to_string(L_.cols()));
  }
  if (!L_.allFinite()) throw InvalidArgument("selection must have finite entries");
}

Selection Selection::identity(Index n) { return Selection(Matrix::Identity(n, n), "I"); }

Selection Selection::rows(Index n, const std::vector<Index>& indices, std::string label) {
  Matrix L = Matrix::Zero(static_cast<Index>(indices.size()), n);
  std::string auto_label = "rows=";
  for (std::size_t t = 0; t < indices.size(); ++t) {
    const Index i = indices[t];
    if (i < 0 || i >= n) {
      throw InvalidArgument("selection index " + std::to_string(i + 1) + " out of range 1.." +
                            std::to_string(n));
    }
    L(static_cast<Index>(t), i) = 1.0;
    auto_label += (t ? "," : "") + std::to_string(i + 1);
  }
  return Selection(std::move(L), label.empty() ? auto_label : std::move(label));
}

Selection Selection::index(Index n, Index i, std::string label) {
  return rows(n, {i}, label.empty() ? "index=" + std::to_string(i + 1) : std::move(label));
}

Selection Selection::largest_component(const Vector& x) {
  return index(x.size(), first_extreme(x, true), "max");
}

Selection Selection::smallest_component(const Vector& x) {
  return index(x.size(), first_extreme(x, false), "min");
}

std::vector<Selection> standard_selections(const Vector& x) {
  const Index n = x.size();
  std::vector<Selection> out;
  out.push_back(Selection::identity(n));
  if (n >= 2) out.push_back(Selection::rows(n, {0, 1}, "L1"));
  Selection lmax = Selection::largest_component(x);
  Selection lmin = Selection::smallest_component(x);
  out.emplace_back(lmax.matrix(), "L2");
  out.emplace_back(lmin.matrix(), "L3");
  return out;
}

SensitivityCore sensitivity_core(const TlsSolution& sol, const Selection& L) {
  check_selection(sol, L);
  SensitivityCore core;
  core.W = correction_matrix(sol);
  const Matrix Lt = L.matrix().transpose();
  core.Z1 = apply_p_inverse(sol, Lt).transpose();
  core.Z2 = core.Z1 * core.W;
  core.H_abs_b = core.Z2.cwiseAbs() * sol.problem.b().cwiseAbs();
  core.Lx = L.matrix() * sol.x;
  return core;
}

Vector frechet_apply(const TlsSolution& sol, const Selection& L, const Matrix& dA,
                     const Vector& db) {
  check_selection(sol, L);
  const Matrix& A = sol.problem.A();
  require(dA.rows() == A.rows() && dA.cols() == A.cols(), "dA must match the shape of A");
  require(db.size() == A.rows(), "db must have m entries");
  const Vector W_dir = correction_matrix(sol) * (db - dA * sol.x);
  const Vector inner = dA.transpose() * sol.r + W_dir;
  return L.matrix() * apply_p_inverse(sol, inner);
}

DataDirection frechet_adjoint(const TlsSolution& sol, const Selection& L, const Vector& u) {
  check_selection(sol, L);
  require(u.size() == L.k(), "u must have k entries");
  const Vector Ltu = L.matrix().transpose() * u;
  const Vector g = apply_p_inverse(sol, Ltu);
  const Vector Wtg = correction_matrix(sol).transpose() * g;
  DataDirection out;
  out.dA = sol.r * g.transpose() - Wtg * sol.x.transpose();
  out.db = Wtg;
  return out;
}

NormwiseCondition normwise_cond(const TlsSolution& sol, const Selection& L) {
  check_selection(sol, L);
  const Index n = sol.x.size();
  const SvdBundle& svd = sol.svd;
  const double s = sol.sigma_np1;

  Vector d1(n);
  Vector d2(n);
  for (Index i = 0; i < n; ++i) {
    const double st = svd.sigma_tilde(i);
    const double denom = (st - s) * (st + s);
    if (!(denom > 0.0)) throw NotGeneric("sigma_tilde_i^2 - sigma_{n+1}^2 is not positive");
    d1(i) = 1.0 / denom;
    d2(i) = std::sqrt(svd.sigma_aug(i) * svd.sigma_aug(i) + s * s);
  }
  // L Vt D' [Vt^T 0] V [D''; 0] = L Vt D' (Vt^T V11) D''
  const Matrix core = (L.matrix() * svd.V_tilde) * d1.asDiagonal() *
                      (svd.V_tilde.transpose() * svd.V_aug.topLeftCorner(n, n)) *
                      d2.asDiagonal();
  Eigen::JacobiSVD<Matrix> norm2(core);
  NormwiseCondition out;
  out.cond_abs = std::sqrt(1.0 + sol.x.squaredNorm()) * norm2.singularValues()(0);

  const double Lx2 = (L.matrix() * sol.x).norm();
  if (!(Lx2 > 0.0)) throw SelectionNullSolution("||L x||_2 is zero; cond_rel undefined");
  const double data_norm =
      std::sqrt(sol.problem.A().squaredNorm() + sol.problem.b().squaredNorm());
  out.cond_rel = out.cond_abs * data_norm / Lx2;
  return out;
}

Vector mixed_terms(const TlsSolution& sol, const SensitivityCore& core) {
  return kernels::mixed_numerator(sol.problem.A(), sol.x, sol.r, core.Z1, core.Z2) +
         core.H_abs_b;
}

Vector mixed_terms(const TlsSolution& sol, const Selection& L) {
  return mixed_terms(sol, sensitivity_core(sol, L));
}

MixedCondition mixed_cond(const TlsSolution& sol, const Selection& L) {
  const SensitivityCore core = sensitivity_core(sol, L);
  const Vector y = mixed_terms(sol, core);
  MixedCondition out;
  out.kappa_inf = y.lpNorm<Eigen::Infinity>();
  out.kappa_inf_rel = out.kappa_inf / inf_norm_nonzero(core.Lx);
  return out;
}

double scaled_inf_norm(const Vector& y, const Vector& Lx) {
  if (y.size() != Lx.size()) throw DimensionMismatch("scaled_inf_norm: size mismatch");
  double out = 0.0;
  for (Index l = 0; l < y.size(); ++l) {
    double v;
    if (Lx(l) != 0.0) {
      v = std::abs(y(l)) / std::abs(Lx(l));
    } else {
      v = y(l) == 0.0 ? 0.0 : kInfinity;
    }
    out = std::max(out, v);
  }
  return out;
}

double comp_cond(const TlsSolution& sol, const Selection& L) {
  const SensitivityCore core = sensitivity_core(sol, L);
  return scaled_inf_norm(mixed_terms(sol, core), core.Lx);
}

double two_norm_bound(double kappa_inf, Index k) {
  if (!(kappa_inf >= 0.0)) throw InvalidArgument("kappa_inf must be nonnegative");
  if (k < 1) throw InvalidArgument("k must be positive");
  return std::sqrt(static_cast<double>(k)) * kappa_inf;
}

UpperBounds upper_bounds(const TlsSolution& sol, const Selection& L) {
  const SensitivityCore core = sensitivity_core(sol, L);
  const Matrix absA = sol.problem.A().cwiseAbs();
  const Matrix absZ1 = core.Z1.cwiseAbs();
  const Vector t1 = absZ1 * (core.W.cwiseAbs() * (absA * sol.x.cwiseAbs()));
  const Vector t2 = absZ1 * (absA.transpose() * sol.r.cwiseAbs());
  const Vector& t3 = core.H_abs_b;

  UpperBounds out;
  const double inf_sum = t1.lpNorm<Eigen::Infinity>() + t2.lpNorm<Eigen::Infinity>() +
                         t3.lpNorm<Eigen::Infinity>();
  out.kappa_inf_upper = inf_sum / inf_norm_nonzero(core.Lx);
  out.kappa_c_upper = scaled_inf_norm(t1, core.Lx) + scaled_inf_norm(t2, core.Lx) +
                      scaled_inf_norm(t3, core.Lx);
  return out;
}

ConditionReport condition_report(const TlsSolution& sol, const Selection& L) {
  ConditionReport rep;
  const NormwiseCondition nw = normwise_cond(sol, L);
  rep.cond_abs = nw.cond_abs;
  rep.cond_rel = nw.cond_rel;

  const SensitivityCore core = sensitivity_core(sol, L);
  const Vector y = mixed_terms(sol, core);
  rep.kappa_inf = y.lpNorm<Eigen::Infinity>();
  rep.kappa_inf_rel = rep.kappa_inf / inf_norm_nonzero(core.Lx);
  rep.kappa_c = scaled_inf_norm(y, core.Lx);
  rep.kappa2_bound = two_norm_bound(rep.kappa_inf, L.k());

  const UpperBounds ub = upper_bounds(sol, L);
  rep.kappa_inf_upper = ub.kappa_inf_upper;
  rep.kappa_c_upper = ub.kappa_c_upper;
  return rep;
}

}  // namespace tlscond
