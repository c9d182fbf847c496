#include "tlscond/harness.hpp"

#include <cmath>
#include <numbers>

#include "tlscond/rng.hpp"

namespace tlscond {

Perturbation gen_perturbation(const TlsProblem& problem, const PerturbationSpec& spec) {
  if (!(spec.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  Rng rng(spec.seed);
  const Index m = problem.m();
  const Index n = problem.n();
  Perturbation out;
  if (spec.structured) {
    const StructuredModel& model = *spec.structured;
    const Vector& a = model.coordinates.a;
    if (!model.structure || model.structure->m() != m || model.structure->n() != n) {
      throw DimensionMismatch("perturbation structure does not match the problem");
    }
    out.da.resize(a.size());
    for (Index t = 0; t < a.size(); ++t) out.da(t) = spec.epsilon * rng.uniform_pm1() * a(t);
    out.dA = model.structure->assemble(out.da);
  } else {
    out.dA.resize(m, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < m; ++i) {
        out.dA(i, j) = spec.epsilon * rng.uniform_pm1() * problem.A()(i, j);
      }
    }
  }
  out.db.resize(m);
  for (Index i = 0; i < m; ++i) out.db(i) = spec.epsilon * rng.uniform_pm1() * problem.b()(i);
  return out;
}

RelativeErrors relative_errors(const Vector& x, const Vector& x_pert, const Selection& L) {
  if (x.size() != L.n() || x_pert.size() != L.n()) {
    throw DimensionMismatch("relative_errors: solution length does not match the selection");
  }
  const Vector Lx = L.matrix() * x;
  const Vector Ldx = L.matrix() * (x_pert - x);
  const double n2 = Lx.norm();
  const double ninf = Lx.lpNorm<Eigen::Infinity>();
  if (!(n2 > 0.0)) throw SelectionNullSolution("L x is zero; relative errors undefined");
  RelativeErrors out;
  out.r2 = Ldx.norm() / n2;
  out.rinf = Ldx.lpNorm<Eigen::Infinity>() / ninf;
  for (Index i = 0; i < Lx.size(); ++i) {
    if (Lx(i) != 0.0) out.rc = std::max(out.rc, std::abs(Ldx(i)) / std::abs(Lx(i)));
  }
  return out;
}

RelativeErrors relative_errors(const TlsSolution& sol, const TlsSolution& sol_pert,
                               const Selection& L) {
  return relative_errors(sol.x, sol_pert.x, L);
}

TlsProblem make_example1(double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  Matrix A = Matrix::Zero(9, 4);
  A(0, 0) = delta;
  A(2, 1) = delta;
  A(6, 2) = 1.0;
  A(8, 3) = 1.0;
  return TlsProblem(std::move(A), Vector::Ones(9));
}

namespace {

Vector random_unit(Rng& rng, Index size) {
  Vector v(size);
  for (Index i = 0; i < size; ++i) v(i) = rng.normal();
  return v / v.norm();
}

double spectral_norm(const Matrix& M) {
  Eigen::BDCSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

}  // namespace

TlsProblem make_example2(double e_p, Index m, Index n, std::uint64_t seed) {
  if (!(e_p > 0.0)) throw InvalidArgument("e_p must be positive");
  if (n < 1 || m <= n + 1) throw InvalidArgument("example2 needs m > n + 1 >= 2");
  Rng rng(seed);
  const Vector y = random_unit(rng, m);
  const Vector z = random_unit(rng, n + 1);

  Vector d(n + 1);
  for (Index i = 0; i < n; ++i) d(i) = static_cast<double>(n - i);
  d(n) = 1.0 - e_p;

  // [D; 0] Z^T with Z = I - 2 z z^T, then Y applied from the left.
  Matrix C = Matrix::Zero(m, n + 1);
  const Matrix Zt = Matrix::Identity(n + 1, n + 1) - 2.0 * z * z.transpose();
  C.topRows(n + 1) = d.asDiagonal() * Zt;
  C -= 2.0 * y * (y.transpose() * C);
  return TlsProblem(C.leftCols(n), C.col(n));
}

Example3 make_example3(double alpha, Index omega, Index m, double gamma, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(gamma >= 0.0)) throw InvalidArgument("gamma must be nonnegative");
  if (omega < 0 || m <= 2 * omega) throw InvalidArgument("example3 needs m > 2 omega");
  const Index n = m - 2 * omega;
  const Index band = 2 * omega + 1;

  // Toeplitz coordinate of subdiagonal s (s = 0 is the main diagonal).
  auto coord = [n](Index s) { return n - 1 + s; };

  LinearStructure structure = LinearStructure::toeplitz(m, n);
  Vector a_bar = Vector::Zero(structure.q());
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * alpha * alpha);
  for (Index s = 0; s < band; ++s) {
    const double t = static_cast<double>(omega - s);  // omega - i + 1 with i = s + 1
    a_bar(coord(s)) = norm * std::exp(-t * t / (2.0 * alpha * alpha));
  }
  const Matrix A_bar = structure.assemble(a_bar);

  Rng rng(seed);
  Vector a_noise = Vector::Zero(structure.q());
  for (Index s = 0; s < band; ++s) a_noise(coord(s)) = rng.normal();
  Vector e(m);
  for (Index i = 0; i < m; ++i) e(i) = rng.normal();

  Matrix A = A_bar;
  Vector b = Vector::Ones(m);
  if (gamma > 0.0) {
    const Matrix E0 = structure.assemble(a_noise);
    const double scale_E = gamma * spectral_norm(A_bar) / spectral_norm(E0);
    const double scale_e = gamma * std::sqrt(static_cast<double>(m)) / e.norm();
    A = structure.assemble(a_bar + scale_E * a_noise);
    b += scale_e * e;
  }
  StructuredCoordinates coords = decompose(structure, A);
  return Example3{TlsProblem(std::move(A), std::move(b)), std::move(structure), std::move(coords)};
}

ExperimentTable run_experiment(const TlsProblem& problem, const std::vector<Selection>& selections,
                               const PerturbationSpec& spec, Index trials, double tol) {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (!(spec.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const TlsSolution sol = solve_tls(problem, tol);

  ExperimentTable table;
  table.epsilon = spec.epsilon;
  table.seed = spec.seed;
  table.trials = trials;
  for (const Selection& L : selections) {
    ExperimentRow row{L, condition_report(sol, L), std::nullopt, {}, 0.0, 0.0, 0.0, 0, true};
    if (spec.structured) {
      row.structured = structured_report(sol, L, *spec.structured->structure,
                                         spec.structured->coordinates);
    }
    row.trials.resize(static_cast<std::size_t>(trials));
    table.rows.push_back(std::move(row));
  }

  const double eps = spec.epsilon;
#pragma omp parallel for schedule(dynamic, 1)
  for (Index t = 0; t < trials; ++t) {
    PerturbationSpec trial_spec = spec;
    trial_spec.seed = trial_seed(spec.seed, static_cast<std::uint64_t>(t));
    std::optional<TlsSolution> pert;
    std::string failure;
    try {
      const Perturbation p = gen_perturbation(problem, trial_spec);
      pert.emplace(solve_tls(TlsProblem(problem.A() + p.dA, problem.b() + p.db), tol));
    } catch (const Error& e) {
      failure = e.what();
    }
    for (ExperimentRow& row : table.rows) {
      TrialResult& res = row.trials[static_cast<std::size_t>(t)];
      res.trial = static_cast<std::uint64_t>(t);
      res.bound_2 = row.condition.cond_rel * eps;
      res.bound_inf =
          (row.structured ? row.structured->kappa_s_inf_rel : row.condition.kappa_inf_rel) * eps;
      res.bound_c = (row.structured ? row.structured->kappa_s_c : row.condition.kappa_c) * eps;
      if (!pert) {
        res.failure = failure;
        continue;
      }
      const RelativeErrors err = relative_errors(sol.x, pert->x, row.selection);
      res.solved = true;
      res.r2_rel = err.r2;
      res.rinf_rel = err.rinf;
      res.rc_rel = err.rc;
      res.satisfied_2 = err.r2 <= kBoundSlack * res.bound_2;
      res.satisfied_inf = err.rinf <= kBoundSlack * res.bound_inf;
      res.satisfied_c = err.rc <= kBoundSlack * res.bound_c;
    }
  }

  for (ExperimentRow& row : table.rows) {
    for (const TrialResult& res : row.trials) {
      if (!res.solved) {
        ++row.failed_trials;
        row.all_satisfied = false;
        continue;
      }
      row.worst_r2 = std::max(row.worst_r2, res.r2_rel);
      row.worst_rinf = std::max(row.worst_rinf, res.rinf_rel);
      row.worst_rc = std::max(row.worst_rc, res.rc_rel);
      row.all_satisfied = row.all_satisfied && res.satisfied_2 && res.satisfied_inf && res.satisfied_c;
    }
  }
  return table;
}

}  // namespace tlscond
