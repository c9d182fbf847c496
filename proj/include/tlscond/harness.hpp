#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tlscond/structured.hpp"

namespace tlscond {

// A structure together with the coordinates of the problem's A in it.
struct StructuredModel {
  std::shared_ptr<const LinearStructure> structure;
  StructuredCoordinates coordinates;
};

struct PerturbationSpec {
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  // When set, only the coordinates a are perturbed and dA is assembled.
  std::optional<StructuredModel> structured;
};

struct Perturbation {
  Matrix dA;
  Vector db;
  Vector da;  // empty for unstructured perturbations
};

// dA = eps * (R1 .* A), db = eps * (r1 .* b) with R1, r1 i.i.d. uniform on
// (-1, 1). Structured: da = eps * (r .* a), dA = sum da_i S_i.
Perturbation gen_perturbation(const TlsProblem& problem, const PerturbationSpec& spec);

struct RelativeErrors {
  double r2 = 0.0;
  double rinf = 0.0;
  double rc = 0.0;
};

// Normwise, mixed and componentwise relative errors of L x_pert against L x.
// The componentwise one is max |(L dx)_i| / |(L x)_i| over (L x)_i != 0.
RelativeErrors relative_errors(const Vector& x, const Vector& x_pert, const Selection& L);
RelativeErrors relative_errors(const TlsSolution& sol, const TlsSolution& sol_pert,
                               const Selection& L);

// 9 x 4 sparse, badly scaled data with b = ones(9).
TlsProblem make_example1(double delta);

// [A, b] = Y [D; 0] Z^T with Householder reflectors Y, Z built from seeded
// random unit vectors and D = diag(n, n-1, ..., 1, 1 - e_p).
TlsProblem make_example2(double e_p, Index m, Index n, std::uint64_t seed);

struct Example3 {
  TlsProblem problem;
  LinearStructure structure;
  StructuredCoordinates coordinates;
};

// Gaussian-blur Toeplitz convolution matrix of size m x (m - 2 omega) plus a
// random Toeplitz perturbation on the same band, right-hand side ones plus
// noise; both perturbations scaled to relative 2-norm gamma.
Example3 make_example3(double alpha = 1.25, Index omega = 8, Index m = 200,
                       double gamma = 1e-3, std::uint64_t seed = 0);

// First-order bounds are checked as error <= kBoundSlack * kappa * eps.
inline constexpr double kBoundSlack = 1.1;

struct TrialResult {
  std::uint64_t trial = 0;
  bool solved = false;
  std::string failure;  // set when the perturbed problem could not be solved
  double r2_rel = 0.0;
  double rinf_rel = 0.0;
  double rc_rel = 0.0;
  double bound_2 = 0.0;    // cond_rel * eps
  double bound_inf = 0.0;  // kappa_inf_rel * eps (structured: kappa_s_inf_rel)
  double bound_c = 0.0;    // kappa_c * eps (structured: kappa_s_c)
  bool satisfied_2 = false;
  bool satisfied_inf = false;
  bool satisfied_c = false;
};

struct ExperimentRow {
  Selection selection;
  ConditionReport condition;
  std::optional<StructuredConditionReport> structured;
  std::vector<TrialResult> trials;
  // Worst case over solved trials.
  double worst_r2 = 0.0;
  double worst_rinf = 0.0;
  double worst_rc = 0.0;
  Index failed_trials = 0;
  bool all_satisfied = true;
};

struct ExperimentTable {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  Index trials = 0;
  std::vector<ExperimentRow> rows;
};

// Solves once, reports every condition number for each selection, then
// re-solves `trials` perturbed problems (trial t seeded with
// trial_seed(spec.seed, t)) and records the errors against first-order
// bounds. Trials run in parallel; results are stored by trial index.
ExperimentTable run_experiment(const TlsProblem& problem, const std::vector<Selection>& selections,
                               const PerturbationSpec& spec, Index trials,
                               double tol = kDefaultGenericityTol);

}  // namespace tlscond
