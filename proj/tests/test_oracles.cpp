#include <doctest.h>

#include "support/oracles.hpp"
#include "tlscond/errors.hpp"
#include "tlscond/harness.hpp"
#include "tlscond/oracles.hpp"

using namespace tlscond;

TEST_CASE("zhou oracle on a consistent system") {
  Matrix A(3, 2);
  A << 1, 0, 0, 1, 0, 0;
  Vector b(3);
  b << 1, 1, 0;
  const TlsSolution sol = solve_tls(TlsProblem(A, b));
  const ZhouCondition z = zhou_oracle(sol);
  CHECK(z.m_ab == doctest::Approx(2.0));
  CHECK(z.c_ab == doctest::Approx(2.0));
}

TEST_CASE("zhou oracle agrees with the Kronecker-free formulas") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Index n = 1 + static_cast<Index>(seed % 6);
    const TlsSolution sol = solve_tls(oracle::random_problem(n + 1 + static_cast<Index>(seed % 5), n, seed));
    const Selection I = Selection::identity(n);
    const ZhouCondition z = zhou_oracle(sol);
    CHECK(oracle::rel_diff(mixed_cond(sol, I).kappa_inf_rel, z.m_ab) < 1e-12);
    CHECK(oracle::rel_diff(comp_cond(sol, I), z.c_ab) < 1e-12);
  }
}

TEST_CASE("oracles refuse large instances") {
  const TlsSolution sol = solve_tls(oracle::random_problem(10, 5, 3));
  CHECK_THROWS_AS(zhou_oracle(sol, 100), OracleRefused);
  const oracle::ToeplitzInstance inst = oracle::random_toeplitz(10, 5, 4);
  const TlsSolution tsol = solve_tls(inst.problem);
  CHECK_THROWS_AS(li_jia_oracle(tsol, inst.structure, inst.a, 100), OracleRefused);
}

TEST_CASE("li-jia oracle agrees with the structured formula") {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const oracle::ToeplitzInstance inst = oracle::random_toeplitz(8, 4, seed);
    const TlsSolution sol = solve_tls(inst.problem);
    const double ms = li_jia_oracle(sol, inst.structure, inst.a);
    const double ks = structured_mixed_cond(sol, Selection::identity(4), inst.structure, inst.a).kappa_s_inf_rel;
    CHECK(oracle::rel_diff(ms, ks) < 1e-12);
  }
}

TEST_CASE("li-jia oracle on a small example 3") {
  // Relative gap is about 1e-10 here, so the explicitly formed P of the oracle
  // loses digits. The reference value was computed with 50-digit arithmetic
  // from the same double data.
  const Example3 ex = make_example3(1.25, 8, 40, 1e-3, 0);
  const TlsSolution sol = solve_tls(ex.problem);
  const double ms = li_jia_oracle(sol, ex.structure, ex.coordinates);
  const double ks =
      structured_mixed_cond(sol, Selection::identity(ex.problem.n()), ex.structure, ex.coordinates)
          .kappa_s_inf_rel;
  CHECK(oracle::rel_diff(ks, 4272.4078951254) < 1e-8);
  CHECK(oracle::rel_diff(ms, ks) < 1e-3);
}

TEST_CASE("li-jia oracle with a full basis equals the zhou oracle") {
  const Index m = 6, n = 3;
  std::vector<SparseMatrix> basis;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) {
      SparseMatrix S(m, n);
      S.insert(i, j) = 1.0;
      basis.push_back(S);
    }
  }
  const LinearStructure full(m, n, std::move(basis));
  const TlsSolution sol = solve_tls(oracle::random_problem(m, n, 77));
  const StructuredCoordinates a = decompose(full, sol.problem.A());
  CHECK(oracle::rel_diff(li_jia_oracle(sol, full, a), zhou_oracle(sol).m_ab) < 1e-10);
}

TEST_CASE("single-entry structure equals the unstructured numbers") {
  Matrix A(3, 1);
  A << 2, 0, 0;
  Vector b(3);
  b << 1, 0.5, -0.25;
  SparseMatrix S(3, 1);
  S.insert(0, 0) = 1.0;
  const LinearStructure one(3, 1, {S});
  const TlsSolution sol = solve_tls(TlsProblem(A, b));
  const StructuredCoordinates a = decompose(one, A);
  const ZhouCondition z = zhou_oracle(sol);
  CHECK(oracle::rel_diff(structured_comp_cond(sol, Selection::identity(1), one, a), z.c_ab) < 1e-12);
  CHECK(oracle::rel_diff(li_jia_oracle(sol, one, a), z.m_ab) < 1e-12);
}

TEST_CASE("li-jia oracle refuses consistent systems") {
  const LinearStructure T = LinearStructure::toeplitz(5, 3);
  Rng rng(5);
  const Vector a = oracle::random_vector(T.q(), rng);
  const Matrix A = T.assemble(a);
  const Vector b = A * oracle::random_vector(3, rng);
  const TlsSolution sol = solve_tls(TlsProblem(A, b));
  CHECK_THROWS_AS(li_jia_oracle(sol, T, {a}), OracleRefused);
}
