#pragma once

// Explicit-matrix formulas from the earlier literature, kept as independent
// cross-checks of the Kronecker-free evaluations. They build dense matrices
// with O(n * mn) entries and refuse anything above a size cap.

#include "tlscond/structured.hpp"

namespace tlscond {

inline constexpr Index kDefaultOracleCap = 1'000'000;

struct ZhouCondition {
  double m_ab = 0.0;  // relative mixed
  double c_ab = 0.0;  // relative componentwise
};

// m(A, b) and c(A, b) through |M + N| [vec|A|; |b|] with
//   M = [P^{-1} (x) b^T - x^T (x) (P^{-1} A^T) - P^{-1} (x) (Ax)^T,  P^{-1} A^T]
//   N = 2 sigma_{n+1} P^{-1} x (v_{n+1}^T (x) u_{n+1}^T)
// where P^{-1} comes from a dense LU of P, not from the SVD factors.
// Refuses when n * (mn + m) exceeds `cap`.
ZhouCondition zhou_oracle(const TlsSolution& sol, Index cap = kDefaultOracleCap);

// Structured mixed condition number m_s(A, b) = || |K M_{A,b}| [|a|; |b|] ||_inf / ||x||_inf
// with
//   K = P^{-1} (2 A^T r r^T / ||r||^2 G(x) - A^T G(x) + [I_n (x) r^T, 0]),
//   G(x) = [x^T, -1] (x) I_m.
// Refuses consistent systems (r = 0) and instances above `cap`.
double li_jia_oracle(const TlsSolution& sol, const LinearStructure& structure,
                     const StructuredCoordinates& a, Index cap = kDefaultOracleCap);

}  // namespace tlscond
