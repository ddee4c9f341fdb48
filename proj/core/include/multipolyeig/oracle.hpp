// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "multipolyeig/extract.hpp"
#include "multipolyeig/mpoly.hpp"

namespace multipolyeig {

struct OracleConfig {
  int starts = 500;
  std::uint64_t seed = 1;
  double radius = 2.0;  // starts are uniform in the complex box |re|, |im| <= radius
  int max_iterations = 80;
  double residual_tol = 1e-8;
  bool parallel = true;
};

struct OracleResult {
  SolutionSet solutions;
  int converged = 0;
  int dropped = 0;  // starts that diverged or stalled above residual_tol
};

/// Multistart Newton on F_i(x) = det P_i(x) / scale_i^{n_i}. The Jacobian
/// comes from Jacobi's formula d det P = trace(adj(P) dP) with the adjugate
/// formed from an SVD, so it stays finite at singular P. Independent of the
/// resultant pipeline.
OracleResult newton_oracle(const Pmep& p, const OracleConfig& cfg = {});

/// det P and adj(P) from P = U S V^*.
struct DetAdj {
  cplx det;
  Matrix adj;
};
DetAdj determinant_and_adjugate(const Matrix& m);

}  // namespace multipolyeig
