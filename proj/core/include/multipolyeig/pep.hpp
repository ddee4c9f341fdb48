// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "multipolyeig/dixon.hpp"
#include "multipolyeig/types.hpp"

namespace multipolyeig {

/// The pencil A + lambda B.
struct MatrixPencil {
  Matrix A;
  Matrix B;

  int size() const { return static_cast<int>(A.rows()); }
};

/// Companion form for a monomial-basis R of degree m >= 1. Eigenvectors have
/// block structure [lambda^{m-1} v; ...; lambda v; v].
MatrixPencil companion_linearize(const ResultantPoly& r);

/// Colleague form for a Chebyshev-basis R of degree m >= 1. Eigenvectors have
/// block structure [T_{m-1}(lambda) v; ...; T_0(lambda) v].
MatrixPencil colleague_linearize(const ResultantPoly& r);

/// Companion or colleague form according to the basis of r.
MatrixPencil linearize(const ResultantPoly& r);

/// Picks the block of largest norm from a linearization eigenvector.
Vector recover_eigenvector(const Vector& z, int block_size);

struct GepEigenpair {
  cplx lambda;
  bool infinite = false;
  Vector v;  // unit norm; empty for infinite eigenvalues
};

/// All eigenvalues of A + lambda B via complex QZ. Eigenvalues whose beta
/// vanishes, or exceeds 1e12 in scaled magnitude, are flagged infinite.
std::vector<GepEigenpair> solve_gep(const MatrixPencil& p);

struct PepEigenpair {
  cplx lambda;
  Vector v;
};

struct PepResult {
  std::vector<PepEigenpair> finite;
  int infinite = 0;
};

/// Linearize, solve, drop infinite eigenvalues, and recover eigenvectors of R.
PepResult solve_pep(const ResultantPoly& r);

struct RankProfile {
  int normal_rank = 0;
  int dim = 0;
  std::vector<cplx> sample_points;
  std::vector<Eigen::VectorXd> singular_values;
  double rank_tol = 1e-10;

  bool singular() const { return normal_rank < dim; }
};

/// Numerical rank of R at `probes` random points on the unit circle; a
/// singular value counts when it exceeds rank_tol times the largest one.
RankProfile normal_rank(const ResultantPoly& r, int probes = 3,
                        double rank_tol = 1e-10, std::uint64_t seed = 0);

struct Projection {
  ResultantPoly reduced;
  Matrix U;  // r x dim
  Matrix V;  // dim x r, orthonormal columns
};

/// U R V with random U, V of orthonormal rows/columns and r = normal rank.
/// Redraws up to three times until the projection keeps normal rank r.
Projection project_singular(const ResultantPoly& r, const RankProfile& rp,
                            std::uint64_t seed = 0);

}  // namespace multipolyeig
