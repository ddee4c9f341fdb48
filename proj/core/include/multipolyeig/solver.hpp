// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multipolyeig/extract.hpp"
#include "multipolyeig/mpoly.hpp"
#include "multipolyeig/types.hpp"

namespace multipolyeig {

struct SolverConfig {
  std::optional<Basis> basis;        // working basis; default is the input basis
  bool rotate = true;
  std::uint64_t seed = 1;
  std::optional<int> hide_variable;  // 0-based; empty means automatic
  ExtractionConfig extraction;
  double rank_tol = 1e-10;
  int probes = 3;
  double trim_tol = 1e-10;
  bool reduce_linear = true;
  bool parallel = true;

  void validate(int d) const;
};

struct SolveDiagnostics {
  int resultant_size = 0;
  int normal_rank = 0;
  bool projected = false;
  int dropped_eigenpairs = 0;  // infinite eigenvalues plus extraction failures
  int infinite_eigenvalues = 0;
  int extraction_failures = 0;
  std::uint64_t rotation_seed = 0;
  bool rotated = false;
  bool unrotated_fallback = false;  // an unrotated pass was merged in
  int hidden_variable = 0;  // 0-based, in the coordinates of the solved system
  bool reduced = false;
  int candidates = 0;
  std::vector<std::string> warnings;
};

struct SolveResult {
  SolutionSet solutions;
  SolveDiagnostics diagnostics;
};

struct HiddenVariablePlan {
  int hidden = 0;
  std::vector<int> order;  // new variable k is old variable order[k]; hidden last
  bool linear = false;
  std::vector<int> reduce;  // old indices lost by the eigenvectors
};

/// Prefers a variable of degree 1 as the hidden one; ties go to the
/// smallest resultant, then the smallest degree in the hidden variable,
/// then the highest index. The other variables keep their order.
HiddenVariablePlan choose_hidden_variable(const Pmep& p);

/// Plan for a caller-chosen hidden variable (0-based).
HiddenVariablePlan plan_for_hidden(const Pmep& p, int hidden);

/// Haar-distributed real orthogonal d x d matrix, deterministic in seed.
RealMatrix random_orthogonal(int d, std::uint64_t seed);

SolveResult solve(const Pmep& p, const SolverConfig& cfg = {});

}  // namespace multipolyeig
