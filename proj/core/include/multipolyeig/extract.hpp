// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "multipolyeig/dixon.hpp"
#include "multipolyeig/mpoly.hpp"
#include "multipolyeig/types.hpp"

namespace multipolyeig {

struct Solution {
  std::vector<cplx> x;
  double residual = 0.0;
  bool rotated = false;
  bool projected = false;
  bool reduced = false;
};

/// Validated solutions sorted by residual, ascending.
using SolutionSet = std::vector<Solution>;

struct ExtractionConfig {
  double nullspace_tol = 1e-13;
  double keep_fraction = 0.25;
  double residual_tol = 1e-8;

  /// Throws InputError unless all fields are positive and keep_fraction <= 1.
  void validate() const;
};

/// usable[j] is true when eigenvector entry j may enter a ratio.
using EntryMask = std::vector<bool>;

/// Coordinates x_1..x_{d-1} that the eigenvector determines; x_k is lost
/// when alpha_k = 0 (only one block along axis k).
std::vector<bool> recoverable_coordinates(const DixonShape& shape);

/// Estimates x_k as the mean of V[block e_k + b] / V[block b] over blocks b
/// with i_k = 0, using the usable entry pairs whose divisor is among the
/// largest keep_fraction in magnitude. The ratio phi_1(x)/phi_0(x) equals x
/// in both bases. Entry k is empty when x_k is unrecoverable or no usable
/// pair exists.
std::vector<std::optional<cplx>> vandermonde_ratios(
    const Vector& v, const DixonShape& shape, const EntryMask* mask = nullptr,
    double keep_fraction = 0.25);

/// Null space of R at a random point, taken from right singular vectors with
/// sigma <= rank_tol * sigma_max. Entry j is usable when the null basis row
/// j has norm <= nullspace_tol. Every entry is usable when the null space is
/// trivial.
EntryMask generic_nullspace_mask(const ResultantPoly& r, const ExtractionConfig& cfg,
                                 double rank_tol = 1e-10, std::uint64_t seed = 0);

/// max_i sigma_min(P_i(x)) / scale_i, where scale_i is the largest spectral
/// norm of a coefficient of P_i. A term with scale 0 contributes 0.
class ResidualEvaluator {
 public:
  explicit ResidualEvaluator(const Pmep& p);
  double operator()(std::span<const cplx> x) const;

 private:
  const Pmep* p_;
  std::vector<double> scales_;
};

double residual(const Pmep& p, std::span<const cplx> x);

/// Keeps residual <= cfg.residual_tol, sorts by residual and merges points
/// within 1e-8 * max(1, |x|_inf) in the infinity norm, keeping the smaller
/// residual.
SolutionSet filter_solutions(std::vector<Solution> candidates,
                             const ExtractionConfig& cfg);

}  // namespace multipolyeig
