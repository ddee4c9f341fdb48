// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "multipolyeig/extract.hpp"
#include "multipolyeig/mpoly.hpp"
#include "multipolyeig/types.hpp"

namespace multipolyeig {

/// W_i(x) v_i = (V_i0 - sum_j x_j V_ij) v_i = 0, i = 1..d.
class LinearMep {
 public:
  /// v0[i] = V_{i0}; v[i][j] = V_{i,j+1}.
  LinearMep(std::vector<Matrix> v0, std::vector<std::vector<Matrix>> v);

  /// Reads a Pmep of total degree at most 1 in every equation. Throws
  /// InputError on cross terms.
  static LinearMep from_pmep(const Pmep& p);
  /// Degree (1, ..., 1) monomial Pmep.
  Pmep to_pmep() const;

  int vars() const { return static_cast<int>(v0_.size()); }
  std::vector<int> sizes() const;
  int kron_size() const;
  const Matrix& v0(int i) const { return v0_[i]; }
  const Matrix& v(int i, int j) const { return v_[i][j]; }

 private:
  std::vector<Matrix> v0_;
  std::vector<std::vector<Matrix>> v_;
};

/// Operator determinant: Delta_0 for k = 0, otherwise Delta_k with column k
/// of [V_ij] replaced by V_i0. Leibniz expansion with Kronecker products
/// taken from the first row to the last.
Matrix delta(const LinearMep& mep, int k);

/// Generalized Rayleigh quotient (w^* A z) / (w^* B z) with w = B z.
cplx rayleigh_quotient(const Matrix& a, const Matrix& b, const Vector& z);

/// Solves (Delta_d - x_d Delta_0) z = 0 and recovers the other coordinates
/// by Rayleigh quotients against Delta_i. Sorted by residual, unfiltered.
/// Throws SingularMepError when sigma_min / sigma_max of Delta_0 <= 1e-12.
SolutionSet solve_linear_mep(const LinearMep& mep);

/// Best rank-one factorization z ~ v_1 (x) ... (x) v_d by repeated dominant
/// singular pairs; every factor has unit norm.
std::vector<Vector> kronecker_factors(const Vector& z, const std::vector<int>& sizes);

}  // namespace multipolyeig
