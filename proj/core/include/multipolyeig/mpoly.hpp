// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "multipolyeig/types.hpp"

namespace multipolyeig {

/// A multivariate matrix polynomial in maximal-degree form
///
///   P(x_1, ..., x_d) = sum_{i_1 <= tau_1} ... sum_{i_d <= tau_d}
///                      C_{i_1 ... i_d} phi_{i_1}(x_1) ... phi_{i_d}(x_d)
///
/// with n x n complex coefficients C and phi the monomial or Chebyshev basis.
/// Coefficients are stored colexicographically (i_1 fastest).
///
/// Values are immutable once constructed. Inputs whose solutions lie far
/// outside the unit box should be pre-scaled by the caller: change of
/// variables and resultant interpolation sample on [-1, 1].
class MatrixPoly {
 public:
  MatrixPoly(int n, std::vector<int> tau, std::vector<Matrix> coeffs,
             Basis basis = Basis::Monomial);

  static MatrixPoly zero(int n, std::vector<int> tau,
                         Basis basis = Basis::Monomial);

  /// Builds from sparse (multi-index, coefficient) terms; repeated indices add.
  static MatrixPoly from_terms(
      int n, std::vector<int> tau,
      const std::vector<std::pair<std::vector<int>, Matrix>>& terms,
      Basis basis = Basis::Monomial);

  int vars() const { return static_cast<int>(tau_.size()); }
  int size() const { return n_; }
  const std::vector<int>& degrees() const { return tau_; }
  Basis basis() const { return basis_; }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }
  const Matrix& coeff(std::span<const int> index) const;

  /// Axis lengths tau_k + 1.
  std::vector<int> dims() const;

  /// Largest spectral norm over coefficient matrices.
  double max_coeff_norm() const;

 private:
  int n_;
  std::vector<int> tau_;
  std::vector<Matrix> coeffs_;
  Basis basis_;
};

/// A polynomial multiparameter eigenvalue problem: d matrix polynomials in d
/// variables sharing one degree vector and one basis. Matrix sizes may differ.
class Pmep {
 public:
  explicit Pmep(std::vector<MatrixPoly> polys);

  int vars() const { return static_cast<int>(polys_.size()); }
  const std::vector<int>& degrees() const { return polys_.front().degrees(); }
  Basis basis() const { return polys_.front().basis(); }
  const std::vector<MatrixPoly>& polys() const { return polys_; }
  const MatrixPoly& operator[](int i) const { return polys_[i]; }

  std::vector<int> sizes() const;
  /// N = prod n_i.
  int kron_size() const { return kron_size_; }

 private:
  std::vector<MatrixPoly> polys_;
  int kron_size_ = 1;
};

Matrix eval(const MatrixPoly& p, std::span<const cplx> x);

/// Substitutes x_d = xd, leaving a polynomial in x_1..x_{d-1}.
MatrixPoly hide_last(const MatrixPoly& p, cplx xd);

/// Substitutes x_var = value (0-based var), removing that variable.
MatrixPoly substitute(const MatrixPoly& p, int var, cplx value);

MatrixPoly convert_basis(const MatrixPoly& p, Basis target);
Pmep convert_basis(const Pmep& p, Basis target);

/// Partial derivative with respect to x_var (0-based); degrees are kept.
MatrixPoly derivative(const MatrixPoly& p, int var);

/// Largest i_1 + ... + i_d over nonzero coefficients (0 for the zero
/// polynomial).
int total_degree(const MatrixPoly& p);

/// P'_i(x') = P_i(Q^T x') for a real orthogonal Q. Every output degree bound
/// is the largest total degree D of the input system, which bounds the
/// per-variable degree after any rotation. Coefficients are obtained by
/// sampling on a tensor grid of (D+1)^d Chebyshev points and interpolating.
Pmep change_of_variables(const Pmep& p, const RealMatrix& q);

/// New variable k is old variable perm[k] (0-based), so that
/// P'(y) = P(x) whenever x[perm[k]] = y[k].
Pmep permute_variables(const Pmep& p, std::span<const int> perm);
MatrixPoly permute_variables(const MatrixPoly& p, std::span<const int> perm);

std::vector<int> inverse_permutation(std::span<const int> perm);

}  // namespace multipolyeig
