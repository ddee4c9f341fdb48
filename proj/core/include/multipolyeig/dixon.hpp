// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "multipolyeig/mpoly.hpp"
#include "multipolyeig/types.hpp"

namespace multipolyeig {

/// Sizes of the tensor Dixon construction for a Pmep with x_d hidden.
///
/// The Dixon function has degree at most alpha_k = k tau_k - 1 in s_k and
/// beta_k = (d - k) tau_k - 1 in t_k (k = 1..d-1), and degree at most
/// d tau_d in x_d. The resultant has side N * prod(alpha_k + 1), with
/// prod(alpha_k + 1) = prod(beta_k + 1) = (d-1)! prod_{k<d} tau_k.
struct DixonShape {
  int d = 0;
  std::vector<int> tau;
  int N = 0;
  std::vector<int> alpha;  // index k-1 holds alpha_k
  std::vector<int> beta;
  int block_count = 0;      // prod(alpha_k + 1)
  int resultant_size = 0;   // N * block_count
  int xd_degree_bound = 0;  // d * tau_d

  static DixonShape of(const Pmep& p);
  static DixonShape of(std::span<const int> tau, int kron_size);

  /// Block index of the s multi-index (colexicographic, i_1 fastest).
  int block_index(std::span<const int> s_index) const;
};

/// Univariate matrix polynomial R(x) = sum_k C_k phi_k(x).
class ResultantPoly {
 public:
  ResultantPoly(std::vector<Matrix> coeffs, Basis basis);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int size() const { return static_cast<int>(coeffs_.front().rows()); }
  Basis basis() const { return basis_; }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }

  Matrix eval(cplx x) const;
  ResultantPoly to_basis(Basis target) const;

  /// Drops trailing coefficients with norm <= tol * max coefficient norm
  /// (never below degree 0).
  ResultantPoly trimmed(double tol) const;

 private:
  std::vector<Matrix> coeffs_;
  Basis basis_;
};

/// Coefficients of a function of (s_1..s_{d-1}, t_1..t_{d-1}) with N x N
/// matrix values. Axes are ordered s_1..s_{d-1}, t_1..t_{d-1}; storage is
/// colexicographic. `basis` is the basis along every s and t axis.
struct DixonTensor {
  std::vector<int> dims;
  std::vector<Matrix> blocks;
  Basis basis = Basis::Monomial;

  int pairs() const { return static_cast<int>(dims.size()) / 2; }
};

/// Numerator of the Dixon function: the d x d Kronecker block determinant
/// whose (i, j) block is P_i at (t_1..t_{j-1}, s_j..s_{d-1}, xd), expanded in
/// the order P_1 (x) ... (x) P_d.
Matrix dixon_numerator_eval(const Pmep& p, std::span<const cplx> s,
                            std::span<const cplx> t, cplx xd);

/// Monomial (s, t) coefficients of the numerator at fixed xd. Axis lengths
/// are k tau_k + 1 for s_k and (d - k) tau_k + 1 for t_k; they are obtained
/// by sampling on roots of unity.
DixonTensor numerator_coefficients(const Pmep& p, cplx xd);

/// Divides by prod (s_k - t_k), one pair at a time, using the exact
/// coefficient recurrence g_{a,b} = h_{a-1,b} - h_{a,b-1}. Throws
/// InternalInconsistency if multiplying back misses by more than 1e-8
/// relative. Monomial coefficients in and out.
DixonTensor divide_out(const DixonTensor& numerator);

/// Multiplies by prod (s_k - t_k); the inverse of divide_out.
DixonTensor multiply_back(const DixonTensor& h);

/// Changes the basis along every s and t axis.
DixonTensor convert_basis(const DixonTensor& tensor, Basis target);

/// Dixon coefficient tensor at fixed xd in the basis of p.
DixonTensor dixon_coefficients(const Pmep& p, cplx xd);

/// Block rows are indexed by t multi-indices and block columns by s
/// multi-indices, both colexicographic with index 1 fastest; blocks are N x N.
Matrix unfold(const DixonTensor& tensor, const DixonShape& shape);

/// Inverse of unfold.
DixonTensor refold(const Matrix& r, const DixonShape& shape,
                   Basis basis = Basis::Monomial);

struct ResultantOptions {
  double trim_tol = 1e-10;
  bool parallel = true;
};

/// Hidden variable tensor Dixon resultant R(x_d), in the basis of p.
/// Samples the Dixon matrix at d tau_d + 1 Chebyshev points in x_d and
/// interpolates entrywise.
ResultantPoly build_resultant(const Pmep& p, const ResultantOptions& options = {});

}  // namespace multipolyeig
