// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "multipolyeig/types.hpp"

// Dense tensors whose entries are matrices. Entries are stored
// colexicographically: the first axis varies fastest. The same order is used
// by the coefficient arrays of MatrixPoly, the Dixon coefficient tensor, the
// resultant unfolding, and the on-disk format.

namespace multipolyeig::tensor {

std::size_t count(std::span<const int> dims);

std::size_t flat_index(std::span<const int> dims, std::span<const int> index);

/// Writes the multi-index of `flat` into `index` (same length as dims).
void unravel(std::span<const int> dims, std::size_t flat, std::span<int> index);

/// Applies `op` (out_len x dims[axis]) along one axis. Entry j of the output
/// fibre is sum_i op(j, i) * input fibre entry i. `dims[axis]` is updated.
std::vector<Matrix> apply_along_axis(const std::vector<Matrix>& data,
                                     std::vector<int>& dims, int axis,
                                     const Matrix& op);

std::vector<Matrix> apply_along_axis(const std::vector<Matrix>& data,
                                     std::vector<int>& dims, int axis,
                                     const RealMatrix& op);

/// Contracts `axis` against `weights`, removing it from dims.
std::vector<Matrix> contract_axis(const std::vector<Matrix>& data,
                                  std::vector<int>& dims, int axis,
                                  const Vector& weights);

/// Kronecker product A (x) B.
Matrix kron(const Matrix& a, const Matrix& b);

/// Block determinant with products replaced by Kronecker products, expanded
/// with the Leibniz formula. blocks[i][j] is the (i, j) block; each term is
/// multiplied from the first row to the last:
///   sum_sigma sgn(sigma) B[0][sigma(0)] (x) ... (x) B[d-1][sigma(d-1)].
Matrix kron_determinant(const std::vector<std::vector<Matrix>>& blocks);

}  // namespace multipolyeig::tensor
