// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace multipolyeig::tensor {

std::size_t count(std::span<const int> dims) {
  std::size_t c = 1;
  for (int d : dims) c *= static_cast<std::size_t>(d);
  return c;
}

std::size_t flat_index(std::span<const int> dims, std::span<const int> index) {
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    flat += stride * static_cast<std::size_t>(index[k]);
    stride *= static_cast<std::size_t>(dims[k]);
  }
  return flat;
}

void unravel(std::span<const int> dims, std::size_t flat, std::span<int> index) {
  for (std::size_t k = 0; k < dims.size(); ++k) {
    index[k] = static_cast<int>(flat % dims[k]);
    flat /= dims[k];
  }
}

namespace {

template <typename Op>
std::vector<Matrix> apply_impl(const std::vector<Matrix>& data,
                               std::vector<int>& dims, int axis, const Op& op) {
  const std::size_t inner = count(std::span(dims).first(axis));
  const std::size_t outer = count(std::span(dims).subspan(axis + 1));
  const int in_len = dims[axis];
  const int out_len = static_cast<int>(op.rows());
  const auto rows = data.empty() ? 0 : data.front().rows();
  const auto cols = data.empty() ? 0 : data.front().cols();

  std::vector<Matrix> out(inner * out_len * outer, Matrix::Zero(rows, cols));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      for (int j = 0; j < out_len; ++j) {
        Matrix& target = out[i + inner * (j + out_len * o)];
        for (int k = 0; k < in_len; ++k) {
          const cplx w = op(j, k);
          if (w == cplx(0.0)) continue;
          target += w * data[i + inner * (k + in_len * o)];
        }
      }
    }
  }
  dims[axis] = out_len;
  return out;
}

}  // namespace

std::vector<Matrix> apply_along_axis(const std::vector<Matrix>& data,
                                     std::vector<int>& dims, int axis,
                                     const Matrix& op) {
  return apply_impl(data, dims, axis, op);
}

std::vector<Matrix> apply_along_axis(const std::vector<Matrix>& data,
                                     std::vector<int>& dims, int axis,
                                     const RealMatrix& op) {
  return apply_impl(data, dims, axis, op);
}

std::vector<Matrix> contract_axis(const std::vector<Matrix>& data,
                                  std::vector<int>& dims, int axis,
                                  const Vector& weights) {
  std::vector<Matrix> out =
      apply_impl(data, dims, axis, Matrix(weights.transpose()));
  dims.erase(dims.begin() + axis);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_determinant(const std::vector<std::vector<Matrix>>& blocks) {
  const int d = static_cast<int>(blocks.size());
  std::vector<int> sigma(d);
  std::iota(sigma.begin(), sigma.end(), 0);

  Eigen::Index size = 1;
  for (int i = 0; i < d; ++i) size *= blocks[i][0].rows();
  Matrix sum = Matrix::Zero(size, size);

  do {
    int inversions = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) inversions += sigma[i] > sigma[j];
    }
    Matrix term = blocks[0][sigma[0]];
    for (int i = 1; i < d; ++i) term = kron(term, blocks[i][sigma[i]]);
    if (inversions % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum;
}

}  // namespace multipolyeig::tensor
