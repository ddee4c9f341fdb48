// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "multipolyeig/tensor.hpp"
#include "systems.hpp"

namespace mpe = multipolyeig;
using mpe::Matrix;
using mpe::testing::random_matrix;

TEST(Tensor, FlatIndexIsColexicographic) {
  const std::vector<int> dims{3, 4, 2};
  EXPECT_EQ(mpe::tensor::count(dims), 24u);
  const std::vector<int> idx{2, 1, 1};
  EXPECT_EQ(mpe::tensor::flat_index(dims, idx), 2u + 3u * 1u + 12u * 1u);
  std::vector<int> back(3);
  for (std::size_t f = 0; f < 24; ++f) {
    mpe::tensor::unravel(dims, f, back);
    EXPECT_EQ(mpe::tensor::flat_index(dims, back), f);
  }
}

TEST(Tensor, KronMatchesDefinition) {
  std::mt19937_64 rng(3);
  const Matrix a = random_matrix(2, 3, rng);
  const Matrix b = random_matrix(3, 2, rng);
  const Matrix k = mpe::tensor::kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 2; ++c) EXPECT_EQ(k(i * 3 + r, j * 2 + c), a(i, j) * b(r, c));
}

TEST(Tensor, KronDeterminantTwoByTwo) {
  std::mt19937_64 rng(5);
  std::vector<std::vector<Matrix>> b(2, std::vector<Matrix>(2));
  for (auto& row : b)
    for (auto& m : row) m = random_matrix(2, rng);
  const Matrix expected = mpe::tensor::kron(b[0][0], b[1][1]) - mpe::tensor::kron(b[0][1], b[1][0]);
  EXPECT_LT((mpe::tensor::kron_determinant(b) - expected).norm(), 1e-14);
}

TEST(Tensor, KronDeterminantThreeByThreeMatchesExplicitLeibniz) {
  std::mt19937_64 rng(7);
  std::vector<std::vector<Matrix>> b(3, std::vector<Matrix>(3));
  const int sizes[3] = {2, 1, 2};
  for (int i = 0; i < 3; ++i)
    for (auto& m : b[i]) m = random_matrix(sizes[i], rng);
  using mpe::tensor::kron;
  auto k3 = [&](int a, int c, int e) { return kron(kron(b[0][a], b[1][c]), b[2][e]); };
  const Matrix expected = k3(0, 1, 2) - k3(0, 2, 1) - k3(1, 0, 2) + k3(1, 2, 0) + k3(2, 0, 1) -
                          k3(2, 1, 0);
  EXPECT_LT((mpe::tensor::kron_determinant(b) - expected).norm(), 1e-13);
}

TEST(Tensor, ApplyAlongAxisActsOnOneAxis) {
  std::mt19937_64 rng(11);
  std::vector<int> dims{2, 3};
  std::vector<Matrix> data(6);
  for (auto& m : data) m = random_matrix(1, rng);
  mpe::RealMatrix op(2, 3);
  op << 1, 0, 2, 0, -1, 1;
  std::vector<int> out_dims = dims;
  const auto out = mpe::tensor::apply_along_axis(data, out_dims, 1, op);
  ASSERT_EQ(out_dims, (std::vector<int>{2, 2}));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Matrix expect = Matrix::Zero(1, 1);
      for (int k = 0; k < 3; ++k) expect += op(j, k) * data[i + 2 * k];
      EXPECT_LT((out[i + 2 * j] - expect).norm(), 1e-14);
    }
  }
  std::vector<int> cdims = dims;
  mpe::Vector w(2);
  w << 2.0, -1.0;
  const auto contracted = mpe::tensor::contract_axis(data, cdims, 0, w);
  ASSERT_EQ(cdims, (std::vector<int>{3}));
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT((contracted[k] - (2.0 * data[2 * k] - data[2 * k + 1])).norm(), 1e-14);
  }
}
