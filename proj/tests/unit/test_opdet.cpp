// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "multipolyeig/opdet.hpp"
#include "systems.hpp"

namespace mpe = multipolyeig;
using mpe::cplx;
using mpe::LinearMep;
using mpe::Matrix;
using mpe::Vector;
using namespace mpe::testing;

namespace {

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

LinearMep random_mep(const std::vector<int>& sizes, std::mt19937_64& rng) {
  const int d = static_cast<int>(sizes.size());
  std::vector<Matrix> v0;
  std::vector<std::vector<Matrix>> v(d);
  for (int i = 0; i < d; ++i) {
    v0.push_back(random_matrix(sizes[i], rng));
    for (int j = 0; j < d; ++j) v[i].push_back(random_matrix(sizes[i], rng));
  }
  return LinearMep(v0, v);
}

std::vector<cplx> eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m);
  return {es.eigenvalues().begin(), es.eigenvalues().end()};
}

double match_scalars(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<std::vector<cplx>> x, y;
  for (cplx v : a) x.push_back({v});
  for (cplx v : b) y.push_back({v});
  return match_distance(x, y);
}

}  // namespace

TEST(Delta, OneParameter) {
  std::mt19937_64 rng(1);
  const LinearMep mep = random_mep({3}, rng);
  EXPECT_EQ(mpe::delta(mep, 0), mep.v(0, 0));
  EXPECT_EQ(mpe::delta(mep, 1), mep.v0(0));
}

TEST(Delta, TwoParameters) {
  std::mt19937_64 rng(2);
  const LinearMep mep = random_mep({2, 3}, rng);
  const Matrix d0 = kron2(mep.v(0, 0), mep.v(1, 1)) - kron2(mep.v(0, 1), mep.v(1, 0));
  const Matrix d1 = kron2(mep.v0(0), mep.v(1, 1)) - kron2(mep.v(0, 1), mep.v0(1));
  const Matrix d2 = kron2(mep.v(0, 0), mep.v0(1)) - kron2(mep.v0(0), mep.v(1, 0));
  EXPECT_LT((mpe::delta(mep, 0) - d0).norm(), 1e-13);
  EXPECT_LT((mpe::delta(mep, 1) - d1).norm(), 1e-13);
  EXPECT_LT((mpe::delta(mep, 2) - d2).norm(), 1e-13);
}

TEST(Delta, ThreeParametersNaiveLeibniz) {
  std::mt19937_64 rng(3);
  const LinearMep mep = random_mep({2, 2, 2}, rng);
  for (int k = 0; k <= 3; ++k) {
    auto entry = [&](int i, int j) { return j + 1 == k ? mep.v0(i) : mep.v(i, j); };
    std::array<int, 3> sigma{0, 1, 2};
    Matrix expect = Matrix::Zero(8, 8);
    do {
      int inversions = 0;
      for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) inversions += sigma[a] > sigma[b];
      }
      const Matrix term = kron2(kron2(entry(0, sigma[0]), entry(1, sigma[1])), entry(2, sigma[2]));
      expect += (inversions % 2 ? -1.0 : 1.0) * term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    EXPECT_LT((mpe::delta(mep, k) - expect).norm(), 1e-12 * expect.norm()) << "k = " << k;
  }
}

TEST(RayleighQuotient, RecoversEigenvalue) {
  std::mt19937_64 rng(4);
  const Matrix b = random_matrix(4, rng);
  const Vector z = random_matrix(4, 1, rng).col(0);
  const cplx lambda(0.3, -2.0);
  // A z = lambda B z by construction.
  const Matrix a = lambda * b + random_matrix(4, rng) * (Matrix::Identity(4, 4) -
                                                          z * z.adjoint() / z.squaredNorm());
  EXPECT_LT(std::abs(mpe::rayleigh_quotient(a, b, z) - lambda), 1e-12);
}

TEST(SolveLinearMep, DiagonalIsCramer) {
  std::mt19937_64 rng(5);
  std::vector<Matrix> v0(2);
  std::vector<std::vector<Matrix>> v(2, std::vector<Matrix>(2));
  for (int i = 0; i < 2; ++i) {
    v0[i] = random_matrix(2, 1, rng).col(0).asDiagonal();
    for (int j = 0; j < 2; ++j) v[i][j] = random_matrix(2, 1, rng).col(0).asDiagonal();
  }
  const LinearMep mep(v0, v);
  std::vector<std::vector<cplx>> expect;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const cplx a11 = v[0][0](a, a), a12 = v[0][1](a, a), a21 = v[1][0](b, b),
                 a22 = v[1][1](b, b);
      const cplx b1 = v0[0](a, a), b2 = v0[1](b, b);
      const cplx det = a11 * a22 - a12 * a21;
      expect.push_back({(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det});
    }
  }
  std::vector<std::vector<cplx>> got;
  for (const auto& s : mpe::solve_linear_mep(mep)) got.push_back(s.x);
  EXPECT_LT(match_distance(got, expect), 1e-10);
}

TEST(SolveLinearMep, OneParameterIsGep) {
  std::mt19937_64 rng(6);
  const LinearMep mep = random_mep({4}, rng);
  std::vector<cplx> got;
  for (const auto& s : mpe::solve_linear_mep(mep)) got.push_back(s.x[0]);
  EXPECT_LT(match_scalars(got, eigenvalues(mep.v(0, 0).inverse() * mep.v0(0))), 1e-9);
}

TEST(SolveLinearMep, RandomTwoParameterResiduals) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const LinearMep mep = random_mep({2, 2}, rng);
    const mpe::SolutionSet sols = mpe::solve_linear_mep(mep);
    ASSERT_EQ(sols.size(), 4u);
    const mpe::Pmep p = mep.to_pmep();
    for (const auto& s : sols) {
      EXPECT_LE(mpe::residual(p, s.x), 1e-10);
      EXPECT_LE(s.residual, 1e-10);
    }
    EXPECT_TRUE(std::is_sorted(sols.begin(), sols.end(),
                               [](const auto& a, const auto& b) { return a.residual < b.residual; }));
  }
}

TEST(SolveLinearMep, FirstCoordinatesMatchTheirGep) {
  std::mt19937_64 rng(8);
  const LinearMep mep = random_mep({2, 3}, rng);
  std::vector<cplx> x1;
  for (const auto& s : mpe::solve_linear_mep(mep)) x1.push_back(s.x[0]);
  const auto expect = eigenvalues(mpe::delta(mep, 0).inverse() * mpe::delta(mep, 1));
  EXPECT_LT(match_scalars(x1, expect), 1e-9);
}

TEST(SolveLinearMep, SingularDeltaZeroThrows) {
  std::mt19937_64 rng(9);
  const Matrix zero = Matrix::Zero(2, 2);
  const LinearMep mep({random_matrix(2, rng), random_matrix(2, rng)},
                      {{zero, random_matrix(2, rng)}, {zero, random_matrix(2, rng)}});
  EXPECT_THROW(mpe::solve_linear_mep(mep), mpe::SingularMepError);
}

TEST(LinearMep, PmepRoundTripAndCrossTerms) {
  std::mt19937_64 rng(10);
  const LinearMep mep = random_mep({2, 3}, rng);
  const LinearMep back = LinearMep::from_pmep(mep.to_pmep());
  for (int i = 0; i < 2; ++i) {
    EXPECT_LT((back.v0(i) - mep.v0(i)).norm(), 1e-15);
    for (int j = 0; j < 2; ++j) EXPECT_LT((back.v(i, j) - mep.v(i, j)).norm(), 1e-15);
  }
  EXPECT_EQ(mep.kron_size(), 6);
  const mpe::Pmep cross({mpe::MatrixPoly::from_terms(1, {1, 1}, {{{1, 1}, Matrix::Ones(1, 1)}}),
                         mpe::MatrixPoly::from_terms(1, {1, 1}, {{{1, 0}, Matrix::Ones(1, 1)}})});
  EXPECT_THROW(LinearMep::from_pmep(cross), mpe::InputError);
  EXPECT_THROW(LinearMep::from_pmep(random_pmep({2, 2}, {2, 1}, rng)), mpe::InputError);
}

TEST(KroneckerFactors, RecoverRankOneTensor) {
  std::mt19937_64 rng(11);
  const Vector a = random_matrix(2, 1, rng).col(0), b = random_matrix(3, 1, rng).col(0),
               c = random_matrix(2, 1, rng).col(0);
  const Vector z = kron2(kron2(a, b), c);
  const auto f = mpe::kronecker_factors(z, {2, 3, 2});
  ASSERT_EQ(f.size(), 3u);
  for (const Vector& v : f) EXPECT_NEAR(v.norm(), 1.0, 1e-14);
  const Vector rebuilt = kron2(kron2(f[0], f[1]), f[2]);
  EXPECT_NEAR(std::abs(rebuilt.dot(z)) / z.norm(), 1.0, 1e-13);
  EXPECT_NEAR(std::abs(f[0].dot(a)) / a.norm(), 1.0, 1e-13);
}
