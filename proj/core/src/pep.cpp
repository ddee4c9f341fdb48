// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/pep.hpp"

#include <cmath>
#include <numbers>
#include <random>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace multipolyeig {

namespace {

void check_linearizable(const ResultantPoly& r) {
  if (r.degree() < 1) {
    throw InputError("constant matrix polynomial has no eigenvalues");
  }
}

Matrix gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = cplx(normal(rng), normal(rng));
  }
  return g;
}

Matrix orthonormal_columns(int rows, int cols, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rows, cols, rng));
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

}  // namespace

MatrixPencil companion_linearize(const ResultantPoly& r) {
  if (r.basis() != Basis::Monomial) {
    throw InputError("companion linearization needs the monomial basis");
  }
  check_linearizable(r);
  const int m = r.degree();
  const int n = r.size();
  const auto& c = r.coeffs();
  MatrixPencil p{Matrix::Zero(m * n, m * n), Matrix::Zero(m * n, m * n)};
  for (int j = 0; j < m; ++j) p.A.block(0, j * n, n, n) = c[m - 1 - j];
  p.B.block(0, 0, n, n) = c[m];
  for (int j = 1; j < m; ++j) {
    p.A.block(j * n, (j - 1) * n, n, n) = -Matrix::Identity(n, n);
    p.B.block(j * n, j * n, n, n) = Matrix::Identity(n, n);
  }
  return p;
}

MatrixPencil colleague_linearize(const ResultantPoly& r) {
  if (r.basis() != Basis::Chebyshev) {
    throw InputError("colleague linearization needs the Chebyshev basis");
  }
  check_linearizable(r);
  const int m = r.degree();
  const int n = r.size();
  const auto& c = r.coeffs();
  if (m == 1) return {c[0], c[1]};

  const Matrix id = Matrix::Identity(n, n);
  MatrixPencil p{Matrix::Zero(m * n, m * n), Matrix::Zero(m * n, m * n)};
  // T_m = 2 x T_{m-1} - T_{m-2} folds the top coefficient into the first row.
  for (int j = 0; j < m; ++j) p.A.block(0, j * n, n, n) = c[m - 1 - j];
  p.A.block(0, n, n, n) -= c[m];
  p.B.block(0, 0, n, n) = 2.0 * c[m];
  for (int row = 1; row < m - 1; ++row) {
    p.A.block(row * n, (row - 1) * n, n, n) = id;
    p.A.block(row * n, (row + 1) * n, n, n) = id;
    p.B.block(row * n, row * n, n, n) = -2.0 * id;
  }
  p.A.block((m - 1) * n, (m - 2) * n, n, n) = id;
  p.B.block((m - 1) * n, (m - 1) * n, n, n) = -id;
  return p;
}

MatrixPencil linearize(const ResultantPoly& r) {
  return r.basis() == Basis::Monomial ? companion_linearize(r) : colleague_linearize(r);
}

Vector recover_eigenvector(const Vector& z, int block_size) {
  const int blocks = static_cast<int>(z.size()) / block_size;
  int best = 0;
  double best_norm = -1.0;
  for (int j = 0; j < blocks; ++j) {
    const double nrm = z.segment(j * block_size, block_size).norm();
    if (nrm > best_norm) {
      best_norm = nrm;
      best = j;
    }
  }
  Vector v = z.segment(best * block_size, block_size);
  if (best_norm > 0.0) v /= best_norm;
  return v;
}

std::vector<GepEigenpair> solve_gep(const MatrixPencil& p) {
  const auto n = p.A.rows();
  if (p.A.cols() != n || p.B.rows() != n || p.B.cols() != n) {
    throw InputError("pencil matrices must be square and of equal size");
  }
  if (n == 0) return {};

  Matrix a = p.A;
  Matrix b = -p.B;
  Vector alpha(n), beta(n);
  Matrix vr(n, n);
  cplx dummy;
  const lapack_int ni = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'V', ni, a.data(), ni,
                                        b.data(), ni, alpha.data(), beta.data(),
                                        &dummy, 1, vr.data(), ni);
  if (info != 0) {
    throw Error("QZ iteration failed (zggev info " + std::to_string(info) + ")");
  }

  const double norm_a = p.A.norm();
  const double norm_b = p.B.norm();
  std::vector<GepEigenpair> out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    GepEigenpair& e = out[j];
    const double abs_alpha = std::abs(alpha(j));
    const double abs_beta = std::abs(beta(j));
    e.infinite = norm_b == 0.0 || abs_beta == 0.0 ||
                 abs_alpha * norm_b > 1e12 * abs_beta * norm_a;
    if (e.infinite) {
      e.lambda = cplx(INFINITY, 0.0);
      continue;
    }
    e.lambda = alpha(j) / beta(j);
    e.v = vr.col(j);
    const double nrm = e.v.norm();
    if (nrm > 0.0) e.v /= nrm;
  }
  return out;
}

PepResult solve_pep(const ResultantPoly& r) {
  PepResult result;
  for (GepEigenpair& e : solve_gep(linearize(r))) {
    if (e.infinite) {
      ++result.infinite;
      continue;
    }
    result.finite.push_back({e.lambda, recover_eigenvector(e.v, r.size())});
  }
  return result;
}

RankProfile normal_rank(const ResultantPoly& r, int probes, double rank_tol,
                        std::uint64_t seed) {
  if (probes < 1) throw InputError("normal_rank needs at least one probe");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  RankProfile rp;
  rp.dim = r.size();
  rp.rank_tol = rank_tol;
  for (int k = 0; k < probes; ++k) {
    const cplx z = std::polar(1.0, angle(rng));
    Eigen::JacobiSVD<Matrix> svd(r.eval(z));
    const Eigen::VectorXd sv = svd.singularValues();
    int rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
      for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > rank_tol * sv(0);
    }
    rp.normal_rank = std::max(rp.normal_rank, rank);
    rp.sample_points.push_back(z);
    rp.singular_values.push_back(sv);
  }
  return rp;
}

Projection project_singular(const ResultantPoly& r, const RankProfile& rp,
                            std::uint64_t seed) {
  const int dim = r.size();
  const int rank = rp.normal_rank;
  if (rank >= dim) {
    return {r, Matrix::Identity(dim, dim), Matrix::Identity(dim, dim)};
  }
  if (rank == 0) throw ProjectionFailure("matrix polynomial vanishes identically");

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Matrix u = orthonormal_columns(dim, rank, rng).adjoint();
    Matrix v = orthonormal_columns(dim, rank, rng);
    std::vector<Matrix> coeffs;
    for (const Matrix& c : r.coeffs()) coeffs.push_back(u * c * v);
    ResultantPoly reduced(std::move(coeffs), r.basis());
    const RankProfile check = normal_rank(
        reduced, static_cast<int>(rp.sample_points.size()), rp.rank_tol, rng());
    if (check.normal_rank == rank) return {std::move(reduced), std::move(u), std::move(v)};
  }
  throw ProjectionFailure("projection did not reach normal rank " + std::to_string(rank) +
                          " after 3 redraws");
}

}  // namespace multipolyeig
