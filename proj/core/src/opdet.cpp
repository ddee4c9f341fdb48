// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/opdet.hpp"

#include <algorithm>

#include "multipolyeig/pep.hpp"
#include "multipolyeig/tensor.hpp"

namespace multipolyeig {

LinearMep::LinearMep(std::vector<Matrix> v0, std::vector<std::vector<Matrix>> v)
    : v0_(std::move(v0)), v_(std::move(v)) {
  const std::size_t d = v0_.size();
  if (d == 0) throw InputError("LinearMep needs at least one equation");
  if (v_.size() != d) throw InputError("LinearMep needs d rows of coefficients");
  for (std::size_t i = 0; i < d; ++i) {
    const auto n = v0_[i].rows();
    if (n < 1 || v0_[i].cols() != n) throw InputError("V_i0 must be square and nonempty");
    if (v_[i].size() != d) throw InputError("LinearMep row needs d matrices");
    for (const Matrix& m : v_[i]) {
      if (m.rows() != n || m.cols() != n) {
        throw InputError("all matrices of one equation must share one size");
      }
    }
  }
}

LinearMep LinearMep::from_pmep(const Pmep& p) {
  const Pmep mono = convert_basis(p, Basis::Monomial);
  const int d = mono.vars();
  for (int k = 0; k < d; ++k) {
    if (mono.degrees()[k] > 1) throw InputError("linear MEP needs degree bounds <= 1");
  }
  std::vector<Matrix> v0;
  std::vector<std::vector<Matrix>> v(d);
  std::vector<int> index(d);
  for (int i = 0; i < d; ++i) {
    const MatrixPoly& poly = mono[i];
    if (total_degree(poly) > 1) throw InputError("linear MEP cannot have cross terms");
    std::fill(index.begin(), index.end(), 0);
    v0.push_back(poly.coeff(index));
    for (int j = 0; j < d; ++j) {
      if (mono.degrees()[j] == 0) {
        v[i].push_back(Matrix::Zero(poly.size(), poly.size()));
        continue;
      }
      std::fill(index.begin(), index.end(), 0);
      index[j] = 1;
      v[i].push_back(-poly.coeff(index));
    }
  }
  return LinearMep(std::move(v0), std::move(v));
}

Pmep LinearMep::to_pmep() const {
  const int d = vars();
  std::vector<MatrixPoly> polys;
  for (int i = 0; i < d; ++i) {
    std::vector<std::pair<std::vector<int>, Matrix>> terms;
    terms.emplace_back(std::vector<int>(d, 0), v0_[i]);
    for (int j = 0; j < d; ++j) {
      std::vector<int> index(d, 0);
      index[j] = 1;
      terms.emplace_back(index, -v_[i][j]);
    }
    polys.push_back(MatrixPoly::from_terms(static_cast<int>(v0_[i].rows()),
                                           std::vector<int>(d, 1), terms));
  }
  return Pmep(std::move(polys));
}

std::vector<int> LinearMep::sizes() const {
  std::vector<int> out;
  for (const Matrix& m : v0_) out.push_back(static_cast<int>(m.rows()));
  return out;
}

int LinearMep::kron_size() const {
  int n = 1;
  for (int s : sizes()) n *= s;
  return n;
}

Matrix delta(const LinearMep& mep, int k) {
  const int d = mep.vars();
  if (k < 0 || k > d) throw InputError("delta index must lie in 0..d");
  std::vector<std::vector<Matrix>> blocks(d, std::vector<Matrix>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) blocks[i][j] = j + 1 == k ? mep.v0(i) : mep.v(i, j);
  }
  return tensor::kron_determinant(blocks);
}

cplx rayleigh_quotient(const Matrix& a, const Matrix& b, const Vector& z) {
  const Vector bz = b * z;
  return bz.dot(a * z) / bz.squaredNorm();
}

SolutionSet solve_linear_mep(const LinearMep& mep) {
  const int d = mep.vars();
  std::vector<Matrix> deltas;
  for (int k = 0; k <= d; ++k) deltas.push_back(delta(mep, k));

  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(deltas[0]).singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) <= 1e-12 * sv(0)) {
    throw SingularMepError("Delta_0 is numerically singular");
  }

  const Pmep p = mep.to_pmep();
  const ResidualEvaluator res(p);
  SolutionSet out;
  for (const GepEigenpair& e : solve_gep({deltas[d], -deltas[0]})) {
    if (e.infinite) continue;
    Solution s;
    s.x.resize(d);
    for (int i = 0; i + 1 < d; ++i) s.x[i] = rayleigh_quotient(deltas[i + 1], deltas[0], e.v);
    s.x[d - 1] = e.lambda;
    s.residual = res(s.x);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
    return a.residual < b.residual;
  });
  return out;
}

std::vector<Vector> kronecker_factors(const Vector& z, const std::vector<int>& sizes) {
  long long total = 1;
  for (int s : sizes) total *= s;
  if (sizes.empty() || total != z.size()) {
    throw InputError("vector length does not match the Kronecker sizes");
  }
  std::vector<Vector> out;
  Vector rest = z;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    const auto n = sizes[i];
    const auto m = rest.size() / n;
    // Row a of the reshaped matrix holds rest[a * m .. a * m + m).
    const Matrix reshaped = Eigen::Map<const Matrix>(rest.data(), m, n).transpose();
    Eigen::JacobiSVD<Matrix> svd(reshaped, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.push_back(svd.matrixU().col(0));
    rest = svd.matrixV().col(0).conjugate();
  }
  out.push_back(rest.normalized());
  return out;
}

}  // namespace multipolyeig
