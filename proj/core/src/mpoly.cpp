// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/mpoly.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>

#include "multipolyeig/basis.hpp"
#include "multipolyeig/tensor.hpp"

namespace multipolyeig {

namespace {

std::vector<int> dims_of(const std::vector<int>& tau) {
  std::vector<int> dims(tau.size());
  for (std::size_t k = 0; k < tau.size(); ++k) dims[k] = tau[k] + 1;
  return dims;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

// Contracts the last (slowest) axis at z. The tensor is a stack of
// contiguous slices there, so Horner and Clenshaw run slice-wise.
std::vector<Matrix> contract_last(const std::vector<Matrix>& data,
                                  std::vector<int>& dims, cplx z, Basis basis) {
  const int len = dims.back();
  dims.pop_back();
  const std::size_t stride = tensor::count(dims);
  auto slice = [&](int j, std::size_t i) -> const Matrix& {
    return data[i + stride * j];
  };

  std::vector<Matrix> out(stride);
  for (std::size_t i = 0; i < stride; ++i) {
    if (basis == Basis::Monomial) {
      Matrix acc = slice(len - 1, i);
      for (int j = len - 2; j >= 0; --j) acc = acc * z + slice(j, i);
      out[i] = std::move(acc);
    } else {
      // Clenshaw: b_k = c_k + 2 z b_{k+1} - b_{k+2}; p = c_0 + z b_1 - b_2.
      const auto rows = slice(0, i).rows();
      const auto cols = slice(0, i).cols();
      Matrix b1 = Matrix::Zero(rows, cols);
      Matrix b2 = Matrix::Zero(rows, cols);
      for (int k = len - 1; k >= 1; --k) {
        Matrix b0 = slice(k, i) + 2.0 * z * b1 - b2;
        b2 = std::move(b1);
        b1 = std::move(b0);
      }
      out[i] = slice(0, i) + z * b1 - b2;
    }
  }
  return out;
}

}  // namespace

MatrixPoly::MatrixPoly(int n, std::vector<int> tau, std::vector<Matrix> coeffs,
                       Basis basis)
    : n_(n), tau_(std::move(tau)), coeffs_(std::move(coeffs)), basis_(basis) {
  if (tau_.empty()) throw InputError("MatrixPoly needs at least one variable");
  if (n_ < 1) throw InputError("MatrixPoly matrix size must be positive");
  for (int t : tau_) {
    if (t < 0) throw InputError("MatrixPoly degree bounds must be nonnegative");
  }
  const std::vector<int> dims = dims_of(tau_);
  if (coeffs_.size() != tensor::count(dims)) {
    throw InputError("MatrixPoly expects " +
                     std::to_string(tensor::count(dims)) +
                     " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (const Matrix& c : coeffs_) {
    if (c.rows() != n_ || c.cols() != n_) {
      throw InputError("MatrixPoly coefficient is not " + std::to_string(n_) +
                       "x" + std::to_string(n_));
    }
    if (!c.allFinite()) throw InputError("MatrixPoly coefficient is not finite");
  }
}

MatrixPoly MatrixPoly::zero(int n, std::vector<int> tau, Basis basis) {
  const std::size_t c = tensor::count(dims_of(tau));
  return MatrixPoly(n, std::move(tau), std::vector<Matrix>(c, Matrix::Zero(n, n)),
                    basis);
}

MatrixPoly MatrixPoly::from_terms(
    int n, std::vector<int> tau,
    const std::vector<std::pair<std::vector<int>, Matrix>>& terms, Basis basis) {
  const std::vector<int> dims = dims_of(tau);
  std::vector<Matrix> coeffs(tensor::count(dims), Matrix::Zero(n, n));
  for (const auto& [index, c] : terms) {
    if (index.size() != tau.size()) throw InputError("term index has wrong length");
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (index[k] < 0 || index[k] > tau[k]) {
        throw InputError("term index exceeds degree bound");
      }
    }
    if (c.rows() != n || c.cols() != n) throw InputError("term has wrong size");
    coeffs[tensor::flat_index(dims, index)] += c;
  }
  return MatrixPoly(n, std::move(tau), std::move(coeffs), basis);
}

const Matrix& MatrixPoly::coeff(std::span<const int> index) const {
  if (index.size() != tau_.size()) throw InputError("coefficient index has wrong length");
  return coeffs_[tensor::flat_index(dims(), index)];
}

std::vector<int> MatrixPoly::dims() const { return dims_of(tau_); }

double MatrixPoly::max_coeff_norm() const {
  double m = 0.0;
  for (const Matrix& c : coeffs_) m = std::max(m, spectral_norm(c));
  return m;
}

Pmep::Pmep(std::vector<MatrixPoly> polys) : polys_(std::move(polys)) {
  if (polys_.empty()) throw InputError("Pmep needs at least one equation");
  const int d = static_cast<int>(polys_.size());
  long long n_total = 1;
  for (const MatrixPoly& p : polys_) {
    if (p.vars() != d) {
      throw InputError("Pmep with " + std::to_string(d) +
                       " equations needs polynomials in " + std::to_string(d) +
                       " variables");
    }
    if (p.degrees() != polys_.front().degrees()) {
      throw InputError("Pmep polynomials must share one degree vector");
    }
    if (p.basis() != polys_.front().basis()) {
      throw InputError("Pmep polynomials must share one basis");
    }
    n_total *= p.size();
    if (n_total > INT_MAX) throw InputError("Pmep Kronecker size overflows");
  }
  kron_size_ = static_cast<int>(n_total);
}

std::vector<int> Pmep::sizes() const {
  std::vector<int> s;
  for (const MatrixPoly& p : polys_) s.push_back(p.size());
  return s;
}

Matrix eval(const MatrixPoly& p, std::span<const cplx> x) {
  if (static_cast<int>(x.size()) != p.vars()) {
    throw InputError("eval: point has " + std::to_string(x.size()) +
                     " coordinates, polynomial has " + std::to_string(p.vars()) +
                     " variables");
  }
  std::vector<int> dims = p.dims();
  std::vector<Matrix> data = contract_last(p.coeffs(), dims, x.back(), p.basis());
  for (int k = p.vars() - 2; k >= 0; --k) {
    data = contract_last(data, dims, x[k], p.basis());
  }
  return data.front();
}

MatrixPoly hide_last(const MatrixPoly& p, cplx xd) {
  if (p.vars() < 2) throw InputError("hide_last needs at least two variables");
  std::vector<int> dims = p.dims();
  std::vector<Matrix> data = contract_last(p.coeffs(), dims, xd, p.basis());
  std::vector<int> tau(p.degrees().begin(), p.degrees().end() - 1);
  return MatrixPoly(p.size(), std::move(tau), std::move(data), p.basis());
}

MatrixPoly substitute(const MatrixPoly& p, int var, cplx value) {
  if (p.vars() < 2) throw InputError("substitute needs at least two variables");
  if (var < 0 || var >= p.vars()) throw InputError("substitute: variable out of range");
  if (var == p.vars() - 1) return hide_last(p, value);
  std::vector<int> dims = p.dims();
  const Vector w = basis::values(p.basis(), dims[var], value);
  std::vector<Matrix> data = tensor::contract_axis(p.coeffs(), dims, var, w);
  std::vector<int> tau = p.degrees();
  tau.erase(tau.begin() + var);
  return MatrixPoly(p.size(), std::move(tau), std::move(data), p.basis());
}

MatrixPoly convert_basis(const MatrixPoly& p, Basis target) {
  if (p.basis() == target) return p;
  std::vector<int> dims = p.dims();
  std::vector<Matrix> data = p.coeffs();
  for (int k = 0; k < p.vars(); ++k) {
    data = tensor::apply_along_axis(data, dims, k,
                                    basis::conversion(p.basis(), target, dims[k]));
  }
  return MatrixPoly(p.size(), p.degrees(), std::move(data), target);
}

Pmep convert_basis(const Pmep& p, Basis target) {
  std::vector<MatrixPoly> out;
  for (const MatrixPoly& q : p.polys()) out.push_back(convert_basis(q, target));
  return Pmep(std::move(out));
}

MatrixPoly derivative(const MatrixPoly& p, int var) {
  if (var < 0 || var >= p.vars()) throw InputError("derivative: variable out of range");
  std::vector<int> dims = p.dims();
  std::vector<Matrix> data = tensor::apply_along_axis(
      p.coeffs(), dims, var, basis::derivative(p.basis(), dims[var]));
  return MatrixPoly(p.size(), p.degrees(), std::move(data), p.basis());
}

int total_degree(const MatrixPoly& p) {
  const std::vector<int> dims = p.dims();
  std::vector<int> index(dims.size());
  int best = 0;
  for (std::size_t f = 0; f < p.coeffs().size(); ++f) {
    if (p.coeffs()[f].isZero(0.0)) continue;
    tensor::unravel(dims, f, index);
    int deg = 0;
    for (int i : index) deg += i;
    best = std::max(best, deg);
  }
  return best;
}

Pmep change_of_variables(const Pmep& p, const RealMatrix& q) {
  const int d = p.vars();
  if (q.rows() != d || q.cols() != d) {
    throw InputError("change_of_variables: Q must be " + std::to_string(d) + "x" +
                     std::to_string(d));
  }
  if ((q.transpose() * q - RealMatrix::Identity(d, d)).norm() > 1e-12) {
    throw InputError("change_of_variables: Q is not orthogonal");
  }

  int degree = 0;
  for (const MatrixPoly& poly : p.polys()) degree = std::max(degree, total_degree(poly));
  const int m = degree + 1;
  const std::vector<double> nodes = basis::chebyshev_points(m);
  const RealMatrix interp = basis::chebyshev_interpolation_matrix(m);
  const std::vector<int> grid(d, m);
  const std::size_t points = tensor::count(grid);

  std::vector<MatrixPoly> out;
  std::vector<int> index(d);
  for (const MatrixPoly& poly : p.polys()) {
    std::vector<Matrix> values(points);
    for (std::size_t f = 0; f < points; ++f) {
      tensor::unravel(grid, f, index);
      Eigen::VectorXd xr(d);
      for (int k = 0; k < d; ++k) xr(k) = nodes[index[k]];
      const Eigen::VectorXd x = q.transpose() * xr;
      std::vector<cplx> xc(x.data(), x.data() + d);
      values[f] = eval(poly, xc);
    }
    std::vector<int> dims = grid;
    for (int k = 0; k < d; ++k) {
      values = tensor::apply_along_axis(values, dims, k, interp);
    }
    MatrixPoly cheb(poly.size(), std::vector<int>(d, degree), std::move(values),
                    Basis::Chebyshev);
    out.push_back(convert_basis(cheb, p.basis()));
  }
  return Pmep(std::move(out));
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size(), -1);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] < 0 || perm[k] >= static_cast<int>(perm.size()) ||
        inv[perm[k]] != -1) {
      throw InputError("invalid permutation");
    }
    inv[perm[k]] = static_cast<int>(k);
  }
  return inv;
}

MatrixPoly permute_variables(const MatrixPoly& p, std::span<const int> perm) {
  const int d = p.vars();
  if (static_cast<int>(perm.size()) != d) throw InputError("permutation has wrong length");
  inverse_permutation(perm);  // validates

  std::vector<int> tau(d);
  for (int k = 0; k < d; ++k) tau[k] = p.degrees()[perm[k]];
  const std::vector<int> old_dims = p.dims();
  std::vector<int> new_dims(d);
  for (int k = 0; k < d; ++k) new_dims[k] = tau[k] + 1;

  std::vector<Matrix> coeffs(p.coeffs().size());
  std::vector<int> j(d), i(d);
  for (std::size_t f = 0; f < coeffs.size(); ++f) {
    tensor::unravel(new_dims, f, j);
    for (int k = 0; k < d; ++k) i[perm[k]] = j[k];
    coeffs[f] = p.coeffs()[tensor::flat_index(old_dims, i)];
  }
  return MatrixPoly(p.size(), std::move(tau), std::move(coeffs), p.basis());
}

Pmep permute_variables(const Pmep& p, std::span<const int> perm) {
  std::vector<MatrixPoly> out;
  for (const MatrixPoly& poly : p.polys()) out.push_back(permute_variables(poly, perm));
  return Pmep(std::move(out));
}

}  // namespace multipolyeig
