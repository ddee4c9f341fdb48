// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/dixon.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <future>
#include <numbers>
#include <string>
#include <thread>

#include "multipolyeig/basis.hpp"
#include "multipolyeig/tensor.hpp"

namespace multipolyeig {

// ---------------------------------------------------------------------------
// DixonShape

DixonShape DixonShape::of(const Pmep& p) {
  return of(p.degrees(), p.kron_size());
}

DixonShape DixonShape::of(std::span<const int> tau, int kron_size) {
  const int d = static_cast<int>(tau.size());
  if (d < 2) throw InputError("Dixon resultant needs at least two variables");
  DixonShape shape;
  shape.d = d;
  shape.tau.assign(tau.begin(), tau.end());
  shape.N = kron_size;

  long long blocks_a = 1, blocks_b = 1, expected = 1;
  for (int k = 1; k < d; ++k) {
    const int t = tau[k - 1];
    if (t < 1) {
      throw InputError("variable x_" + std::to_string(k) +
                       " has degree bound 0; only the hidden variable may be absent");
    }
    shape.alpha.push_back(k * t - 1);
    shape.beta.push_back((d - k) * t - 1);
    blocks_a *= k * t;
    blocks_b *= (d - k) * t;
    expected *= static_cast<long long>(k) * t;  // (d-1)! prod tau_k
    if (blocks_a > INT_MAX || blocks_b > INT_MAX) {
      throw InputError("Dixon resultant is too large");
    }
  }
  if (blocks_a != blocks_b || blocks_a != expected) {
    throw InternalInconsistency("Dixon block counts disagree");
  }
  const long long size = blocks_a * kron_size;
  if (size > INT_MAX) throw InputError("Dixon resultant is too large");
  shape.block_count = static_cast<int>(blocks_a);
  shape.resultant_size = static_cast<int>(size);
  shape.xd_degree_bound = d * tau[d - 1];
  return shape;
}

int DixonShape::block_index(std::span<const int> s_index) const {
  int flat = 0, stride = 1;
  for (int k = 0; k < d - 1; ++k) {
    flat += stride * s_index[k];
    stride *= alpha[k] + 1;
  }
  return flat;
}

// ---------------------------------------------------------------------------
// ResultantPoly

ResultantPoly::ResultantPoly(std::vector<Matrix> coeffs, Basis basis)
    : coeffs_(std::move(coeffs)), basis_(basis) {
  if (coeffs_.empty()) throw InputError("ResultantPoly needs a coefficient");
  for (const Matrix& c : coeffs_) {
    if (c.rows() != c.cols() || c.rows() != coeffs_.front().rows()) {
      throw InputError("ResultantPoly coefficients must be square and equal in size");
    }
  }
}

Matrix ResultantPoly::eval(cplx x) const {
  const int len = static_cast<int>(coeffs_.size());
  if (basis_ == Basis::Monomial) {
    Matrix acc = coeffs_.back();
    for (int j = len - 2; j >= 0; --j) acc = acc * x + coeffs_[j];
    return acc;
  }
  Matrix b1 = Matrix::Zero(size(), size());
  Matrix b2 = b1;
  for (int k = len - 1; k >= 1; --k) {
    Matrix b0 = coeffs_[k] + 2.0 * x * b1 - b2;
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  return coeffs_[0] + x * b1 - b2;
}

ResultantPoly ResultantPoly::to_basis(Basis target) const {
  if (target == basis_) return *this;
  std::vector<int> dims{static_cast<int>(coeffs_.size())};
  return ResultantPoly(
      tensor::apply_along_axis(coeffs_, dims, 0,
                               basis::conversion(basis_, target, dims[0])),
      target);
}

ResultantPoly ResultantPoly::trimmed(double tol) const {
  double largest = 0.0;
  for (const Matrix& c : coeffs_) largest = std::max(largest, c.norm());
  std::vector<Matrix> kept = coeffs_;
  while (kept.size() > 1 && kept.back().norm() <= tol * largest) kept.pop_back();
  return ResultantPoly(std::move(kept), basis_);
}

// ---------------------------------------------------------------------------
// Dixon function

namespace {

// Numerator with x_d already substituted: hidden[i] is P_i(., xd).
Matrix numerator_hidden(const std::vector<MatrixPoly>& hidden,
                        std::span<const cplx> s, std::span<const cplx> t) {
  const int d = static_cast<int>(hidden.size());
  std::vector<std::vector<Matrix>> blocks(d, std::vector<Matrix>(d));
  std::vector<cplx> point(d - 1);
  for (int col = 0; col < d; ++col) {
    for (int k = 0; k < d - 1; ++k) point[k] = k < col ? t[k] : s[k];
    for (int row = 0; row < d; ++row) blocks[row][col] = eval(hidden[row], point);
  }
  return tensor::kron_determinant(blocks);
}

std::vector<MatrixPoly> hide_all(const Pmep& p, cplx xd) {
  std::vector<MatrixPoly> hidden;
  for (const MatrixPoly& poly : p.polys()) hidden.push_back(hide_last(poly, xd));
  return hidden;
}

// Strided access to the (a, b) plane spanned by two axes of a tensor.
struct Plane {
  std::size_t base, stride_a, stride_b;
  std::size_t at(int a, int b) const { return base + a * stride_a + b * stride_b; }
};

std::vector<std::size_t> strides_of(const std::vector<int>& dims) {
  std::vector<std::size_t> strides(dims.size());
  std::size_t s = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    strides[k] = s;
    s *= dims[k];
  }
  return strides;
}

// Enumerates plane bases: all multi-indices with idx[axis_a] = idx[axis_b] = 0.
template <typename F>
void for_each_plane(const std::vector<int>& dims, int axis_a, int axis_b, F&& f) {
  const std::size_t total = tensor::count(dims);
  std::vector<int> index(dims.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    tensor::unravel(dims, flat, index);
    if (index[axis_a] == 0 && index[axis_b] == 0) f(index);
  }
}

DixonTensor divide_pair(const DixonTensor& g, int k) {
  const int p = g.pairs();
  const int sa = k, ta = p + k;
  DixonTensor h;
  h.basis = g.basis;
  h.dims = g.dims;
  h.dims[sa] -= 1;
  h.dims[ta] -= 1;
  const int a_len = h.dims[sa], b_len = h.dims[ta];
  const auto n = g.blocks.front().rows();
  h.blocks.assign(tensor::count(h.dims), Matrix::Zero(n, n));

  const auto gs = strides_of(g.dims);
  const auto hs = strides_of(h.dims);
  for_each_plane(h.dims, sa, ta, [&](const std::vector<int>& index) {
    std::size_t gbase = 0, hbase = 0;
    for (std::size_t ax = 0; ax < index.size(); ++ax) {
      gbase += index[ax] * gs[ax];
      hbase += index[ax] * hs[ax];
    }
    const Plane gp{gbase, gs[sa], gs[ta]};
    const Plane hp{hbase, hs[sa], hs[ta]};
    // g_{a+1,b} = h_{a,b} - h_{a+1,b-1}
    for (int a = a_len - 1; a >= 0; --a) {
      for (int b = 0; b < b_len; ++b) {
        Matrix v = g.blocks[gp.at(a + 1, b)];
        if (a + 1 < a_len && b >= 1) v += h.blocks[hp.at(a + 1, b - 1)];
        h.blocks[hp.at(a, b)] = std::move(v);
      }
    }
  });
  return h;
}

DixonTensor multiply_pair(const DixonTensor& h, int k) {
  const int p = h.pairs();
  const int sa = k, ta = p + k;
  DixonTensor g;
  g.basis = h.basis;
  g.dims = h.dims;
  g.dims[sa] += 1;
  g.dims[ta] += 1;
  const int a_len = h.dims[sa], b_len = h.dims[ta];
  const auto n = h.blocks.front().rows();
  g.blocks.assign(tensor::count(g.dims), Matrix::Zero(n, n));

  const auto gs = strides_of(g.dims);
  const auto hs = strides_of(h.dims);
  for_each_plane(h.dims, sa, ta, [&](const std::vector<int>& index) {
    std::size_t gbase = 0, hbase = 0;
    for (std::size_t ax = 0; ax < index.size(); ++ax) {
      gbase += index[ax] * gs[ax];
      hbase += index[ax] * hs[ax];
    }
    const Plane gp{gbase, gs[sa], gs[ta]};
    const Plane hp{hbase, hs[sa], hs[ta]};
    for (int a = 0; a <= a_len; ++a) {
      for (int b = 0; b <= b_len; ++b) {
        Matrix& v = g.blocks[gp.at(a, b)];
        if (a >= 1 && b < b_len) v += h.blocks[hp.at(a - 1, b)];
        if (b >= 1 && a < a_len) v -= h.blocks[hp.at(a, b - 1)];
      }
    }
  });
  return g;
}

double max_abs(const std::vector<Matrix>& blocks) {
  double m = 0.0;
  for (const Matrix& b : blocks) m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

Matrix dixon_numerator_eval(const Pmep& p, std::span<const cplx> s,
                            std::span<const cplx> t, cplx xd) {
  const int d = p.vars();
  if (d < 2) throw InputError("Dixon numerator needs at least two variables");
  if (static_cast<int>(s.size()) != d - 1 || static_cast<int>(t.size()) != d - 1) {
    throw InputError("Dixon numerator needs d-1 values of s and of t");
  }
  return numerator_hidden(hide_all(p, xd), s, t);
}

DixonTensor numerator_coefficients(const Pmep& p, cplx xd) {
  const int d = p.vars();
  if (d < 2) throw InputError("Dixon numerator needs at least two variables");
  const std::vector<MatrixPoly> hidden = hide_all(p, xd);
  const std::vector<int>& tau = p.degrees();

  DixonTensor g;
  g.basis = Basis::Monomial;
  g.dims.resize(2 * (d - 1));
  for (int k = 0; k < d - 1; ++k) {
    g.dims[k] = (k + 1) * tau[k] + 1;
    g.dims[d - 1 + k] = (d - 1 - k) * tau[k] + 1;
  }

  std::vector<std::vector<cplx>> nodes(g.dims.size());
  for (std::size_t ax = 0; ax < g.dims.size(); ++ax) {
    for (int j = 0; j < g.dims[ax]; ++j) {
      nodes[ax].push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / g.dims[ax]));
    }
  }

  const std::size_t total = tensor::count(g.dims);
  g.blocks.resize(total);
  std::vector<int> index(g.dims.size());
  std::vector<cplx> s(d - 1), t(d - 1);
  for (std::size_t flat = 0; flat < total; ++flat) {
    tensor::unravel(g.dims, flat, index);
    for (int k = 0; k < d - 1; ++k) {
      s[k] = nodes[k][index[k]];
      t[k] = nodes[d - 1 + k][index[d - 1 + k]];
    }
    g.blocks[flat] = numerator_hidden(hidden, s, t);
  }
  for (std::size_t ax = 0; ax < g.dims.size(); ++ax) {
    g.blocks = tensor::apply_along_axis(
        g.blocks, g.dims, static_cast<int>(ax),
        basis::roots_of_unity_interpolation_matrix(g.dims[ax]));
  }
  return g;
}

DixonTensor divide_out(const DixonTensor& numerator) {
  if (numerator.basis != Basis::Monomial) {
    throw InputError("divide_out expects monomial coefficients");
  }
  if (numerator.dims.size() % 2 != 0 || numerator.blocks.empty()) {
    throw InputError("divide_out expects paired s and t axes");
  }
  DixonTensor h = numerator;
  for (int k = 0; k < numerator.pairs(); ++k) {
    if (h.dims[k] < 2 || h.dims[numerator.pairs() + k] < 2) {
      throw InputError("divide_out: numerator has degree 0 in a (s, t) pair");
    }
    h = divide_pair(h, k);
  }

  const DixonTensor back = multiply_back(h);
  double err = 0.0;
  for (std::size_t i = 0; i < back.blocks.size(); ++i) {
    err = std::max(err, (back.blocks[i] - numerator.blocks[i]).cwiseAbs().maxCoeff());
  }
  const double scale = max_abs(numerator.blocks);
  if (err > 1e-8 * scale) {
    throw InternalInconsistency("Dixon numerator is not divisible by prod(s_k - t_k): "
                                "relative residual " + std::to_string(err / scale));
  }
  return h;
}

DixonTensor multiply_back(const DixonTensor& h) {
  DixonTensor g = h;
  for (int k = 0; k < h.pairs(); ++k) g = multiply_pair(g, k);
  return g;
}

DixonTensor convert_basis(const DixonTensor& tensor, Basis target) {
  if (tensor.basis == target) return tensor;
  DixonTensor out = tensor;
  for (std::size_t ax = 0; ax < out.dims.size(); ++ax) {
    out.blocks = tensor::apply_along_axis(
        out.blocks, out.dims, static_cast<int>(ax),
        basis::conversion(tensor.basis, target, out.dims[ax]));
  }
  out.basis = target;
  return out;
}

DixonTensor dixon_coefficients(const Pmep& p, cplx xd) {
  return convert_basis(divide_out(numerator_coefficients(p, xd)), p.basis());
}

Matrix unfold(const DixonTensor& t, const DixonShape& shape) {
  const int p = shape.d - 1;
  if (static_cast<int>(t.dims.size()) != 2 * p) throw InputError("unfold: wrong tensor rank");
  for (int k = 0; k < p; ++k) {
    if (t.dims[k] != shape.alpha[k] + 1 || t.dims[p + k] != shape.beta[k] + 1) {
      throw InputError("unfold: tensor dimensions do not match the Dixon shape");
    }
  }
  const int n = shape.N;
  const int blocks = shape.block_count;
  Matrix r(shape.resultant_size, shape.resultant_size);
  for (int row = 0; row < blocks; ++row) {
    for (int col = 0; col < blocks; ++col) {
      const Matrix& b = t.blocks[col + static_cast<std::size_t>(blocks) * row];
      if (b.rows() != n || b.cols() != n) throw InputError("unfold: block has wrong size");
      r.block(row * n, col * n, n, n) = b;
    }
  }
  return r;
}

DixonTensor refold(const Matrix& r, const DixonShape& shape, Basis basis) {
  if (r.rows() != shape.resultant_size || r.cols() != shape.resultant_size) {
    throw InputError("refold: matrix size does not match the Dixon shape");
  }
  const int p = shape.d - 1;
  DixonTensor t;
  t.basis = basis;
  t.dims.resize(2 * p);
  for (int k = 0; k < p; ++k) {
    t.dims[k] = shape.alpha[k] + 1;
    t.dims[p + k] = shape.beta[k] + 1;
  }
  const int n = shape.N;
  const int blocks = shape.block_count;
  t.blocks.resize(static_cast<std::size_t>(blocks) * blocks);
  for (int row = 0; row < blocks; ++row) {
    for (int col = 0; col < blocks; ++col) {
      t.blocks[col + static_cast<std::size_t>(blocks) * row] =
          r.block(row * n, col * n, n, n);
    }
  }
  return t;
}

ResultantPoly build_resultant(const Pmep& p, const ResultantOptions& options) {
  const DixonShape shape = DixonShape::of(p);
  const int m = shape.xd_degree_bound + 1;
  const std::vector<double> nodes = basis::chebyshev_points(m);

  auto at_node = [&](int j) { return unfold(dixon_coefficients(p, nodes[j]), shape); };

  std::vector<Matrix> values(m);
  const bool threads = options.parallel && m > 1 && std::thread::hardware_concurrency() > 1;
  if (threads) {
    std::vector<std::future<Matrix>> pending;
    for (int j = 0; j < m; ++j) pending.push_back(std::async(std::launch::async, at_node, j));
    for (int j = 0; j < m; ++j) values[j] = pending[j].get();
  } else {
    for (int j = 0; j < m; ++j) values[j] = at_node(j);
  }

  std::vector<int> dims{m};
  std::vector<Matrix> coeffs = tensor::apply_along_axis(
      values, dims, 0, basis::chebyshev_interpolation_matrix(m));
  return ResultantPoly(std::move(coeffs), Basis::Chebyshev)
      .to_basis(p.basis())
      .trimmed(options.trim_tol);
}

}  // namespace multipolyeig
