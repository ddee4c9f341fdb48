// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <thread>

namespace multipolyeig {

DetAdj determinant_and_adjugate(const Matrix& m) {
  const auto n = m.rows();
  if (n == 0) return {1.0, Matrix(0, 0)};
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  const Eigen::VectorXd& s = svd.singularValues();
  // adj(U S V^*) = det(V^*) V adj(S) det(U) U^*
  const cplx phase = u.determinant() * std::conj(v.determinant());
  Eigen::VectorXd cof(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double prod = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) prod *= s(j);
    }
    cof(i) = prod;
  }
  double det_abs = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) det_abs *= s(i);
  return {phase * det_abs, phase * v * cof.cast<cplx>().asDiagonal() * u.adjoint()};
}

namespace {

struct System {
  const Pmep* p;
  std::vector<double> weights;                // 1 / scale_i^{n_i}
  std::vector<std::vector<MatrixPoly>> grad;  // grad[i][j] = dP_i / dx_j
};

struct Outcome {
  std::vector<cplx> x;
  bool ok = false;
};

Outcome newton(const System& sys, const ResidualEvaluator& res, std::vector<cplx> x,
               const OracleConfig& cfg) {
  const int d = sys.p->vars();
  Vector f(d);
  Matrix jac(d, d);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    for (int i = 0; i < d; ++i) {
      const DetAdj da = determinant_and_adjugate(eval((*sys.p)[i], x));
      f(i) = da.det * sys.weights[i];
      for (int j = 0; j < d; ++j) {
        const Matrix dp = eval(sys.grad[i][j], x);
        jac(i, j) = (da.adj * dp).trace() * sys.weights[i];
      }
    }
    Vector step = jac.completeOrthogonalDecomposition().solve(-f);
    if (!step.allFinite()) return {x, false};
    double scale = 1.0;
    for (const cplx& c : x) scale = std::max(scale, std::abs(c));
    const double len = step.norm();
    if (len > 10.0 * scale) step *= 10.0 * scale / len;
    for (int k = 0; k < d; ++k) x[k] += step(k);
    if (len <= 1e-15 * scale) break;
    if (scale > 1e8) return {x, false};
  }
  return {x, res(x) <= cfg.residual_tol};
}

}  // namespace

OracleResult newton_oracle(const Pmep& p, const OracleConfig& cfg) {
  if (cfg.starts < 1) throw InputError("newton_oracle needs at least one start");
  const int d = p.vars();
  System sys{&p, {}, {}};
  for (int i = 0; i < d; ++i) {
    const double scale = p[i].max_coeff_norm();
    sys.weights.push_back(scale > 0.0 ? std::pow(scale, -p[i].size()) : 1.0);
    std::vector<MatrixPoly> row;
    for (int j = 0; j < d; ++j) row.push_back(derivative(p[i], j));
    sys.grad.push_back(std::move(row));
  }
  const ResidualEvaluator res(p);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> box(-cfg.radius, cfg.radius);
  std::vector<std::vector<cplx>> starts(cfg.starts, std::vector<cplx>(d));
  for (auto& s : starts) {
    for (cplx& c : s) {
      const double re = box(rng);
      c = cplx(re, box(rng));
    }
  }

  std::vector<Outcome> outcomes(cfg.starts);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = cfg.parallel ? static_cast<int>(std::min<unsigned>(hw, cfg.starts)) : 1;
  auto run = [&](int w) {
    for (int k = w; k < cfg.starts; k += workers) outcomes[k] = newton(sys, res, starts[k], cfg);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::future<void>> pending;
    for (int w = 0; w < workers; ++w) pending.push_back(std::async(std::launch::async, run, w));
    for (auto& f : pending) f.get();
  }

  OracleResult out;
  std::vector<Solution> found;
  for (Outcome& o : outcomes) {
    if (!o.ok) {
      ++out.dropped;
      continue;
    }
    ++out.converged;
    Solution s;
    s.residual = res(o.x);
    s.x = std::move(o.x);
    found.push_back(std::move(s));
  }
  ExtractionConfig ec;
  ec.residual_tol = cfg.residual_tol;
  out.solutions = filter_solutions(std::move(found), ec);
  return out;
}

}  // namespace multipolyeig
