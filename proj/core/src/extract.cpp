// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/extract.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace multipolyeig {

void ExtractionConfig::validate() const {
  if (!(nullspace_tol > 0.0) || !(residual_tol > 0.0)) {
    throw InputError("extraction tolerances must be positive");
  }
  if (!(keep_fraction > 0.0) || keep_fraction > 1.0) {
    throw InputError("keep_fraction must lie in (0, 1]");
  }
}

std::vector<bool> recoverable_coordinates(const DixonShape& shape) {
  std::vector<bool> ok;
  for (int a : shape.alpha) ok.push_back(a >= 1);
  return ok;
}

std::vector<std::optional<cplx>> vandermonde_ratios(const Vector& v,
                                                    const DixonShape& shape,
                                                    const EntryMask* mask,
                                                    double keep_fraction) {
  if (v.size() != shape.resultant_size) {
    throw InputError("eigenvector length does not match the resultant size");
  }
  if (mask && static_cast<Eigen::Index>(mask->size()) != v.size()) {
    throw InputError("mask length does not match the eigenvector");
  }
  const int n = shape.N;
  const int p = shape.d - 1;
  std::vector<int> dims(shape.alpha.begin(), shape.alpha.end());
  for (int& x : dims) x += 1;

  std::vector<std::optional<cplx>> out(p);
  std::vector<int> index(p);
  int offset = 1;
  for (int k = 0; k < p; offset *= dims[k], ++k) {
    if (dims[k] < 2) continue;
    struct Pair {
      cplx num, den;
    };
    std::vector<Pair> pairs;
    for (int b = 0; b < shape.block_count; ++b) {
      int rest = b;
      for (int j = 0; j < p; ++j) {
        index[j] = rest % dims[j];
        rest /= dims[j];
      }
      if (index[k] != 0) continue;
      for (int l = 0; l < n; ++l) {
        const int den = b * n + l;
        const int num = (b + offset) * n + l;
        if (mask && (!(*mask)[den] || !(*mask)[num])) continue;
        if (v(den) == cplx(0.0)) continue;
        pairs.push_back({v(num), v(den)});
      }
    }
    if (pairs.empty()) continue;
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return std::abs(a.den) > std::abs(b.den);
    });
    const auto keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(keep_fraction * pairs.size())));
    cplx sum = 0.0;
    for (std::size_t j = 0; j < keep; ++j) sum += pairs[j].num / pairs[j].den;
    out[k] = sum / static_cast<double>(keep);
  }
  return out;
}

EntryMask generic_nullspace_mask(const ResultantPoly& r, const ExtractionConfig& cfg,
                                 double rank_tol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const cplx z = std::polar(1.0, angle(rng));
  Eigen::JacobiSVD<Matrix> svd(r.eval(z), Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const int dim = r.size();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > rank_tol * sv(0);
  }
  EntryMask mask(dim, true);
  if (rank == dim) return mask;
  const Matrix null = svd.matrixV().rightCols(dim - rank);
  for (int j = 0; j < dim; ++j) mask[j] = null.row(j).norm() <= cfg.nullspace_tol;
  return mask;
}

ResidualEvaluator::ResidualEvaluator(const Pmep& p) : p_(&p) {
  for (const MatrixPoly& poly : p.polys()) scales_.push_back(poly.max_coeff_norm());
}

double ResidualEvaluator::operator()(std::span<const cplx> x) const {
  double worst = 0.0;
  for (int i = 0; i < p_->vars(); ++i) {
    if (scales_[i] == 0.0) continue;
    const Matrix value = eval((*p_)[i], x);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(value).singularValues();
    const double smin = sv.size() ? sv(sv.size() - 1) : 0.0;
    worst = std::max(worst, smin / scales_[i]);
  }
  return worst;
}

double residual(const Pmep& p, std::span<const cplx> x) {
  return ResidualEvaluator(p)(x);
}

SolutionSet filter_solutions(std::vector<Solution> candidates,
                             const ExtractionConfig& cfg) {
  std::erase_if(candidates, [&](const Solution& s) {
    return !(s.residual <= cfg.residual_tol);
  });
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Solution& a, const Solution& b) {
                     return a.residual < b.residual;
                   });
  SolutionSet out;
  for (Solution& s : candidates) {
    double scale = 1.0;
    for (const cplx& c : s.x) scale = std::max(scale, std::abs(c));
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Solution& kept) {
      double dist = 0.0;
      for (std::size_t k = 0; k < s.x.size(); ++k) {
        dist = std::max(dist, std::abs(s.x[k] - kept.x[k]));
      }
      return dist <= 1e-8 * scale;
    });
    if (!duplicate) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace multipolyeig
