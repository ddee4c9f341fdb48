// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/solver.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "multipolyeig/dixon.hpp"
#include "multipolyeig/opdet.hpp"
#include "multipolyeig/pep.hpp"

namespace multipolyeig {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Point = std::vector<cplx>;

struct Candidate {
  Point y;
  bool projected = false;
  bool reduced = false;
};

bool is_linear(const Pmep& p) {
  for (const MatrixPoly& poly : p.polys()) {
    if (total_degree(poly) > 1) return false;
  }
  return true;
}

class Pipeline {
 public:
  Pipeline(const SolverConfig& cfg, SolveDiagnostics& diag) : cfg_(cfg), diag_(diag) {}

  // Solves with the hidden variable placed last; points come back in the
  // variable order of p.
  std::vector<Candidate> solve_planned(const Pmep& p, const HiddenVariablePlan& plan,
                                       int depth) {
    const Pmep work = permute_variables(p, plan.order);
    std::vector<Candidate> found = solve_ordered(work, depth);
    for (Candidate& c : found) {
      Point x(c.y.size());
      for (std::size_t k = 0; k < x.size(); ++k) x[plan.order[k]] = c.y[k];
      c.y = std::move(x);
    }
    return found;
  }

 private:
  std::vector<Candidate> solve_ordered(const Pmep& p, int depth) {
    const int d = p.vars();
    if (d == 1) return solve_univariate(p);

    const ResultantPoly r = build_resultant(p, {cfg_.trim_tol, cfg_.parallel});
    const DixonShape shape = DixonShape::of(p);
    const RankProfile rp =
        normal_rank(r, cfg_.probes, cfg_.rank_tol, mix(cfg_.seed, 10 + depth));
    if (depth == 0) {
      diag_.resultant_size = shape.resultant_size;
      diag_.normal_rank = rp.normal_rank;
    }

    std::optional<Projection> proj;
    if (rp.singular()) {
      proj = project_singular(r, rp, mix(cfg_.seed, 20 + depth));
      if (depth == 0) diag_.projected = true;
    }
    if (r.degree() < 1) {
      diag_.warnings.push_back("resultant is constant in the hidden variable");
      return {};
    }
    const PepResult pep = solve_pep(proj ? proj->reduced : r);
    diag_.infinite_eigenvalues += pep.infinite;
    diag_.dropped_eigenpairs += pep.infinite;

    EntryMask mask;
    if (rp.singular()) {
      mask = generic_nullspace_mask(r, cfg_.extraction, cfg_.rank_tol,
                                    mix(cfg_.seed, 30 + depth));
    }
    const EntryMask* mask_ptr = mask.empty() ? nullptr : &mask;

    std::optional<LinearMep> linear;
    std::vector<Matrix> deltas;
    if (is_linear(p)) {
      linear = LinearMep::from_pmep(p);
      for (int k = 0; k <= d; ++k) deltas.push_back(delta(*linear, k));
    }

    const std::vector<bool> recoverable = recoverable_coordinates(shape);
    std::vector<Candidate> out;
    for (const PepEigenpair& e : pep.finite) {
      const Vector v = proj ? Vector(proj->V * e.v) : e.v;
      Candidate c;
      c.projected = proj.has_value();
      c.y.assign(d, cplx(0.0));
      c.y[d - 1] = e.lambda;

      if (linear) {
        const Vector z = largest_block(v, shape);
        for (int i = 0; i + 1 < d; ++i) c.y[i] = rayleigh_quotient(deltas[i + 1], deltas[0], z);
        out.push_back(std::move(c));
        continue;
      }

      const auto ratios = vandermonde_ratios(v, shape, mask_ptr, cfg_.extraction.keep_fraction);
      std::vector<int> unknown;
      bool failed = false;
      for (int k = 0; k + 1 < d; ++k) {
        if (!recoverable[k]) {
          unknown.push_back(k);
        } else if (ratios[k]) {
          c.y[k] = *ratios[k];
        } else {
          failed = true;
        }
      }
      if (failed) {
        ++diag_.extraction_failures;
        ++diag_.dropped_eigenpairs;
        continue;
      }
      if (unknown.empty()) {
        out.push_back(std::move(c));
        continue;
      }
      if (!cfg_.reduce_linear) {
        ++diag_.extraction_failures;
        ++diag_.dropped_eigenpairs;
        continue;
      }
      if (depth >= 1) {
        throw ReductionDepthExceeded(
            "reduced subproblem lost a coordinate again; reorder the variables or "
            "enable rotation");
      }
      for (Candidate& sub : reduce(p, c, unknown, depth)) out.push_back(std::move(sub));
    }
    return out;
  }

  // Substitutes the known coordinates and solves each square subsystem in
  // the unknown ones.
  std::vector<Candidate> reduce(const Pmep& p, const Candidate& c,
                                const std::vector<int>& unknown, int depth) {
    const int d = p.vars();
    const int u = static_cast<int>(unknown.size());
    diag_.reduced = true;

    std::vector<MatrixPoly> substituted;
    for (const MatrixPoly& poly : p.polys()) {
      MatrixPoly q = poly;
      for (int k = d - 1; k >= 0; --k) {
        if (std::find(unknown.begin(), unknown.end(), k) == unknown.end()) {
          q = substitute(q, k, c.y[k]);
        }
      }
      substituted.push_back(std::move(q));
    }

    std::vector<Candidate> out;
    std::vector<bool> pick(d, false);
    std::fill(pick.begin(), pick.begin() + u, true);
    do {
      std::vector<MatrixPoly> subset;
      for (int i = 0; i < d; ++i) {
        if (pick[i]) subset.push_back(substituted[i]);
      }
      const Pmep sub(std::move(subset));
      std::vector<Candidate> found;
      if (u == 1) {
        found = solve_univariate(sub);
      } else {
        found = solve_planned(sub, choose_hidden_variable(sub), depth + 1);
      }
      for (Candidate& f : found) {
        Candidate full = c;
        full.reduced = true;
        for (int j = 0; j < u; ++j) full.y[unknown[j]] = f.y[j];
        out.push_back(std::move(full));
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
  }

  std::vector<Candidate> solve_univariate(const Pmep& p) {
    const MatrixPoly& poly = p[0];
    const ResultantPoly r(poly.coeffs(), poly.basis());
    if (r.degree() < 1) return {};
    const PepResult pep = solve_pep(r);
    diag_.infinite_eigenvalues += pep.infinite;
    diag_.dropped_eigenpairs += pep.infinite;
    std::vector<Candidate> out;
    for (const PepEigenpair& e : pep.finite) out.push_back({{e.lambda}});
    return out;
  }

  static Vector largest_block(const Vector& v, const DixonShape& shape) {
    return recover_eigenvector(v, shape.N);
  }

  const SolverConfig& cfg_;
  SolveDiagnostics& diag_;
};

}  // namespace

void SolverConfig::validate(int d) const {
  extraction.validate();
  if (!(rank_tol > 0.0) || !(trim_tol > 0.0)) {
    throw InputError("solver tolerances must be positive");
  }
  if (probes < 1) throw InputError("probes must be at least 1");
  if (hide_variable && (*hide_variable < 0 || *hide_variable >= d)) {
    throw InputError("hidden variable index out of range");
  }
}

HiddenVariablePlan plan_for_hidden(const Pmep& p, int hidden) {
  const int d = p.vars();
  if (hidden < 0 || hidden >= d) throw InputError("hidden variable index out of range");
  HiddenVariablePlan plan;
  plan.hidden = hidden;
  for (int k = 0; k < d; ++k) {
    if (k != hidden) plan.order.push_back(k);
  }
  plan.order.push_back(hidden);
  plan.linear = std::all_of(p.degrees().begin(), p.degrees().end(),
                            [](int t) { return t == 1; });
  if (d >= 2 && !plan.linear) {
    std::vector<int> tau;
    for (int k : plan.order) tau.push_back(p.degrees()[k]);
    const DixonShape shape = DixonShape::of(tau, p.kron_size());
    const std::vector<bool> ok = recoverable_coordinates(shape);
    for (int k = 0; k + 1 < d; ++k) {
      if (!ok[k]) plan.reduce.push_back(plan.order[k]);
    }
  }
  return plan;
}

HiddenVariablePlan choose_hidden_variable(const Pmep& p) {
  const int d = p.vars();
  if (d == 1) return plan_for_hidden(p, 0);
  const std::vector<int>& tau = p.degrees();

  std::vector<int> candidates;
  for (int k = 0; k < d; ++k) {
    if (tau[k] == 1) candidates.push_back(k);
  }
  if (candidates.empty()) {
    for (int k = 0; k < d; ++k) candidates.push_back(k);
  }

  int best = -1;
  long long best_size = 0, best_degree = 0;
  for (int k : candidates) {
    std::vector<int> order_tau;
    for (int j = 0; j < d; ++j) {
      if (j != k) order_tau.push_back(tau[j]);
    }
    order_tau.push_back(tau[k]);
    const DixonShape shape = DixonShape::of(order_tau, p.kron_size());
    const long long size = shape.resultant_size;
    const long long degree = shape.xd_degree_bound;
    if (best < 0 || size < best_size || (size == best_size && degree <= best_degree)) {
      best = k;
      best_size = size;
      best_degree = degree;
    }
  }
  return plan_for_hidden(p, best);
}

RealMatrix random_orthogonal(int d, std::uint64_t seed) {
  if (d < 1) throw InputError("random_orthogonal needs d >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RealMatrix g(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

SolveResult solve(const Pmep& p, const SolverConfig& cfg) {
  const int d = p.vars();
  cfg.validate(d);

  SolveResult result;
  SolveDiagnostics& diag = result.diagnostics;
  diag.rotation_seed = cfg.seed;

  const Pmep base = cfg.basis ? convert_basis(p, *cfg.basis) : p;
  const ResidualEvaluator res(p);
  std::vector<Solution> candidates;

  // One pass of the pipeline on Q x; appends back-rotated candidates.
  auto run = [&](const RealMatrix& q, bool rotated, SolveDiagnostics& dg) {
    const Pmep work = rotated ? change_of_variables(base, q) : base;
    const HiddenVariablePlan plan = cfg.hide_variable
                                        ? plan_for_hidden(work, *cfg.hide_variable)
                                        : choose_hidden_variable(work);
    dg.hidden_variable = plan.hidden;
    Pipeline pipeline(cfg, dg);
    const std::vector<Candidate> found = pipeline.solve_planned(work, plan, 0);
    dg.candidates += static_cast<int>(found.size());
    for (const Candidate& c : found) {
      Solution s;
      const Vector xr = Eigen::Map<const Vector>(c.y.data(), d);
      const Vector x = q.transpose().cast<cplx>() * xr;
      s.x.assign(x.data(), x.data() + d);
      s.residual = res(s.x);
      s.rotated = rotated;
      s.projected = c.projected;
      s.reduced = c.reduced;
      candidates.push_back(std::move(s));
    }
  };

  const RealMatrix identity = RealMatrix::Identity(d, d);
  if (cfg.hide_variable && cfg.rotate && d > 1) {
    diag.warnings.push_back(
        "hidden variable given explicitly: rotation skipped, repeated coordinates "
        "may break extraction");
    run(identity, false, diag);
  } else if (cfg.rotate && d > 1) {
    diag.rotated = true;
    run(random_orthogonal(d, cfg.seed), true, diag);
    if (diag.extraction_failures > 0) {
      // The rotated system carries total-degree bounds, which can make its
      // resultant singular with a null space touching every entry.
      SolveDiagnostics second;
      run(identity, false, second);
      diag.unrotated_fallback = true;
      diag.candidates += second.candidates;
      diag.warnings.push_back(
          "rotated pass lost " + std::to_string(diag.extraction_failures) +
          " eigenpairs to extraction failures; merged with an unrotated pass");
      for (std::string& w : second.warnings) diag.warnings.push_back(std::move(w));
    }
  } else {
    run(identity, false, diag);
  }

  result.solutions = filter_solutions(std::move(candidates), cfg.extraction);
  return result;
}

}  // namespace multipolyeig
