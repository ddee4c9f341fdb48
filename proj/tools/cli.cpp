// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "multipolyeig/io.hpp"
#include "multipolyeig/oracle.hpp"
#include "multipolyeig/solver.hpp"

namespace multipolyeig::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("MULTIPOLYEIG_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError("MULTIPOLYEIG_SEED must be a nonnegative integer");
    return v;
  }
  return SolverConfig{}.seed;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

struct SolveArgs {
  std::string input, output, basis;
  std::optional<int> hide;
  bool no_rotate = false;
  std::optional<std::uint64_t> seed;
  ExtractionConfig extraction;
  double rank_tol = SolverConfig{}.rank_tol;
};

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Pmep p = io::parse_pmep(io::read_file(a.input));
  SolverConfig cfg;
  cfg.seed = resolve_seed(a.seed);
  cfg.rotate = !a.no_rotate;
  cfg.extraction = a.extraction;
  cfg.rank_tol = a.rank_tol;
  if (a.basis == "monomial") cfg.basis = Basis::Monomial;
  if (a.basis == "chebyshev") cfg.basis = Basis::Chebyshev;
  if (a.hide) {
    if (*a.hide < 1 || *a.hide > p.vars()) {
      throw UsageError("--hide must lie in 1.." + std::to_string(p.vars()));
    }
    cfg.hide_variable = *a.hide - 1;
  }
  const SolveResult result = solve(p, cfg);
  for (const std::string& w : result.diagnostics.warnings) err << "warning: " << w << "\n";
  err << result.solutions.size() << " solution(s), resultant size "
      << result.diagnostics.resultant_size << ", normal rank "
      << result.diagnostics.normal_rank << "\n";
  emit(io::serialize_solutions(result.solutions, result.diagnostics), a.output, out);
  return kExitOk;
}

int do_verify(const std::string& input, const std::string& solutions, double tol,
              std::ostream& out, std::ostream& err) {
  const Pmep p = io::parse_pmep(io::read_file(input));
  const io::SolutionDocument doc = io::parse_solutions(io::read_file(solutions));
  const ResidualEvaluator res(p);
  std::vector<double> residuals;
  int failing = 0;
  for (std::size_t i = 0; i < doc.solutions.size(); ++i) {
    const Solution& s = doc.solutions[i];
    if (static_cast<int>(s.x.size()) != p.vars()) {
      throw InputError("solutions[" + std::to_string(i) + "] has " +
                       std::to_string(s.x.size()) + " coordinates, expected " +
                       std::to_string(p.vars()));
    }
    residuals.push_back(res(s.x));
    failing += !(residuals.back() <= tol);
  }
  out << io::serialize_residual_report(residuals, tol);
  if (failing > 0) {
    err << failing << " solution(s) exceed the residual tolerance " << tol << "\n";
    return kExitError;
  }
  return kExitOk;
}

int do_oracle(const std::string& input, const std::string& output, OracleConfig cfg,
              const std::optional<std::uint64_t>& seed, std::ostream& out,
              std::ostream& err) {
  const Pmep p = io::parse_pmep(io::read_file(input));
  cfg.seed = resolve_seed(seed);
  const OracleResult r = newton_oracle(p, cfg);
  err << r.solutions.size() << " root(s) from " << cfg.starts << " start(s)\n";
  emit(io::serialize_oracle(r, cfg), output, out);
  return kExitOk;
}

int do_bench_flutter(const std::string& data_path, std::optional<std::uint64_t> seed,
                     std::ostream& out, std::ostream& err) {
  const Pmep p = io::assemble_flutter(io::parse_flutter(io::read_file(data_path)));
  SolverConfig cfg;
  cfg.seed = resolve_seed(seed);
  cfg.hide_variable = 1;
  const SolveResult r = solve(p, cfg);
  err << "resultant size " << r.diagnostics.resultant_size << ", normal rank "
      << r.diagnostics.normal_rank << (r.diagnostics.projected ? ", projected" : "") << "\n";
  std::vector<Solution> sols = r.solutions;
  std::sort(sols.begin(), sols.end(), [](const Solution& a, const Solution& b) {
    return a.x[0].real() < b.x[0].real() ||
           (a.x[0].real() == b.x[0].real() && a.x[1].real() < b.x[1].real());
  });
  out << std::setw(44) << std::left << "tau" << std::setw(44) << "Lambda" << "residual\n";
  auto fmt = [](cplx c) {
    std::ostringstream s;
    s << std::setprecision(15) << std::fixed << c.real() << (c.imag() < 0 ? " - " : " + ")
      << std::setprecision(15) << std::abs(c.imag()) << "i";
    return s.str();
  };
  for (const Solution& s : sols) {
    out << std::setw(44) << fmt(s.x[0]) << std::setw(44) << fmt(s.x[1])
        << std::scientific << std::setprecision(2) << s.residual << std::defaultfloat << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial multiparameter eigenvalue solver", "multipolyeig"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a system document");
  solve_cmd->add_option("input", sa.input, "System document (JSON)")->required();
  solve_cmd->add_option("-o,--output", sa.output, "Write the solution document here");
  solve_cmd->add_option("--basis", sa.basis, "Working basis")
      ->check(CLI::IsMember({"monomial", "chebyshev"}));
  solve_cmd->add_option("--hide", sa.hide, "Hidden variable (1-based); disables rotation");
  solve_cmd->add_flag("--no-rotate", sa.no_rotate, "Skip the random orthogonal rotation");
  solve_cmd->add_option("--seed", sa.seed, "Random seed (default: MULTIPOLYEIG_SEED or 1)");
  solve_cmd->add_option("--residual-tol", sa.extraction.residual_tol)
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--rank-tol", sa.rank_tol)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--nullspace-tol", sa.extraction.nullspace_tol)
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--keep-fraction", sa.extraction.keep_fraction)
      ->check(CLI::Range(0.0, 1.0));

  std::string v_input, v_solutions;
  double v_tol = ExtractionConfig{}.residual_tol;
  auto* verify_cmd = app.add_subcommand("verify", "Recompute residuals of a solution document");
  verify_cmd->add_option("input", v_input, "System document")->required();
  verify_cmd->add_option("solutions", v_solutions, "Solution document")->required();
  verify_cmd->add_option("--residual-tol", v_tol)->check(CLI::PositiveNumber);

  std::string o_input, o_output;
  OracleConfig ocfg;
  std::optional<std::uint64_t> o_seed;
  auto* oracle_cmd = app.add_subcommand("oracle", "Multistart Newton roots of a system");
  oracle_cmd->add_option("input", o_input, "System document")->required();
  oracle_cmd->add_option("-o,--output", o_output, "Write the root document here");
  oracle_cmd->add_option("--starts", ocfg.starts)->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--seed", o_seed);
  oracle_cmd->add_option("--radius", ocfg.radius)->check(CLI::PositiveNumber);

  std::string b_data;
  std::optional<std::uint64_t> b_seed;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark problems");
  bench_cmd->require_subcommand(1);
  auto* flutter_cmd = bench_cmd->add_subcommand("flutter", "Quadratic two-parameter flutter model");
  flutter_cmd->add_option("datafile", b_data, "Flutter matrices (JSON)")->required();
  flutter_cmd->add_option("--seed", b_seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return do_solve(sa, out, err);
    if (*verify_cmd) return do_verify(v_input, v_solutions, v_tol, out, err);
    if (*oracle_cmd) return do_oracle(o_input, o_output, ocfg, o_seed, out, err);
    if (*flutter_cmd) return do_bench_flutter(b_data, b_seed, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace multipolyeig::cli
