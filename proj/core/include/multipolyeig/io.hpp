// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "multipolyeig/extract.hpp"
#include "multipolyeig/mpoly.hpp"
#include "multipolyeig/oracle.hpp"
#include "multipolyeig/solver.hpp"

namespace multipolyeig::io {

inline constexpr int kFormatVersion = 1;

/// Parses a system document:
///
///   { "format_version": 1, "d": 2, "basis": "monomial", "tau": [2, 1],
///     "equations": [ { "n": 2, "coeffs": [[re, im], ...] }, ... ] }
///
/// Each equation lists n^2 prod(tau_k + 1) entries in colexicographic order
/// of (row, col, i_1, ..., i_d). Throws ParseError naming the bad field.
Pmep parse_pmep(const std::string& text);

/// Canonical text: fixed key order, one coefficient pair per line.
std::string serialize_pmep(const Pmep& p);

struct SolutionDocument {
  SolutionSet solutions;
  SolveDiagnostics diagnostics;
};

std::string serialize_solutions(const SolutionSet& solutions,
                                const SolveDiagnostics& diagnostics);

/// Root document of the Newton oracle; same solution layout as above.
std::string serialize_oracle(const OracleResult& result, const OracleConfig& cfg);

/// Residuals recomputed by `verify`, with the count above tol.
std::string serialize_residual_report(const std::vector<double>& residuals, double tol);

/// Reads solutions back; diagnostics fields that are present are restored.
SolutionDocument parse_solutions(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Matrices of the two-parameter quadratic flutter model.
struct FlutterData {
  Matrix M0, G0, G1, G2, K0;
};

/// JSON object with keys M0, G0, G1, G2, K0; every matrix is a row-major
/// list of rows of [re, im] pairs, all of one square size.
FlutterData parse_flutter(const std::string& text);

/// Variables (tau, Lambda); the second equation conjugates every
/// coefficient so that only real solutions of the model are shared.
Pmep assemble_flutter(const FlutterData& data);

}  // namespace multipolyeig::io
