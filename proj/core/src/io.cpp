// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/io.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace multipolyeig::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr long long kMaxEntries = 100'000'000;

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

long long integer(const json& v, const std::string& path, long long lo, long long hi) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi) {
    throw ParseError(path, "value " + std::to_string(x) + " out of range [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(path, "number is not finite");
  return x;
}

cplx complex_pair(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ParseError(path, "expected [re, im]");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

Basis parse_basis(const json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path, "expected a string");
  const std::string s = v.get<std::string>();
  if (s == "monomial") return Basis::Monomial;
  if (s == "chebyshev") return Basis::Chebyshev;
  throw ParseError(path, "unknown basis '" + s + "'");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
}

std::string num(double x) { return json(x).dump(); }

std::string pair_text(cplx c) { return "[" + num(c.real()) + ", " + num(c.imag()) + "]"; }

ordered_json pair_json(cplx c) { return ordered_json::array({c.real(), c.imag()}); }

bool is_flat(const ordered_json& j) {
  return std::none_of(j.begin(), j.end(), [](const ordered_json& e) { return e.is_structured(); });
}

// Like dump(2), but arrays of scalars stay on one line.
void write_json(const ordered_json& j, int indent, std::ostringstream& out) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      out << (first ? "" : ",\n") << pad << ordered_json(it.key()).dump() << ": ";
      write_json(it.value(), indent + 2, out);
      first = false;
    }
    out << "\n" << std::string(indent, ' ') << "}";
  } else if (j.is_array() && (j.empty() || is_flat(j))) {
    out << "[";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << j[i].dump();
    out << "]";
  } else if (j.is_array()) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << (i ? ",\n" : "") << pad;
      write_json(j[i], indent + 2, out);
    }
    out << "\n" << std::string(indent, ' ') << "]";
  } else {
    out << j.dump();
  }
}

std::string to_text(const ordered_json& j) {
  std::ostringstream out;
  write_json(j, 0, out);
  out << "\n";
  return out.str();
}

ordered_json solutions_json(const SolutionSet& solutions, bool flags) {
  ordered_json list = ordered_json::array();
  for (const Solution& s : solutions) {
    ordered_json x = ordered_json::array();
    for (const cplx& c : s.x) x.push_back(pair_json(c));
    ordered_json entry;
    entry["x"] = std::move(x);
    entry["residual"] = s.residual;
    if (flags) {
      entry["projected"] = s.projected;
      entry["reduced"] = s.reduced;
    }
    list.push_back(std::move(entry));
  }
  return list;
}

Matrix parse_matrix(const json& v, const std::string& path, int n) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    throw ParseError(path, "expected " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != n) {
      throw ParseError(rp, "expected " + std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) m(i, j) = complex_pair(v[i][j], rp + "[" + std::to_string(j) + "]");
  }
  return m;
}

}  // namespace

Pmep parse_pmep(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("", "document must be an object");

  const long long version = integer(field(doc, "format_version", ""), "format_version", 1, INT_MAX);
  if (version != kFormatVersion) {
    throw ParseError("format_version", "unsupported version " + std::to_string(version));
  }
  const int d = static_cast<int>(integer(field(doc, "d", ""), "d", 1, 64));
  const Basis basis = parse_basis(field(doc, "basis", ""), "basis");

  const json& tau_json = field(doc, "tau", "");
  if (!tau_json.is_array() || static_cast<int>(tau_json.size()) != d) {
    throw ParseError("tau", "expected " + std::to_string(d) + " degree bounds");
  }
  std::vector<int> tau;
  long long terms = 1;
  for (int k = 0; k < d; ++k) {
    const std::string path = "tau[" + std::to_string(k) + "]";
    tau.push_back(static_cast<int>(integer(tau_json[k], path, 0, 4096)));
    terms *= tau.back() + 1;
    if (terms > kMaxEntries) throw ParseError(path, "coefficient tensor too large");
  }

  const json& eqs = field(doc, "equations", "");
  if (!eqs.is_array()) throw ParseError("equations", "expected an array");
  if (static_cast<int>(eqs.size()) > d) {
    throw ParseError("equations[" + std::to_string(d) + "]", "more equations than variables");
  }
  std::vector<MatrixPoly> polys;
  for (int i = 0; i < d; ++i) {
    const std::string path = "equations[" + std::to_string(i) + "]";
    if (i >= static_cast<int>(eqs.size())) throw ParseError(path, "missing equation");
    const json& eq = eqs[i];
    if (!eq.is_object()) throw ParseError(path, "expected an object");
    const int n = static_cast<int>(integer(field(eq, "n", path), path + ".n", 1, 46340));
    const long long count = static_cast<long long>(n) * n * terms;
    if (count > kMaxEntries) throw ParseError(path + ".n", "coefficient tensor too large");
    const json& coeffs = field(eq, "coeffs", path);
    const std::string cpath = path + ".coeffs";
    if (!coeffs.is_array()) throw ParseError(cpath, "expected an array");
    if (static_cast<long long>(coeffs.size()) != count) {
      throw ParseError(cpath, "expected " + std::to_string(count) + " entries, found " +
                                  std::to_string(coeffs.size()));
    }
    std::vector<Matrix> mats(terms, Matrix(n, n));
    std::size_t flat = 0;
    for (long long t = 0; t < terms; ++t) {
      for (int col = 0; col < n; ++col) {
        for (int row = 0; row < n; ++row, ++flat) {
          mats[t](row, col) = complex_pair(coeffs[flat], cpath + "[" + std::to_string(flat) + "]");
        }
      }
    }
    polys.emplace_back(n, tau, std::move(mats), basis);
  }
  try {
    return Pmep(std::move(polys));
  } catch (const InputError& e) {
    throw ParseError("equations", e.what());
  }
}

std::string serialize_pmep(const Pmep& p) {
  std::ostringstream out;
  out << "{\n  \"format_version\": " << kFormatVersion << ",\n  \"d\": " << p.vars()
      << ",\n  \"basis\": \"" << to_string(p.basis()) << "\",\n  \"tau\": [";
  for (int k = 0; k < p.vars(); ++k) out << (k ? ", " : "") << p.degrees()[k];
  out << "],\n  \"equations\": [";
  for (int i = 0; i < p.vars(); ++i) {
    const MatrixPoly& poly = p[i];
    out << (i ? "," : "") << "\n    {\n      \"n\": " << poly.size()
        << ",\n      \"coeffs\": [";
    bool first = true;
    for (const Matrix& m : poly.coeffs()) {
      for (int col = 0; col < poly.size(); ++col) {
        for (int row = 0; row < poly.size(); ++row) {
          out << (first ? "\n" : ",\n") << "        " << pair_text(m(row, col));
          first = false;
        }
      }
    }
    out << "\n      ]\n    }";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::string serialize_solutions(const SolutionSet& solutions,
                                const SolveDiagnostics& diag) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["solutions"] = solutions_json(solutions, true);
  ordered_json dj;
  dj["resultant_size"] = diag.resultant_size;
  dj["normal_rank"] = diag.normal_rank;
  dj["projected"] = diag.projected;
  dj["dropped_eigenpairs"] = diag.dropped_eigenpairs;
  dj["rotation_seed"] = diag.rotation_seed;
  dj["rotated"] = diag.rotated;
  dj["unrotated_fallback"] = diag.unrotated_fallback;
  dj["hidden_variable"] = diag.hidden_variable + 1;
  dj["reduced"] = diag.reduced;
  dj["candidates"] = diag.candidates;
  dj["warnings"] = diag.warnings;
  doc["diagnostics"] = std::move(dj);
  return to_text(doc);
}

std::string serialize_oracle(const OracleResult& result, const OracleConfig& cfg) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["solutions"] = solutions_json(result.solutions, false);
  ordered_json dj;
  dj["starts"] = cfg.starts;
  dj["converged"] = result.converged;
  dj["dropped"] = result.dropped;
  dj["seed"] = cfg.seed;
  doc["diagnostics"] = std::move(dj);
  return to_text(doc);
}

std::string serialize_residual_report(const std::vector<double>& residuals, double tol) {
  ordered_json doc;
  double worst = 0.0;
  int failing = 0;
  for (double r : residuals) {
    worst = std::max(worst, r);
    failing += !(r <= tol);
  }
  doc["residuals"] = residuals;
  doc["max_residual"] = worst;
  doc["residual_tol"] = tol;
  doc["failing"] = failing;
  return to_text(doc);
}

SolutionDocument parse_solutions(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("", "document must be an object");
  const json& list = field(doc, "solutions", "");
  if (!list.is_array()) throw ParseError("solutions", "expected an array");
  SolutionDocument out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "solutions[" + std::to_string(i) + "]";
    const json& x = field(list[i], "x", path);
    if (!x.is_array() || x.empty()) throw ParseError(path + ".x", "expected a nonempty array");
    Solution s;
    for (std::size_t k = 0; k < x.size(); ++k) {
      s.x.push_back(complex_pair(x[k], path + ".x[" + std::to_string(k) + "]"));
    }
    if (list[i].contains("residual")) s.residual = number(list[i]["residual"], path + ".residual");
    if (list[i].contains("projected") && list[i]["projected"].is_boolean()) {
      s.projected = list[i]["projected"].get<bool>();
    }
    if (list[i].contains("reduced") && list[i]["reduced"].is_boolean()) {
      s.reduced = list[i]["reduced"].get<bool>();
    }
    out.solutions.push_back(std::move(s));
  }
  if (doc.contains("diagnostics") && doc["diagnostics"].is_object()) {
    const json& dj = doc["diagnostics"];
    SolveDiagnostics& diag = out.diagnostics;
    diag.resultant_size = dj.value("resultant_size", 0);
    diag.normal_rank = dj.value("normal_rank", 0);
    diag.projected = dj.value("projected", false);
    diag.dropped_eigenpairs = dj.value("dropped_eigenpairs", 0);
    diag.rotation_seed = dj.value("rotation_seed", std::uint64_t{0});
    diag.rotated = dj.value("rotated", false);
    diag.unrotated_fallback = dj.value("unrotated_fallback", false);
    diag.hidden_variable = dj.value("hidden_variable", 1) - 1;
    diag.reduced = dj.value("reduced", false);
    diag.candidates = dj.value("candidates", 0);
    if (dj.contains("warnings") && dj["warnings"].is_array()) {
      for (const json& w : dj["warnings"]) {
        if (w.is_string()) diag.warnings.push_back(w.get<std::string>());
      }
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write to '" + path + "' failed");
}

FlutterData parse_flutter(const std::string& text) {
  const json doc = parse_json(text);
  const json& m0 = field(doc, "M0", "");
  if (!m0.is_array() || m0.empty()) throw ParseError("M0", "expected a nonempty matrix");
  const int n = static_cast<int>(m0.size());
  FlutterData data;
  data.M0 = parse_matrix(m0, "M0", n);
  data.G0 = parse_matrix(field(doc, "G0", ""), "G0", n);
  data.G1 = parse_matrix(field(doc, "G1", ""), "G1", n);
  data.G2 = parse_matrix(field(doc, "G2", ""), "G2", n);
  data.K0 = parse_matrix(field(doc, "K0", ""), "K0", n);
  return data;
}

Pmep assemble_flutter(const FlutterData& data) {
  const int n = static_cast<int>(data.M0.rows());
  auto build = [&](bool conj) {
    auto c = [&](const Matrix& m) { return conj ? Matrix(m.conjugate()) : m; };
    return MatrixPoly::from_terms(n, {2, 1},
                                  {{{0, 0}, c(data.M0 + data.G0)},
                                   {{1, 0}, c(data.G1)},
                                   {{2, 0}, c(data.G2)},
                                   {{0, 1}, -c(data.K0)}});
  };
  return Pmep({build(false), build(true)});
}

}  // namespace multipolyeig::io
