// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "multipolyeig/io.hpp"
#include "systems.hpp"

namespace mpe = multipolyeig;
namespace io = multipolyeig::io;
using mpe::Basis;
using mpe::cplx;
using mpe::Matrix;
using mpe::Pmep;
using namespace mpe::testing;

namespace {

const std::string kData = MULTIPOLYEIG_TEST_DATA_DIR;

void expect_same(const Pmep& a, const Pmep& b) {
  ASSERT_EQ(a.vars(), b.vars());
  EXPECT_EQ(a.degrees(), b.degrees());
  EXPECT_EQ(a.basis(), b.basis());
  for (int i = 0; i < a.vars(); ++i) {
    ASSERT_EQ(a[i].size(), b[i].size());
    for (std::size_t f = 0; f < a[i].coeffs().size(); ++f) {
      EXPECT_EQ(a[i].coeffs()[f], b[i].coeffs()[f]);
    }
  }
}

std::string small_doc(const std::string& equations) {
  return R"({"format_version": 1, "d": 2, "basis": "monomial", "tau": [1, 1], "equations": )" +
         equations + "}";
}

std::string one_equation(const std::string& first_entry = "[1, 0]") {
  return R"({"n": 1, "coeffs": [)" + first_entry + R"(, [2, 0], [3, 0], [4, -1]]})";
}

}  // namespace

TEST(ParsePmep, ShippedExampleMatchesFixture) {
  const Pmep p = io::parse_pmep(io::read_file(kData + "/example13.json"));
  expect_same(p, example13());
  expect_same(io::parse_pmep(io::read_file(kData + "/example20.json")), example20());
}

TEST(ParsePmep, CanonicalRoundTripIsByteIdentical) {
  const std::string text = io::read_file(kData + "/example13.json");
  EXPECT_EQ(io::serialize_pmep(io::parse_pmep(text)), text);
  std::mt19937_64 rng(1);
  for (Basis b : {Basis::Monomial, Basis::Chebyshev}) {
    const Pmep p = random_pmep({2, 1, 3}, {1, 2, 1}, rng, b);
    const std::string s = io::serialize_pmep(p);
    const Pmep back = io::parse_pmep(s);
    expect_same(back, p);
    EXPECT_EQ(io::serialize_pmep(back), s);
  }
}

TEST(ParsePmep, ColexicographicEntryOrder) {
  // Entries run over (row, col, i_1, i_2) with row fastest.
  const std::string eq = R"({"n": 2, "coeffs": [)"
                         R"([1,0],[2,0],[3,0],[4,0], [5,0],[6,0],[7,0],[8,0],)"
                         R"([9,0],[10,0],[11,0],[12,0], [13,0],[14,0],[15,0],[16,0]]})";
  const Pmep p = io::parse_pmep(small_doc("[" + eq + ", " + eq + "]"));
  const std::vector<int> i10{1, 0};
  EXPECT_EQ(p[0].coeff(i10), mat2(5, 7, 6, 8));
  const std::vector<int> i11{1, 1};
  EXPECT_EQ(p[0].coeff(i11)(1, 0), cplx(14.0));
}

TEST(ParsePmep, MissingEquationNamesPath) {
  try {
    io::parse_pmep(small_doc("[" + one_equation() + "]"));
    FAIL() << "expected a parse error";
  } catch (const mpe::ParseError& e) {
    EXPECT_EQ(e.path(), "equations[1]");
  }
}

TEST(ParsePmep, RejectsSchemaViolations) {
  const std::string good = small_doc("[" + one_equation() + ", " + one_equation() + "]");
  EXPECT_NO_THROW(io::parse_pmep(good));
  auto path_of = [](const std::string& text) {
    try {
      io::parse_pmep(text);
    } catch (const mpe::ParseError& e) {
      return e.path();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(path_of(small_doc("[" + one_equation("[1]") + ", " + one_equation() + "]")),
            "equations[0].coeffs[0]");
  EXPECT_THROW(io::parse_pmep(small_doc("[" + one_equation("[1e400, 0]") + ", " +
                                        one_equation() + "]")),
               mpe::ParseError);
  EXPECT_EQ(path_of(R"({"format_version": 2})"), "format_version");
  std::string bad_basis = good;
  bad_basis.replace(bad_basis.find("monomial"), 8, "legendre");
  EXPECT_EQ(path_of(bad_basis), "basis");
  const std::string short_eq = R"({"n": 1, "coeffs": [[1, 0]]})";
  EXPECT_EQ(path_of(small_doc("[" + short_eq + ", " + one_equation() + "]")),
            "equations[0].coeffs");
  EXPECT_THROW(io::parse_pmep("not json"), mpe::ParseError);
  EXPECT_THROW(io::parse_pmep("[]"), mpe::ParseError);
}

TEST(ParsePmep, TruncatedDocumentsNeverCrash) {
  const std::string text = io::read_file(kData + "/example20.json");
  for (std::size_t len = 0; len < text.size(); ++len) {
    const std::string cut = text.substr(0, len);
    bool parsed = true;
    try {
      io::parse_pmep(cut);
    } catch (const mpe::ParseError&) {
      parsed = false;
    }
    // Only trailing whitespace may be cut from a valid document.
    if (parsed) EXPECT_EQ(text.find_first_not_of(" \n", len), std::string::npos);
  }
}

TEST(ParsePmep, MutatedDocumentsNeverCrash) {
  const std::string text = io::read_file(kData + "/example13.json");
  std::mt19937_64 rng(2);
  const std::string alphabet = "{}[],:\"0123456789.-eE ntrufalsx";
  std::uniform_int_distribution<std::size_t> pos(0, text.size() - 1);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string m = text;
    for (int k = 0; k < 3; ++k) m[pos(rng)] = alphabet[ch(rng)];
    try {
      io::parse_pmep(m);
    } catch (const mpe::ParseError&) {
    } catch (const mpe::InputError&) {
    }
  }
}

TEST(Solutions, RoundTrip) {
  mpe::SolutionSet set;
  set.push_back({{cplx(0.1, -0.2), cplx(1.0 / 3.0, 2e-17)}, 1.25e-15, true, false, false});
  set.push_back({{cplx(-4.0, 0.0), cplx(0.0, 1.0)}, 3e-11, true, true, false});
  mpe::SolveDiagnostics diag;
  diag.resultant_size = 8;
  diag.normal_rank = 5;
  diag.projected = true;
  diag.dropped_eigenpairs = 2;
  diag.rotation_seed = 99;
  diag.rotated = true;
  diag.hidden_variable = 1;
  diag.warnings = {"a warning"};
  const std::string text = io::serialize_solutions(set, diag);
  const io::SolutionDocument doc = io::parse_solutions(text);
  ASSERT_EQ(doc.solutions.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(doc.solutions[i].x, set[i].x);
    EXPECT_EQ(doc.solutions[i].residual, set[i].residual);
    EXPECT_EQ(doc.solutions[i].projected, set[i].projected);
  }
  EXPECT_EQ(doc.diagnostics.resultant_size, 8);
  EXPECT_EQ(doc.diagnostics.normal_rank, 5);
  EXPECT_TRUE(doc.diagnostics.projected);
  EXPECT_EQ(doc.diagnostics.dropped_eigenpairs, 2);
  EXPECT_EQ(doc.diagnostics.rotation_seed, 99u);
  EXPECT_EQ(doc.diagnostics.hidden_variable, 1);
  EXPECT_EQ(doc.diagnostics.warnings, diag.warnings);
  EXPECT_EQ(io::serialize_solutions(doc.solutions, doc.diagnostics), text);
}

TEST(Solutions, RejectsMalformed) {
  EXPECT_THROW(io::parse_solutions(R"({"solutions": [{"x": []}]})"), mpe::ParseError);
  EXPECT_THROW(io::parse_solutions(R"({"solutions": [{"y": [[1, 0]]}]})"), mpe::ParseError);
  EXPECT_THROW(io::parse_solutions(R"({"solutions": 3})"), mpe::ParseError);
}

TEST(ResidualReport, CountsFailures) {
  const std::string text = io::serialize_residual_report({1e-12, 1e-3, 2e-9}, 1e-8);
  EXPECT_NE(text.find("\"failing\": 1"), std::string::npos);
}

TEST(Flutter, ParseAndAssemble) {
  const std::string doc = R"({
    "M0": [[[1, 0], [2, 0]], [[3, 0], [4, 0]]],
    "G0": [[[0, 1], [0, 0]], [[0, 0], [0, 1]]],
    "G1": [[[5, 0], [0, 0]], [[0, 0], [6, 0]]],
    "G2": [[[0, 0], [7, 2]], [[8, 0], [0, 0]]],
    "K0": [[[9, 0], [0, 0]], [[0, 0], [1, -1]]]
  })";
  const io::FlutterData data = io::parse_flutter(doc);
  EXPECT_EQ(data.M0, mat2(1, 2, 3, 4));
  EXPECT_EQ(data.G2, mat2(0, cplx(7, 2), 8, 0));
  const Pmep p = io::assemble_flutter(data);
  ASSERT_EQ(p.vars(), 2);
  EXPECT_EQ(p.degrees(), (std::vector<int>{2, 1}));
  const std::vector<cplx> x{cplx(0.3, 0.1), cplx(-0.7, 0.2)};
  const Matrix direct = data.M0 + data.G0 + x[0] * data.G1 + x[0] * x[0] * data.G2 - x[1] * data.K0;
  EXPECT_LT((mpe::eval(p[0], x) - direct).norm(), 1e-14);
  const std::vector<cplx> xc{std::conj(x[0]), std::conj(x[1])};
  EXPECT_LT((mpe::eval(p[1], xc) - direct.conjugate()).norm(), 1e-14);

  EXPECT_THROW(io::parse_flutter(R"({"M0": [[[1, 0]]]})"), mpe::ParseError);
  EXPECT_THROW(io::parse_flutter(R"({"M0": [[[1, 0]]], "G0": [[[1, 0], [2, 0]]],
                                     "G1": [[[1, 0]]], "G2": [[[1, 0]]], "K0": [[[1, 0]]]})"),
               mpe::ParseError);
}
