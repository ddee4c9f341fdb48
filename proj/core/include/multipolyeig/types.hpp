// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace multipolyeig {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Univariate basis used along every tensor axis of a coefficient array.
/// Both bases are degree graded, so a coefficient tensor has the same shape
/// in either one.
enum class Basis { Monomial, Chebyshev };

const char* to_string(Basis basis);

// Error hierarchy. Every failure raised by the library derives from Error so
// callers (the CLI in particular) can map them to exit codes in one place.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, invalid permutations, etc.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid document. `path()` names the offending field, e.g. "equations[1].n".
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Operator determinant Delta_0 is numerically singular.
class SingularMepError : public Error {
 public:
  using Error::Error;
};

/// Random projection of a singular matrix polynomial could not reach the
/// measured normal rank.
class ProjectionFailure : public Error {
 public:
  using Error::Error;
};

/// A reduced subproblem lost a coordinate again.
class ReductionDepthExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (e.g. inexact division).
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace multipolyeig
