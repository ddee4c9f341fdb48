// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include "multipolyeig/basis.hpp"

#include <cmath>
#include <numbers>

namespace multipolyeig {

const char* to_string(Basis basis) {
  return basis == Basis::Monomial ? "monomial" : "chebyshev";
}

namespace basis {

std::vector<double> chebyshev_points(int m) {
  std::vector<double> x(m);
  for (int j = 0; j < m; ++j) {
    x[j] = std::cos(std::numbers::pi * (j + 0.5) / m);
  }
  return x;
}

RealMatrix chebyshev_interpolation_matrix(int m) {
  RealMatrix c(m, m);
  for (int k = 0; k < m; ++k) {
    const double w = (k == 0 ? 1.0 : 2.0) / m;
    for (int j = 0; j < m; ++j) {
      c(k, j) = w * std::cos(k * std::numbers::pi * (j + 0.5) / m);
    }
  }
  return c;
}

Matrix roots_of_unity_interpolation_matrix(int m) {
  Matrix f(m, m);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < m; ++j) {
      // Reduce the exponent first so large products keep full accuracy.
      const int e = (k * j) % m;
      f(k, j) = std::polar(1.0 / m, -2.0 * std::numbers::pi * e / m);
    }
  }
  return f;
}

RealMatrix monomial_to_chebyshev(int m) {
  RealMatrix out = RealMatrix::Zero(m, m);
  if (m == 0) return out;
  out(0, 0) = 1.0;
  // x * T_0 = T_1, x * T_k = (T_{k-1} + T_{k+1}) / 2.
  for (int j = 1; j < m; ++j) {
    for (int k = 0; k < j; ++k) {
      const double a = out(k, j - 1);
      if (a == 0.0) continue;
      if (k == 0) {
        out(1, j) += a;
      } else {
        out(k - 1, j) += 0.5 * a;
        out(k + 1, j) += 0.5 * a;
      }
    }
  }
  return out;
}

RealMatrix chebyshev_to_monomial(int m) {
  RealMatrix out = RealMatrix::Zero(m, m);
  if (m == 0) return out;
  out(0, 0) = 1.0;
  if (m > 1) out(1, 1) = 1.0;
  for (int j = 2; j < m; ++j) {
    for (int k = 0; k < j; ++k) {
      out(k + 1, j) += 2.0 * out(k, j - 1);
      out(k, j) -= out(k, j - 2);
    }
  }
  return out;
}

RealMatrix conversion(Basis from, Basis to, int m) {
  if (from == to) return RealMatrix::Identity(m, m);
  return from == Basis::Monomial ? monomial_to_chebyshev(m)
                                 : chebyshev_to_monomial(m);
}

RealMatrix derivative(Basis basis, int m) {
  RealMatrix d = RealMatrix::Zero(m, m);
  if (basis == Basis::Monomial) {
    for (int j = 1; j < m; ++j) d(j - 1, j) = j;
    return d;
  }
  // T_j' = 2 j (T_{j-1} + T_{j-3} + ...), with the T_0 term halved.
  for (int j = 1; j < m; ++j) {
    for (int k = j - 1; k >= 0; k -= 2) {
      d(k, j) = (k == 0 ? 1.0 : 2.0) * j;
    }
  }
  return d;
}

Vector values(Basis basis, int m, cplx z) {
  Vector v(m);
  if (m == 0) return v;
  v(0) = 1.0;
  if (m > 1) v(1) = z;
  for (int k = 2; k < m; ++k) {
    v(k) = basis == Basis::Monomial ? v(k - 1) * z
                                    : 2.0 * z * v(k - 1) - v(k - 2);
  }
  return v;
}

}  // namespace basis
}  // namespace multipolyeig
