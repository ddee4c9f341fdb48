// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "multipolyeig/types.hpp"

// Univariate helpers shared by every module: node sets, transforms between
// values and coefficients, and basis changes. All matrices act on a
// coefficient vector indexed by degree 0..m-1.

namespace multipolyeig::basis {

/// Chebyshev points of the first kind, cos(pi (j + 1/2) / m), j = 0..m-1.
std::vector<double> chebyshev_points(int m);

/// m x m matrix mapping values at chebyshev_points(m) to the Chebyshev
/// coefficients of the interpolant of degree m-1.
RealMatrix chebyshev_interpolation_matrix(int m);

/// m x m matrix mapping values at the m-th roots of unity exp(2 pi i j / m)
/// to monomial coefficients (inverse DFT).
Matrix roots_of_unity_interpolation_matrix(int m);

/// Column j holds the Chebyshev coefficients of x^j (m x m).
RealMatrix monomial_to_chebyshev(int m);

/// Column j holds the monomial coefficients of T_j (m x m).
RealMatrix chebyshev_to_monomial(int m);

/// m x m coefficient map `to <- from`; identity when the bases agree.
RealMatrix conversion(Basis from, Basis to, int m);

/// m x m derivative operator on coefficient vectors (top coefficient of the
/// result is zero).
RealMatrix derivative(Basis basis, int m);

/// phi_0(z) .. phi_{m-1}(z).
Vector values(Basis basis, int m, cplx z);

}  // namespace multipolyeig::basis
