// Copyright 2026 The weakcoin authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file boundary.hpp
 * Lower boundaries of the achievable (A_r, B_r) region at fixed depth.
 *
 * Over all depth-n coin games the pairs (A_r, B_r) fill a convex region of
 * the unit square whose lower boundary is a curve b = curve(n, a): one
 * strictly decreasing piece of the form sqrt(1 - c*sqrt(z)) glued at the
 * knee (alpha_n, beta_n) to a straight segment running to (1, 0).  As n
 * grows the curves decrease pointwise to a limit curve with knee
 * (1/3, sqrt(1/3)); no game can beat its own depth's curve, which is what
 * makes the cheating bounds of the optimal families unimprovable.
 *
 * This module evaluates the curves, tests feasibility of candidate points,
 * and constructs explicit games realizing any requested boundary point.
 */
#pragma once

#include "weakcoin/errors.hpp"
#include "weakcoin/game.hpp"

namespace weakcoin {

/// Knee coordinates of the depth-n lower boundary:
/// alpha = (n-1)/(3(n+1)) and beta = sqrt((n+2)/(3n)).  At n = 1 the curve
/// is the straight line 1 - z and beta is reported as NaN (the knee
/// degenerates into the left endpoint).
struct BoundaryParams {
    int n;
    double alpha;
    double beta;
};

/// @throws DomainError for n < 1.
BoundaryParams boundary_params(int n);

/// The depth-n lower boundary: curved piece
/// sqrt(1 - ((1-beta^2)/sqrt(alpha)) sqrt(z)) on [0, alpha], straight piece
/// (beta/(1-alpha))(1-z) on [alpha, 1]; at n = 1 simply 1 - z.
/// @throws DomainError for z outside [0,1] or n < 1.
double boundary_curve(int n, double z);

/// Image of the depth-n boundary under the role-reversal point map
/// (x, y) -> (y^2, sqrt(x)): curved piece
/// sqrt(1 - ((1-alpha)/beta) sqrt(w)) on [0, beta^2], straight piece
/// (sqrt(alpha)/(1-beta^2))(1-w) on [beta^2, 1].  Coincides with the
/// depth-(n+1) boundary left of its knee and lies above it elsewhere.
/// @throws DomainError for w outside [0,1] or n < 1.
double flipped_boundary_curve(int n, double w);

/// Pointwise limit of the boundaries as the depth grows:
/// sqrt(1 - (2/sqrt(3)) sqrt(z)) on [0, 1/3], (sqrt(3)/2)(1-z) on [1/3, 1].
/// @throws DomainError for z outside [0,1].
double boundary_curve_limit(double z);

/// A candidate (A_r, B_r) pair.
struct BoundaryPoint {
    double a;
    double b;
};

/// True iff the point lies on or above the depth-n boundary within @p tol,
/// i.e. some depth-n game can realize it.
bool is_feasible(int n, BoundaryPoint point, double tol = 1e-9);

/// Constructs a depth-n game whose root pair equals (z, boundary_curve(n,z))
/// to ~1e-9.  Points on the straight piece are realized by mixing, at the
/// top coin, the knee-achieving game with the all-ones game; points on the
/// curved piece are realized by building the corresponding straight-piece
/// point one depth down and reversing roles (which applies the point map
/// (x, y) -> (y^2, sqrt(x))).  The seam z = alpha_n uses the straight
/// construction; both agree there.
/// @throws DomainError for z outside [0,1] or n < 1.
CoinGame game_for_boundary_point(int n, double z);

} // namespace weakcoin
