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

#include "weakcoin/boundary.hpp"

#include <cmath>
#include <limits>

#include "weakcoin/families.hpp"

namespace weakcoin {

namespace {

void require_unit_interval(double z, const char *name) {
    if (!(z >= 0.0 && z <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0,1], got " +
                          std::to_string(z));
    }
}

/// Depth-m game with every leaf labeled 1 (the second party always wins;
/// roots (A, B, H) = (0, 1, 1)).  Interior biases are irrelevant and set
/// to 1 for deterministic serialization.
CoinGame all_ones_game(int m) {
    return {m, std::vector<double>(CoinGame::nodes_for_depth(m), 1.0)};
}

} // namespace

BoundaryParams boundary_params(int n) {
    if (n < 1) {
        throw DomainError("boundary depth must be at least 1, got " +
                          std::to_string(n));
    }
    const double dn = static_cast<double>(n);
    BoundaryParams params{};
    params.n = n;
    params.alpha = (dn - 1.0) / (3.0 * (dn + 1.0));
    params.beta = n == 1 ? std::numeric_limits<double>::quiet_NaN()
                         : std::sqrt((dn + 2.0) / (3.0 * dn));
    return params;
}

double boundary_curve(int n, double z) {
    require_unit_interval(z, "z");
    if (n < 1) {
        throw DomainError("boundary depth must be at least 1, got " +
                          std::to_string(n));
    }
    if (n == 1) {
        return 1.0 - z;
    }
    const BoundaryParams p = boundary_params(n);
    if (z <= p.alpha) {
        const double slope =
            (1.0 - p.beta * p.beta) / std::sqrt(p.alpha);
        return std::sqrt(1.0 - slope * std::sqrt(z));
    }
    return p.beta / (1.0 - p.alpha) * (1.0 - z);
}

double flipped_boundary_curve(int n, double w) {
    require_unit_interval(w, "w");
    if (n < 1) {
        throw DomainError("boundary depth must be at least 1, got " +
                          std::to_string(n));
    }
    if (n == 1) {
        // beta_1^2 = 1, so the curved piece covers the whole interval:
        // the image of (z, 1-z) under (x, y) -> (y^2, sqrt(x)).
        return std::sqrt(1.0 - std::sqrt(w));
    }
    const BoundaryParams p = boundary_params(n);
    const double beta2 = p.beta * p.beta;
    if (w <= beta2) {
        return std::sqrt(1.0 - (1.0 - p.alpha) / p.beta * std::sqrt(w));
    }
    return std::sqrt(p.alpha) / (1.0 - beta2) * (1.0 - w);
}

double boundary_curve_limit(double z) {
    require_unit_interval(z, "z");
    if (z <= 1.0 / 3.0) {
        return std::sqrt(1.0 - 2.0 / std::sqrt(3.0) * std::sqrt(z));
    }
    return std::sqrt(3.0) / 2.0 * (1.0 - z);
}

bool is_feasible(int n, BoundaryPoint point, double tol) {
    return point.b >= boundary_curve(n, point.a) - tol;
}

CoinGame game_for_boundary_point(int n, double z) {
    require_unit_interval(z, "z");
    if (n < 1) {
        throw DomainError("boundary depth must be at least 1, got " +
                          std::to_string(n));
    }
    if (n == 1) {
        // Depth-1 game with top coin 1-z over leaves (1, 0): roots
        // (A, B) = (z, 1-z), exactly the straight depth-1 boundary.
        return {1, {1.0 - z, 1.0, 0.0}};
    }
    const BoundaryParams p = boundary_params(n);
    if (z >= p.alpha) {
        // Straight piece: mix the knee game with the all-ones game at the
        // top coin.  The depth-(n-1) optimal member has roots
        // (beta_n^2, sqrt(alpha_n)), so as a subgame it contributes the
        // knee (alpha_n, beta_n), while the all-ones subgame contributes
        // (1, 0); the mixture with gamma = (1-z)/(1-alpha) lands on
        // (z, boundary_curve(n, z)).
        const double gamma = (1.0 - z) / (1.0 - p.alpha);
        return compose(gamma, optimal_game(n - 1), all_ones_game(n - 1));
    }
    // Curved piece: the role-reversal point map (x, y) -> (y^2, sqrt(x))
    // sends the depth-(n-1) straight-piece point (u, curve(n-1, u)) with
    // u = boundary_curve(n, z)^2 onto (z, boundary_curve(n, z)); u lands
    // right of the depth-(n-1) knee, so the recursion terminates in one
    // step.
    const double b = boundary_curve(n, z);
    return reverse_roles(game_for_boundary_point(n - 1, b * b));
}

} // namespace weakcoin
