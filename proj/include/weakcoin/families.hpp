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
 * @file families.hpp
 * The named game families with closed-form operating points.
 *
 * The depth-n member of the optimal family is built inductively: a top coin
 * gamma_n = n/(n+2), the depth-(n-1) member as the left subgame, and a
 * surely-losing subtree on the right.  Every interior node at depth d holds
 * gamma_{n-d}, and the roots admit closed forms
 *
 *   A_r = (n+3)/(3(n+1)),  B_r = sqrt(n/(3(n+2))),
 *   H_r = n/(2(n+1)) for even n,  (n+1)/(2(n+2)) for odd n.
 *
 * Two derived families share the structure and differ only in the top coin:
 * the fair variant (even n) picks the root so the honest outcome is an
 * exact 50/50 split, and the t-parametrized variant exposes the root as a
 * free parameter trading one party's cheating bound against the other's.
 *
 * Also here: the per-round coin schedule of the implementable message
 * protocol and the parity rule describing which final transcripts count as
 * second-party wins.
 */
#pragma once

#include <string>
#include <vector>

#include "weakcoin/errors.hpp"
#include "weakcoin/game.hpp"

namespace weakcoin {

/// Closed-form description of the depth-n optimal family member.
struct OptimalFamilyPoint {
    int n;
    double gamma;   ///< top coin n/(n+2)
    double a_root;  ///< (n+3)/(3(n+1))
    double b_root;  ///< sqrt(n/(3(n+2)))
    double h_root;  ///< n/(2(n+1)) even n, (n+1)/(2(n+2)) odd n
    double pa;      ///< 1 - h_root
    double pa_star; ///< 2(n+3)/(3(n+2)) even n, 2(n+2)/(3(n+1)) odd n
    double pb_star; ///< 2(n+1)/(3(n+2)) even n, 2n/(3(n+1)) odd n

    [[nodiscard]] double bias() const noexcept {
        return (pa_star > pb_star ? pa_star : pb_star) - 0.5;
    }
};

/// @throws DomainError for n < 1.
OptimalFamilyPoint optimal_family_point(int n);

/// Root values of a game evaluated without materializing its tree.
struct RootValues {
    double a_root;
    double b_root;
    double h_root;
};

/// Root triple of the depth-n optimal family member, computed by running
/// the subgame recombination identities up the inductive structure in O(n)
/// (usable far beyond the materialization depth limit).
/// @throws DomainError for n < 1.
RootValues optimal_game_roots(int n);

/// Root triple of the depth-n optimal structure with its top coin replaced
/// by @p top (covers the fair and t-parametrized variants).
/// @throws DomainError for n < 1 or top outside [0,1].
RootValues family_roots_with_top(int n, double top);

/// Materialized depth-n optimal family member.
/// @throws DomainError for n < 1; SizeError beyond the materialization
///         depth limit.
CoinGame optimal_game(int n);

/// Optimal structure with the top coin moved to 1/(2 - 2 H_r^(n-1)) =
/// (n+1)/(n+2), making the honest outcome an exact 50/50 split; the
/// cheating bounds become 2/3 and (2/3)(n+1)^2/(n(n+2)).
/// @throws ParityError for odd n (the fair construction is defined for
///         even n only); DomainError for n < 2.
CoinGame fair_game(int n);

/// Optimal structure with the top coin set to @p t.
/// @throws DomainError for t outside [0,1]; ParityError for odd n.
CoinGame t_family_game(int n, double t);

/// Large-n limit of the t-family operating point:
/// P_A = 1 - t/2, P_A* = (2/3)(3-2t)/(2-t), P_B* = (2/3)t.
/// @throws DomainError for t outside [0,1].
ProtocolPoint t_family_limit(double t);

/// Per-round coin biases of the even-n message protocol:
/// a_1 = (n+1)/(n+2) and a_i = (n-i+1)/(n-i+3) for i >= 2.  a_1 equals the
/// fair variant's root and a_i equals its interior value at depth i-1 along
/// the all-zeros path.
struct MessageSchedule {
    int n;
    std::vector<double> a; ///< a[i-1] holds a_i, i = 1..n
};

/// @throws ParityError for odd n; DomainError for n < 2.
MessageSchedule message_schedule(int n);

/// The n-bit transcripts whose leftmost 1 sits at an even position
/// (1-indexed from the left); these are the final-measurement outcomes
/// counted as second-party wins.  Returned sorted; empty for n = 1.
/// @throws DomainError for n < 1; SizeError for n > 24.
std::vector<std::string> povm_win_set(int n);

} // namespace weakcoin
