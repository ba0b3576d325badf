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

#include "weakcoin/families.hpp"

#include <cmath>

namespace weakcoin {

namespace {

double gamma_coin(int k) {
    return static_cast<double>(k) / static_cast<double>(k + 2);
}

/// Winning-leaf rule shared by optimal_game and povm_win_set: the leftmost
/// 1 of the n-bit transcript sits at an even 1-indexed position; the
/// all-zeros transcript wins exactly when n is odd (it is the flip-parity
/// image of the depth-1 base case).
bool winning_leaf(int n, std::uint64_t path) {
    for (int pos = 1; pos <= n; ++pos) {
        if ((path >> (n - pos)) & 1ULL) {
            return pos % 2 == 0;
        }
    }
    return n % 2 == 1;
}

/// Fair/t-variant construction shared by fair_game and t_family_game.
CoinGame optimal_with_top(int n, double top) {
    CoinGame game = optimal_game(n);
    std::vector<double> values = game.values();
    values[0] = top;
    return {n, std::move(values)};
}

} // namespace

OptimalFamilyPoint optimal_family_point(int n) {
    if (n < 1) {
        throw DomainError("family index must be at least 1, got " +
                          std::to_string(n));
    }
    const double dn = static_cast<double>(n);
    OptimalFamilyPoint point{};
    point.n = n;
    point.gamma = gamma_coin(n);
    point.a_root = (dn + 3.0) / (3.0 * (dn + 1.0));
    point.b_root = std::sqrt(dn / (3.0 * (dn + 2.0)));
    if (n % 2 == 0) {
        point.h_root = dn / (2.0 * (dn + 1.0));
        point.pa_star = 2.0 * (dn + 3.0) / (3.0 * (dn + 2.0));
        point.pb_star = 2.0 * (dn + 1.0) / (3.0 * (dn + 2.0));
    } else {
        point.h_root = (dn + 1.0) / (2.0 * (dn + 2.0));
        point.pa_star = 2.0 * (dn + 2.0) / (3.0 * (dn + 1.0));
        point.pb_star = 2.0 * dn / (3.0 * (dn + 1.0));
    }
    point.pa = 1.0 - point.h_root;
    return point;
}

RootValues family_roots_with_top(int n, double top) {
    if (n < 1) {
        throw DomainError("family index must be at least 1, got " +
                          std::to_string(n));
    }
    if (!(top >= 0.0 && top <= 1.0)) {
        throw DomainError("top coin must lie in [0,1], got " +
                          std::to_string(top));
    }
    // Depth-1 structure with top coin t over leaves (1, 0).
    if (n == 1) {
        return {1.0 - top, top, top};
    }
    // Climb the inductive structure: at each depth the left subgame is the
    // previous family member (top coin gamma_m) and the right subgame
    // (leaf-flipped) is the all-ones game with (A, B, H) = (0, 1, 1), so
    // the recombination identities collapse to three scalar updates.
    RootValues r{2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    for (int m = 2; m < n; ++m) {
        const double g = gamma_coin(m);
        r = {g * r.b_root * r.b_root + (1.0 - g), g * std::sqrt(r.a_root),
             g * (1.0 - r.h_root)};
    }
    r = {top * r.b_root * r.b_root + (1.0 - top), top * std::sqrt(r.a_root),
         top * (1.0 - r.h_root)};
    return r;
}

RootValues optimal_game_roots(int n) {
    if (n < 1) {
        throw DomainError("family index must be at least 1, got " +
                          std::to_string(n));
    }
    return family_roots_with_top(n, gamma_coin(n));
}

CoinGame optimal_game(int n) {
    if (n < 1) {
        throw DomainError("family index must be at least 1, got " +
                          std::to_string(n));
    }
    if (n > CoinGame::max_depth) {
        throw SizeError("family index " + std::to_string(n) +
                        " exceeds the materialization limit of " +
                        std::to_string(CoinGame::max_depth));
    }
    std::vector<double> values(CoinGame::nodes_for_depth(n));
    std::size_t i = 0;
    for (int d = 0; d < n; ++d) {
        const double g = gamma_coin(n - d);
        for (std::size_t p = 0; p < (std::size_t{1} << d); ++p) {
            values[i++] = g;
        }
    }
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
        values[i++] = winning_leaf(n, p) ? 1.0 : 0.0;
    }
    return {n, std::move(values)};
}

CoinGame fair_game(int n) {
    if (n < 2) {
        throw DomainError("the fair variant requires n >= 2, got " +
                          std::to_string(n));
    }
    if (n % 2 != 0) {
        throw ParityError("the fair variant is defined for even n only, "
                          "got " +
                          std::to_string(n));
    }
    // 1/(2 - 2 H_r^(n-1)) with the odd-(n-1) closed form simplifies to
    // (n+1)/(n+2).
    const double top =
        static_cast<double>(n + 1) / static_cast<double>(n + 2);
    return optimal_with_top(n, top);
}

CoinGame t_family_game(int n, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("family parameter t must lie in [0,1], got " +
                          std::to_string(t));
    }
    if (n < 2) {
        throw DomainError("the t-parametrized variant requires n >= 2, "
                          "got " +
                          std::to_string(n));
    }
    if (n % 2 != 0) {
        throw ParityError("the t-parametrized variant is defined for even "
                          "n only, got " +
                          std::to_string(n));
    }
    return optimal_with_top(n, t);
}

ProtocolPoint t_family_limit(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("family parameter t must lie in [0,1], got " +
                          std::to_string(t));
    }
    ProtocolPoint point{};
    point.pa = 1.0 - t / 2.0;
    point.pa_star = (2.0 / 3.0) * (3.0 - 2.0 * t) / (2.0 - t);
    point.pb_star = (2.0 / 3.0) * t;
    point.h_root = 1.0 - point.pa;
    point.a_root = point.pa * point.pa_star;
    point.b_root = std::sqrt(point.pb_star * point.h_root);
    return point;
}

MessageSchedule message_schedule(int n) {
    if (n < 2) {
        throw DomainError("message schedules require n >= 2, got " +
                          std::to_string(n));
    }
    if (n % 2 != 0) {
        throw ParityError("message schedules are defined for even n only, "
                          "got " +
                          std::to_string(n));
    }
    MessageSchedule schedule{n, std::vector<double>(
                                    static_cast<std::size_t>(n))};
    schedule.a[0] = static_cast<double>(n + 1) / static_cast<double>(n + 2);
    for (int i = 2; i <= n; ++i) {
        schedule.a[static_cast<std::size_t>(i - 1)] =
            static_cast<double>(n - i + 1) / static_cast<double>(n - i + 3);
    }
    return schedule;
}

std::vector<std::string> povm_win_set(int n) {
    if (n < 1) {
        throw DomainError("transcript length must be at least 1, got " +
                          std::to_string(n));
    }
    if (n > CoinGame::max_depth) {
        throw SizeError("transcript length " + std::to_string(n) +
                        " exceeds the enumeration limit");
    }
    std::vector<std::string> wins;
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
        // The all-zeros transcript is excluded here: the set contains only
        // transcripts with a leftmost 1 (the odd-n all-zeros winner in
        // optimal_game comes from the construction's flip bookkeeping, not
        // from this rule).
        bool member = false;
        for (int pos = 1; pos <= n; ++pos) {
            if ((p >> (n - pos)) & 1ULL) {
                member = pos % 2 == 0;
                break;
            }
        }
        if (member) {
            wins.push_back(NodeId{n, p}.label());
        }
    }
    return wins;
}

} // namespace weakcoin
