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

#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "weakcoin/families.hpp"
#include "weakcoin/game.hpp"

using namespace weakcoin;

TEST_CASE("smallest family members match their explicit trees") {
    const CoinGame g1 = optimal_game(1);
    CHECK(g1.values() == std::vector<double>{1.0 / 3.0, 1.0, 0.0});

    const CoinGame g2 = optimal_game(2);
    REQUIRE(g2.depth() == 2);
    CHECK(g2.value(NodeId::root()) == doctest::Approx(0.5));
    CHECK(g2.value(NodeId{1, 0}) == doctest::Approx(1.0 / 3.0));
    CHECK(g2.value(NodeId{1, 1}) == doctest::Approx(1.0 / 3.0));
    CHECK(g2.value(NodeId{2, 0}) == 0.0);
    CHECK(g2.value(NodeId{2, 1}) == 1.0);
    CHECK(g2.value(NodeId{2, 2}) == 0.0);
    CHECK(g2.value(NodeId{2, 3}) == 0.0);
}

TEST_CASE("every interior node at depth d holds gamma_{n-d}") {
    for (int n = 1; n <= 9; ++n) {
        const CoinGame g = optimal_game(n);
        for (int d = 0; d < n; ++d) {
            const double expected =
                static_cast<double>(n - d) / (n - d + 2);
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << d); ++x) {
                CHECK(g.value(NodeId{d, x}) == doctest::Approx(expected));
            }
        }
    }
}

TEST_CASE("leaf labels: leftmost 1 at an even position, all-zeros if n odd") {
    const CoinGame g3 = optimal_game(3);
    const std::vector<int> expected = {1, 0, 1, 1, 0, 0, 0, 0};
    for (std::uint64_t x = 0; x < 8; ++x) {
        CHECK(g3.value(NodeId{3, x}) == expected[x]);
    }

    for (const int n : {2, 4, 6}) {
        const CoinGame g = optimal_game(n);
        const std::vector<std::string> wins = povm_win_set(n);
        std::vector<std::string> from_game;
        for (std::uint64_t x = 0; x < g.leaf_count(); ++x) {
            if (g.value(NodeId{n, x}) == 1.0) {
                from_game.push_back(NodeId{n, x}.label());
            }
        }
        CHECK(from_game == wins);
    }
}

TEST_CASE("transcript win sets") {
    CHECK(povm_win_set(1).empty());
    CHECK(povm_win_set(2) == std::vector<std::string>{"01"});
    CHECK(povm_win_set(4) ==
          std::vector<std::string>{"0001", "0100", "0101", "0110", "0111"});
    CHECK_THROWS_AS(povm_win_set(0), DomainError);
}

TEST_CASE("closed forms agree with the materialized trees") {
    for (int n = 1; n <= 12; ++n) {
        const CoinGame g = optimal_game(n);
        const ABTrees ab = eval_ab(g);
        const double h = eval_h(g).root();
        const OptimalFamilyPoint p = optimal_family_point(n);
        CHECK(ab.a.root() == doctest::Approx(p.a_root).epsilon(1e-12));
        CHECK(ab.b.root() == doctest::Approx(p.b_root).epsilon(1e-12));
        CHECK(h == doctest::Approx(p.h_root).epsilon(1e-12));

        const RootValues r = optimal_game_roots(n);
        CHECK(r.a_root == doctest::Approx(ab.a.root()).epsilon(1e-12));
        CHECK(r.b_root == doctest::Approx(ab.b.root()).epsilon(1e-12));
        CHECK(r.h_root == doctest::Approx(h).epsilon(1e-12));
    }
}

TEST_CASE("structural recursion matches the closed forms far beyond "
          "materialization") {
    for (int n = 1; n <= 200; ++n) {
        const RootValues r = optimal_game_roots(n);
        const OptimalFamilyPoint p = optimal_family_point(n);
        CHECK(std::abs(r.a_root - p.a_root) <= 1e-12);
        CHECK(std::abs(r.b_root - p.b_root) <= 1e-12);
        CHECK(std::abs(r.h_root - p.h_root) <= 1e-12);
    }
    CHECK_THROWS_AS(optimal_family_point(0), DomainError);
    CHECK_THROWS_AS(optimal_game_roots(-1), DomainError);
}

TEST_CASE("cheating bounds approach 2/3 from above, decreasing in n") {
    double prev_bias = 1.0;
    for (int n = 1; n <= 60; ++n) {
        const OptimalFamilyPoint p = optimal_family_point(n);
        CHECK(p.pa_star >= 2.0 / 3.0 - 1e-12);
        CHECK(p.pb_star <= p.pa_star + 1e-12);
        CHECK(p.bias() <= prev_bias + 1e-12);
        prev_bias = p.bias();
    }
    CHECK(optimal_family_point(1000).bias() ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-2));
}

TEST_CASE("fair variant: exact 50/50 honest split") {
    const CoinGame f2 = fair_game(2);
    CHECK(f2.value(NodeId::root()) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(eval_h(f2).root() == doctest::Approx(0.5).epsilon(1e-14));

    for (const int n : {2, 4, 6, 8, 10}) {
        const CoinGame f = fair_game(n);
        CHECK(f.value(NodeId::root()) ==
              doctest::Approx(static_cast<double>(n + 1) / (n + 2))
                  .epsilon(1e-14));
        const ProtocolPoint p = protocol_point(f);
        CHECK(p.h_root == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(p.pa_star == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        const double expected_pb =
            2.0 / 3.0 * (n + 1.0) * (n + 1.0) / (n * (n + 2.0));
        CHECK(p.pb_star == doctest::Approx(expected_pb).epsilon(1e-12));
    }
    CHECK(protocol_point(fair_game(2)).pa_star *
              protocol_point(fair_game(2)).pb_star ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(protocol_point(fair_game(4)).pb_star ==
          doctest::Approx(25.0 / 36.0).epsilon(1e-12));
    CHECK(protocol_point(fair_game(6)).pb_star ==
          doctest::Approx(49.0 / 72.0).epsilon(1e-12));

    CHECK_THROWS_AS(fair_game(3), ParityError);
    CHECK_THROWS_AS(fair_game(0), DomainError);
}

TEST_CASE("t-parametrized variant exposes the top coin") {
    for (const double t : {0.2, 0.5, 0.8, 1.0}) {
        const CoinGame g = t_family_game(4, t);
        CHECK(g.value(NodeId::root()) == doctest::Approx(t));
        // Below the root the tree is the standard family member.
        const CoinGame opt = optimal_game(4);
        for (std::size_t i = 1; i < g.values().size(); ++i) {
            CHECK(g.values()[i] == opt.values()[i]);
        }
        const RootValues r = family_roots_with_top(4, t);
        const ABTrees ab = eval_ab(g);
        CHECK(r.a_root == doctest::Approx(ab.a.root()).epsilon(1e-12));
        CHECK(r.b_root == doctest::Approx(ab.b.root()).epsilon(1e-12));
        CHECK(r.h_root == doctest::Approx(eval_h(g).root()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(t_family_game(4, 1.5), DomainError);
    CHECK_THROWS_AS(t_family_game(3, 0.5), ParityError);
}

TEST_CASE("limiting trade-off curve of the t-family") {
    for (int i = 1; i <= 100; ++i) {
        const double t = static_cast<double>(i) / 100.0;
        const ProtocolPoint p = t_family_limit(t);
        CHECK(p.pa == doctest::Approx(1.0 - t / 2.0).epsilon(1e-14));
        CHECK(p.pb_star == doctest::Approx(2.0 / 3.0 * t).epsilon(1e-14));
        const double curve = p.pa_star + p.pb_star -
                             0.75 * p.pa_star * p.pb_star;
        CHECK(curve == doctest::Approx(1.0).epsilon(1e-12));
    }
    // Finite members approach the limit point as n grows.
    const ProtocolPoint limit = t_family_limit(0.7);
    const RootValues r = family_roots_with_top(2000, 0.7);
    CHECK(r.b_root * r.b_root / r.h_root ==
          doctest::Approx(limit.pb_star).epsilon(1e-3));
    CHECK_THROWS_AS(t_family_limit(-0.1), DomainError);
}

TEST_CASE("message schedule follows the fair game's leftmost path") {
    const MessageSchedule s4 = message_schedule(4);
    REQUIRE(s4.a.size() == 4);
    CHECK(s4.a[0] == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK(s4.a[1] == doctest::Approx(3.0 / 5.0).epsilon(1e-14));
    CHECK(s4.a[2] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s4.a[3] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    for (const int n : {2, 4, 6, 8}) {
        const MessageSchedule s = message_schedule(n);
        const CoinGame f = fair_game(n);
        CHECK(s.a[0] == doctest::Approx(f.value(NodeId::root())));
        for (int i = 2; i <= n; ++i) {
            CHECK(s.a[static_cast<std::size_t>(i - 1)] ==
                  doctest::Approx(f.value(NodeId{i - 1, 0})));
        }
    }
    CHECK_THROWS_AS(message_schedule(5), ParityError);
}
