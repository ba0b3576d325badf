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
#include <vector>

#include <doctest.h>

#include "weakcoin/game.hpp"

using namespace weakcoin;

namespace {

// Depth-1 reference game: root coin 1/3, win leaf on the left.
CoinGame depth1_game() { return CoinGame(1, {1.0 / 3.0, 1.0, 0.0}); }

// Depth-2 reference game: coins (1/2; 1/3, 1/3), leaves (0, 1, 0, 0).
CoinGame depth2_game() {
    return CoinGame(2, {0.5, 1.0 / 3.0, 1.0 / 3.0, 0.0, 1.0, 0.0, 0.0});
}

// Depth-2 balanced game: same subtrees under a root coin of 3/4.
CoinGame balanced2_game() {
    return CoinGame(2, {0.75, 1.0 / 3.0, 1.0 / 3.0, 0.0, 1.0, 0.0, 0.0});
}

} // namespace

TEST_CASE("node ids: children, parents, flat indices, labels") {
    const NodeId root = NodeId::root();
    CHECK(root.index() == 0);
    CHECK(root.label() == "");
    CHECK(root.parent() == root);

    const NodeId n01 = root.child(0).child(1);
    CHECK(n01.depth == 2);
    CHECK(n01.path == 1);
    CHECK(n01.index() == 4);
    CHECK(n01.label() == "01");
    CHECK(n01.parent() == root.child(0));

    for (std::size_t i = 0; i < 63; ++i) {
        CHECK(NodeId::from_index(i).index() == i);
    }
    CHECK(NodeId::from_index(4) == n01);
}

TEST_CASE("game construction rejects bad shapes") {
    CHECK_THROWS_AS(CoinGame(0, {0.5}), DepthError);
    CHECK_THROWS_AS(CoinGame(-3, {}), DepthError);
    CHECK_THROWS_AS(CoinGame(1, {0.5, 1.0}), DepthError);
    CHECK_THROWS_AS(CoinGame(25, std::vector<double>((1ull << 26) - 1)),
                    SizeError);
    const CoinGame g = depth2_game();
    CHECK(g.depth() == 2);
    CHECK(g.node_count() == 7);
    CHECK(g.leaf_count() == 4);
    CHECK(g.value(NodeId{1, 1}) == 1.0 / 3.0);
    CHECK_THROWS_AS(g.value(NodeId{3, 0}), DepthError);
}

TEST_CASE("validation reports range and leaf issues per node") {
    const std::vector<double> bad = {1.5, 0.25, -0.1, 0.0, 0.5, 1.0, 0.0};
    const ValidationReport report = validate(2, bad);
    REQUIRE(report.issues.size() == 3);
    CHECK(report.issues[0].kind == IssueKind::range);
    CHECK(report.issues[0].node == "");
    CHECK(report.issues[1].kind == IssueKind::range);
    CHECK(report.issues[1].node == "1");
    CHECK(report.issues[2].kind == IssueKind::leaf);
    CHECK(report.issues[2].node == "01");

    CHECK(validate(depth2_game()).ok());
    CHECK_THROWS_AS(require_valid(CoinGame(1, {0.5, 0.5, 0.0})), DomainError);

    const ValidationReport shape = validate(2, {0.5, 0.5, 0.5});
    REQUIRE(!shape.ok());
    CHECK(shape.issues[0].kind == IssueKind::shape);
}

TEST_CASE("honest win probability recursion") {
    CHECK(eval_h(depth1_game()).root() == doctest::Approx(1.0 / 3.0));
    const TreeAssignment h = eval_h(depth2_game());
    CHECK(h.value(NodeId{1, 0}) == doctest::Approx(2.0 / 3.0));
    CHECK(h.value(NodeId{1, 1}) == doctest::Approx(0.0));
    CHECK(h.root() == doctest::Approx(1.0 / 3.0));
    CHECK(eval_h(balanced2_game()).root() == doctest::Approx(0.5));
}

TEST_CASE("cheating value trees on the reference games") {
    {
        const ABTrees ab = eval_ab(depth1_game());
        CHECK(ab.a.root() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(ab.b.root() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
    {
        const ABTrees ab = eval_ab(depth2_game());
        CHECK(ab.a.root() == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
        CHECK(ab.b.root() ==
              doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-14));
        CHECK(ab.b.value(NodeId{1, 0}) == doctest::Approx(2.0 / 3.0));
        CHECK(ab.b.value(NodeId{1, 1}) == doctest::Approx(0.0));
        CHECK(ab.a.value(NodeId{1, 0}) == doctest::Approx(1.0 / 3.0));
        CHECK(ab.a.value(NodeId{1, 1}) == doctest::Approx(1.0));
    }
}

TEST_CASE("reach probabilities form a distribution over leaves") {
    const TreeAssignment p = eval_p(depth2_game());
    CHECK(p.root() == 1.0);
    CHECK(p.value(NodeId{2, 0}) == doctest::Approx(1.0 / 6.0));
    CHECK(p.value(NodeId{2, 1}) == doctest::Approx(1.0 / 3.0));
    CHECK(p.value(NodeId{2, 2}) == doctest::Approx(1.0 / 6.0));
    CHECK(p.value(NodeId{2, 3}) == doctest::Approx(1.0 / 3.0));

    const CoinGame g = random_game(6, 99);
    const TreeAssignment pr = eval_p(g);
    double sum = 0.0;
    for (std::uint64_t x = 0; x < g.leaf_count(); ++x) {
        sum += pr.value(NodeId{6, x});
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strategy weight tree on the reference games") {
    {
        const CoinGame g = depth1_game();
        const TreeAssignment w = eval_w(g, eval_ab(g).b);
        CHECK(w.root() == 1.0);
        CHECK(w.value(NodeId{1, 0}) == doctest::Approx(1.0 / 3.0));
        CHECK(w.value(NodeId{1, 1}) == doctest::Approx(2.0 / 3.0));
    }
    {
        const CoinGame g = depth2_game();
        const TreeAssignment w = eval_w(g, eval_ab(g).b);
        CHECK(w.value(NodeId{1, 0}) == doctest::Approx(0.5));
        CHECK(w.value(NodeId{1, 1}) == doctest::Approx(0.5));
        CHECK(w.value(NodeId{2, 0}) == doctest::Approx(0.0));
        CHECK(w.value(NodeId{2, 1}) == doctest::Approx(0.5));
        // The right subtree is unwinnable for the second party (B = 0), so
        // the scaled rule zeroes it out.
        CHECK(w.value(NodeId{2, 2}) == 0.0);
        CHECK(w.value(NodeId{2, 3}) == 0.0);
    }
}

TEST_CASE("certificate value tree on the reference games") {
    {
        const CoinGame g = depth1_game();
        const TreeAssignment z = eval_z(g, eval_ab(g).b, eval_h(g).root());
        CHECK(z.root() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(z.value(NodeId{1, 0}) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(z.value(NodeId{1, 1}) == 0.0);
    }
    {
        const CoinGame g = depth2_game();
        const TreeAssignment z = eval_z(g, eval_ab(g).b, eval_h(g).root());
        CHECK(z.root() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(z.value(NodeId{1, 0}) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(z.value(NodeId{1, 1}) == 0.0);
        CHECK(z.value(NodeId{2, 0}) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(z.value(NodeId{2, 1}) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(z.value(NodeId{2, 2}) == 0.0);
        CHECK(z.value(NodeId{2, 3}) == 0.0);
    }
    {
        const CoinGame g = balanced2_game();
        const TreeAssignment z = eval_z(g, eval_ab(g).b, eval_h(g).root());
        CHECK(z.root() == doctest::Approx(0.75).epsilon(1e-14));
    }
    CHECK_THROWS_AS(eval_z(CoinGame(1, {0.5, 0.0, 0.0}),
                           eval_ab(CoinGame(1, {0.5, 0.0, 0.0})).b, 0.0),
                    DegenerateGame);
}

TEST_CASE("operating point of the reference games") {
    const ProtocolPoint p = protocol_point(depth2_game());
    CHECK(p.a_root == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(p.b_root == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-14));
    CHECK(p.h_root == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(p.pa == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(p.pa_star == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK(p.pb_star == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.bias() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(protocol_point(CoinGame(1, {0.5, 1.0, 1.0})),
                    DegenerateGame);
    CHECK_THROWS_AS(protocol_point(CoinGame(1, {0.5, 0.0, 0.0})),
                    DegenerateGame);
}

TEST_CASE("decompose/compose round trip and recombination identities") {
    for (const std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        for (int depth = 2; depth <= 5; ++depth) {
            const CoinGame g = random_game(depth, seed);
            const Decomposition d = decompose(g);
            CHECK(d.left.depth() == depth - 1);

            const CoinGame rebuilt = compose(d.gamma, d.left, d.right);
            REQUIRE(rebuilt.values().size() == g.values().size());
            for (std::size_t i = 0; i < g.values().size(); ++i) {
                CHECK(rebuilt.values()[i] == g.values()[i]);
            }

            const ABTrees ab = eval_ab(g);
            const ABTrees left = eval_ab(d.left);
            const ABTrees right = eval_ab(d.right);
            CHECK(ab.a.root() ==
                  doctest::Approx(d.gamma * left.b.root() * left.b.root() +
                                  (1 - d.gamma) * right.b.root() *
                                      right.b.root())
                      .epsilon(1e-12));
            CHECK(ab.b.root() ==
                  doctest::Approx(d.gamma * std::sqrt(left.a.root()) +
                                  (1 - d.gamma) * std::sqrt(right.a.root()))
                      .epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(decompose(depth1_game()), DepthError);
    CHECK_THROWS_AS(compose(0.5, depth1_game(), depth2_game()), DepthError);
    CHECK_THROWS_AS(compose(1.5, depth1_game(), depth1_game()), DomainError);
}

TEST_CASE("role reversal swaps the cheating analyses") {
    for (const std::uint64_t seed : {7u, 8u, 9u}) {
        for (int depth = 1; depth <= 5; ++depth) {
            const CoinGame g = random_game(depth, seed);
            const CoinGame rev = reverse_roles(g);
            CHECK(rev.depth() == depth + 1);
            CHECK(rev.value(NodeId::root()) == 1.0);

            const ABTrees ab = eval_ab(g);
            const ABTrees rab = eval_ab(rev);
            CHECK(rab.b.root() * rab.b.root() ==
                  doctest::Approx(ab.a.root()).epsilon(1e-12));
            CHECK(eval_h(rev).root() ==
                  doctest::Approx(1.0 - eval_h(g).root()).epsilon(1e-12));
        }
    }
}

TEST_CASE("random games are deterministic per seed and always valid") {
    const CoinGame a = random_game(6, 42);
    const CoinGame b = random_game(6, 42);
    const CoinGame c = random_game(6, 43);
    CHECK(a.values() == b.values());
    CHECK(a.values() != c.values());
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CHECK(validate(random_game(4, seed)).ok());
    }
}

TEST_CASE("level sums of the strategy and certificate trees are conserved") {
    for (const std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
        for (const int depth : {2, 3, 5, 8, 12}) {
            const CoinGame g = random_game(depth, seed);
            const double hr = eval_h(g).root();
            if (hr <= 0.0 || hr >= 1.0) {
                continue; // degenerate draw: certificate tree undefined
            }
            const ABTrees ab = eval_ab(g);
            const TreeAssignment p = eval_p(g);
            const TreeAssignment w = eval_w(g, ab.b);
            const TreeAssignment z = eval_z(g, ab.b, hr);
            for (int k = 0; k <= depth; ++k) {
                CHECK(conserved_sum_primal(g, ab.b, p, w, k) ==
                      doctest::Approx(ab.b.root()).epsilon(1e-12));
                CHECK(conserved_sum_dual(g, ab.b, p, z, hr, k) ==
                      doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}
