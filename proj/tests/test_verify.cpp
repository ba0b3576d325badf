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

// Tests for the two-sided certification machinery: the first party's
// unitaries, the explicit cheating strategy for the second party, and the
// diagonal certificate chain that upper-bounds it.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "doctest.h"
#include "weakcoin/errors.hpp"
#include "weakcoin/families.hpp"
#include "weakcoin/game.hpp"
#include "weakcoin/verify.hpp"

namespace {

using weakcoin::CoinGame;
using weakcoin::SparseOp;

/// Max entrywise deviation of op^T op from the identity.
double orthogonality_defect(const SparseOp &op) {
    SparseOp gram = SparseOp(op.transpose()) * op;
    SparseOp eye(gram.rows(), gram.cols());
    eye.setIdentity();
    const SparseOp diff = SparseOp(gram - eye);
    double m = 0.0;
    for (int outer = 0; outer < diff.outerSize(); ++outer) {
        for (SparseOp::InnerIterator it(diff, outer); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

CoinGame depth1_game() { return CoinGame(1, {1.0 / 3.0, 1.0, 0.0}); }

CoinGame all_loss_game() { return CoinGame(1, {0.5, 0.0, 0.0}); }

bool name_mentions(const std::exception &e, const std::string &needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("the first party's operators are orthogonal") {
    for (const int n : {1, 2, 3}) {
        const CoinGame game = weakcoin::optimal_game(n);
        const auto ops = weakcoin::alice_side_operators(game);
        REQUIRE(ops.rotations.size() == static_cast<std::size_t>(n));
        REQUIRE(ops.swaps.size() == static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            CHECK(orthogonality_defect(
                      ops.rotations[static_cast<std::size_t>(k)]) < 1e-12);
            CHECK(orthogonality_defect(
                      ops.swaps[static_cast<std::size_t>(k)]) < 1e-12);
        }
        CHECK(orthogonality_defect(ops.mark_alice) < 1e-12);
        CHECK(orthogonality_defect(ops.mark) < 1e-12);
        CHECK(orthogonality_defect(ops.ship_zero) < 1e-12);
        CHECK(orthogonality_defect(ops.ship_one) < 1e-12);
    }
}

TEST_CASE("the verification state is the normalized win distribution") {
    SUBCASE("depth one") {
        const Eigen::VectorXd psi = weakcoin::alice_target_vector(depth1_game());
        const weakcoin::VerifySpace space{1};
        REQUIRE(psi.size() == 8);
        // The only winning leaf is 0 and it carries all of H_r.
        CHECK(psi(static_cast<Eigen::Index>(space.alice_index(0, 0, 1))) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(psi.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("depth two") {
        const Eigen::VectorXd psi =
            weakcoin::alice_target_vector(weakcoin::optimal_game(2));
        const weakcoin::VerifySpace space{2};
        CHECK(psi(static_cast<Eigen::Index>(space.alice_index(1, 1, 1))) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(psi.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("degenerate games are rejected") {
        CHECK_THROWS_AS(weakcoin::alice_target_vector(all_loss_game()),
                        weakcoin::DegenerateGame);
    }
}

TEST_CASE("strategy weights keep splitting below a zeroed branch") {
    // In the depth-2 member of the optimal family the right branch has
    // B = 0, so the plain weight recursion would strand half of the mass
    // at depth 1.  The strategy instead keeps splitting by the raw coin.
    const CoinGame game = weakcoin::optimal_game(2);
    const auto strategy = weakcoin::build_primal(game);

    REQUIRE(strategy.sigma.size() == 3);
    CHECK(strategy.sigma[0](0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(strategy.sigma[1](0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(strategy.sigma[1](1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(strategy.sigma[2](0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(strategy.sigma[2](1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(strategy.sigma[2](2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(strategy.sigma[2](3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // Each level keeps total weight 1 and the final state is normalized.
    for (const Eigen::VectorXd &level : strategy.sigma) {
        CHECK(level.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    double trace = 0.0;
    for (int outer = 0; outer < strategy.rho_f.outerSize(); ++outer) {
        for (SparseOp::InnerIterator it(strategy.rho_f, outer); it; ++it) {
            if (it.row() == it.col()) {
                trace += it.value();
            }
        }
    }
    CHECK(trace == doctest::Approx(1.0).epsilon(1e-12));

    // The plain weight tree zeroes the whole branch; only the strategy
    // keeps it alive, and on live branches the two agree.
    const weakcoin::ABTrees ab = weakcoin::eval_ab(game);
    const weakcoin::TreeAssignment w = weakcoin::eval_w(game, ab.b);
    CHECK(w.value(weakcoin::NodeId{2, 2}) == 0.0);
    CHECK(w.value(weakcoin::NodeId{2, 3}) == 0.0);
    CHECK(strategy.sigma[2](1) ==
          doctest::Approx(w.value(weakcoin::NodeId{2, 1})).epsilon(1e-12));
}

TEST_CASE("the explicit strategy satisfies every constraint") {
    std::vector<CoinGame> games;
    games.push_back(depth1_game());
    games.push_back(weakcoin::optimal_game(1));
    games.push_back(weakcoin::optimal_game(2));
    games.push_back(weakcoin::optimal_game(3));
    games.push_back(weakcoin::fair_game(2));
    games.push_back(weakcoin::t_family_game(2, 0.4));
    for (int depth = 1; depth <= 3; ++depth) {
        for (unsigned seed = 1; seed <= 4; ++seed) {
            games.push_back(weakcoin::random_game(depth, 300 + seed));
        }
    }

    for (const CoinGame &game : games) {
        const double h = weakcoin::eval_h(game).root();
        if (!(h > 0.0 && h < 1.0)) {
            continue;
        }
        CAPTURE(game.depth());
        const auto strategy = weakcoin::build_primal(game);
        const auto report =
            weakcoin::check_primal_constraints(game, strategy, 1e-10);
        CHECK(report.max_residual <= 1e-12);
        REQUIRE(report.residuals.size() ==
                static_cast<std::size_t>(game.depth()) + 3);
        CHECK(report.residuals.front().name == "initial state");
        CHECK(report.residuals[1].name == "round 1 rotation");
        CHECK(report.residuals[report.residuals.size() - 2].name ==
              "outcome marking");
        CHECK(report.residuals.back().name == "final shipment");

        const double value = weakcoin::primal_value(game, strategy);
        const double expected = weakcoin::protocol_point(game).pb_star;
        CHECK(value == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("the strategy value matches the known cheating probabilities") {
    const auto value = [](const CoinGame &game) {
        return weakcoin::primal_value(game, weakcoin::build_primal(game));
    };
    CHECK(value(depth1_game()) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(value(weakcoin::optimal_game(2)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(value(weakcoin::optimal_game(3)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(value(weakcoin::fair_game(2)) ==
          doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("tampered strategies are rejected") {
    const CoinGame game = weakcoin::optimal_game(2);
    SUBCASE("scaled final state breaks the shipment relation") {
        auto strategy = weakcoin::build_primal(game);
        strategy.rho_f *= 1.001;
        try {
            weakcoin::check_primal_constraints(game, strategy);
            FAIL("expected a constraint violation");
        } catch (const weakcoin::ConstraintViolation &e) {
            CHECK(name_mentions(e, "final shipment"));
        }
    }
    SUBCASE("scaled intermediate state breaks its round relation") {
        auto strategy = weakcoin::build_primal(game);
        strategy.rho[1] *= 0.999;
        try {
            weakcoin::check_primal_constraints(game, strategy);
            FAIL("expected a constraint violation");
        } catch (const weakcoin::ConstraintViolation &e) {
            CHECK(name_mentions(e, "round 1 rotation"));
        }
    }
}

TEST_CASE("certificate chain for the depth-1 game") {
    const CoinGame game = depth1_game();
    const double slack = 1e-4;
    const auto cert = weakcoin::build_dual(game, slack);
    const weakcoin::VerifySpace &space = cert.space;

    CHECK(cert.bound == doctest::Approx(1.0 / 3.0 + slack).epsilon(1e-12));

    // The one padding constant is pinned by the root block: the product of
    // the two diagonal slacks must cover the off-diagonal coupling
    // sqrt(g(1-g)) (Z_0 - Z_1), i.e. C >= 2/3 + (2/9)/slack.
    REQUIRE(cert.c.size() == 1);
    CHECK(cert.c[0] ==
          doctest::Approx(2.0 / 3.0 + (2.0 / 9.0) / slack).epsilon(1e-8));

    // First chain entry: the root value plus the full slack on the tree
    // label, the padding constant everywhere else.
    REQUIRE(cert.z.size() == 4);
    for (Eigen::Index i = 0; i < cert.z[0].size(); ++i) {
        const double expected =
            i == static_cast<Eigen::Index>(space.alice_index(0, 0, 0))
                ? 1.0 / 3.0 + slack
                : cert.c[0];
        CHECK(cert.z[0](i) == doctest::Approx(expected).epsilon(1e-9));
    }
    // Leaf entries: Z_0 = 1 on its labels, Z_1 = 0; the outcome qubit
    // selects which copies survive along the chain.
    CHECK(cert.z[1](static_cast<Eigen::Index>(space.alice_index(0, 0, 0))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.z[1](static_cast<Eigen::Index>(space.alice_index(0, 0, 1))) ==
          0.0);
    CHECK(cert.z[2](static_cast<Eigen::Index>(space.alice_index(0, 1, 1))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.z[3](static_cast<Eigen::Index>(space.alice_index(0, 0, 1))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.z[3](static_cast<Eigen::Index>(space.alice_index(1, 1, 0))) ==
          0.0);

    const auto report = weakcoin::check_dual_constraints(game, cert);
    CHECK(report.min_eigenvalue >= -1e-8);
    REQUIRE(report.levels.size() == 3);
    CHECK(report.levels[0].name == "round 1 rotation");
    CHECK(report.levels[1].name == "outcome marking");
    CHECK(report.levels[2].name == "outcome-0 shipment");
    REQUIRE(report.rank_one.size() == 3);
    for (const auto &[eps, val] : report.rank_one) {
        CHECK(val == doctest::Approx(1.0 / (1.0 + eps)).epsilon(1e-12));
    }
}

TEST_CASE("certificate entries carry the slack ladder") {
    const double slack = 1e-4;
    const CoinGame game = weakcoin::optimal_game(2);
    const auto cert = weakcoin::build_dual(game, slack);
    const weakcoin::VerifySpace &space = cert.space;

    // Root: Z_r + slack; level 1: Z_y + slack/2 on the tree labels.
    CHECK(cert.z[0](static_cast<Eigen::Index>(space.alice_index(0, 0, 0))) ==
          doctest::Approx(0.5 + slack).epsilon(1e-12));
    CHECK(cert.z[1](static_cast<Eigen::Index>(space.alice_index(0, 0, 0))) ==
          doctest::Approx(1.0 + slack / 2).epsilon(1e-12));
    CHECK(cert.z[1](static_cast<Eigen::Index>(space.alice_index(2, 0, 0))) ==
          doctest::Approx(slack / 2).epsilon(1e-12));
    // Leaf values: the winning leaf 01 inherits Z = 1 from its parent on
    // every copy label; the zeroed branch carries 0.
    CHECK(cert.z[3](static_cast<Eigen::Index>(space.alice_index(1, 3, 1))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.z[3](static_cast<Eigen::Index>(space.alice_index(2, 0, 0))) ==
          0.0);
    CHECK(cert.z[4](static_cast<Eigen::Index>(space.alice_index(1, 1, 1))) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // Padding never decreases along the chain.
    REQUIRE(cert.c.size() == 2);
    CHECK(cert.c[0] >= cert.c[1]);
}

TEST_CASE("the certificate bound exceeds the strategy value by the slack") {
    std::vector<std::pair<CoinGame, double>> cases;
    cases.emplace_back(depth1_game(), 1e-4);
    cases.emplace_back(weakcoin::optimal_game(1), 1e-4);
    cases.emplace_back(weakcoin::optimal_game(2), 1e-4);
    cases.emplace_back(weakcoin::fair_game(2), 1e-4);
    cases.emplace_back(weakcoin::t_family_game(2, 0.4), 1e-4);
    for (unsigned seed = 1; seed <= 6; ++seed) {
        const CoinGame game = weakcoin::random_game(2, 400 + seed);
        const double h = weakcoin::eval_h(game).root();
        if (h > 0.0 && h < 1.0) {
            // Random trees can need heavy padding, so allow more slack.
            cases.emplace_back(game, 1e-2);
        }
    }

    for (const auto &[game, slack] : cases) {
        CAPTURE(game.depth());
        CAPTURE(slack);
        const auto cert = weakcoin::build_dual(game, slack);
        const auto report = weakcoin::check_dual_constraints(game, cert);
        CHECK(report.min_eigenvalue >= -1e-8);
        const double value =
            weakcoin::primal_value(game, weakcoin::build_primal(game));
        CHECK(cert.bound - value == doctest::Approx(slack).epsilon(1e-8));
    }
}

TEST_CASE("the chain telescopes exactly along the tree") {
    // Whenever B > 0 at an interior node of even depth, the lifted parent
    // entry exceeds the coin-mixed children entries by exactly slack/n;
    // at odd depths the children copy the parent.  This is the mechanism
    // that makes every chain inequality tight on the tree labels.
    const double slack = 1e-3;
    std::vector<CoinGame> games;
    games.push_back(weakcoin::optimal_game(3));
    for (unsigned seed = 21; seed <= 24; ++seed) {
        games.push_back(weakcoin::random_game(3, seed));
    }
    for (const CoinGame &game : games) {
        const double h = weakcoin::eval_h(game).root();
        if (!(h > 0.0 && h < 1.0)) {
            continue;
        }
        const int n = game.depth();
        const weakcoin::ABTrees ab = weakcoin::eval_ab(game);
        const weakcoin::TreeAssignment z = weakcoin::eval_z(game, ab.b, h);
        const auto lift = [&](int k) {
            return k < n ? (n - k) * slack / n : 0.0;
        };
        for (int k = 0; k < n; ++k) {
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
                const weakcoin::NodeId node{k, x};
                if (k % 2 == 0) {
                    const double g = game.value(node);
                    const double drop =
                        z.value(node) + lift(k) -
                        g * (z.value(node.child(0)) + lift(k + 1)) -
                        (1.0 - g) * (z.value(node.child(1)) + lift(k + 1));
                    if (ab.b.value(node) > 0.0) {
                        CHECK(drop ==
                              doctest::Approx(slack / n).epsilon(1e-9));
                    } else {
                        CHECK(drop >= slack / n - 1e-12);
                    }
                } else {
                    CHECK(z.value(node.child(0)) == z.value(node));
                    CHECK(z.value(node.child(1)) == z.value(node));
                }
            }
        }
    }
}

TEST_CASE("tampered certificates are rejected") {
    const CoinGame game = weakcoin::optimal_game(2);
    SUBCASE("lowering the root entry breaks the first inequality") {
        auto cert = weakcoin::build_dual(game, 1e-4);
        cert.z[0](0) -= 0.01;
        try {
            weakcoin::check_dual_constraints(game, cert);
            FAIL("expected a constraint violation");
        } catch (const weakcoin::ConstraintViolation &e) {
            CHECK(name_mentions(e, "round 1 rotation"));
        }
    }
    SUBCASE("shrinking the leaf entries breaks the rank-one reduction") {
        auto cert = weakcoin::build_dual(game, 1e-4);
        cert.z[4] *= 0.2;
        try {
            weakcoin::check_dual_constraints(game, cert);
            FAIL("expected a constraint violation");
        } catch (const weakcoin::ConstraintViolation &e) {
            CHECK(name_mentions(e, "rank-one"));
        }
    }
}

TEST_CASE("the first party's bound follows by exchanging roles") {
    CHECK(weakcoin::cheating_alice_bound(weakcoin::fair_game(2)) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    std::vector<CoinGame> games;
    games.push_back(depth1_game());
    games.push_back(weakcoin::optimal_game(2));
    games.push_back(weakcoin::fair_game(2));
    for (unsigned seed = 31; seed <= 36; ++seed) {
        games.push_back(weakcoin::random_game(2, seed));
    }
    for (const CoinGame &game : games) {
        const double h = weakcoin::eval_h(game).root();
        if (!(h > 0.0 && h < 1.0)) {
            continue;
        }
        const CoinGame reversed = weakcoin::reverse_roles(game);
        const double reversed_value = weakcoin::primal_value(
            reversed, weakcoin::build_primal(reversed));
        CHECK(reversed_value ==
              doctest::Approx(weakcoin::cheating_alice_bound(game))
                  .epsilon(1e-9));
    }
}

TEST_CASE("oversized and invalid certification requests are rejected") {
    CHECK_THROWS_AS(weakcoin::alice_side_operators(weakcoin::optimal_game(4)),
                    weakcoin::SizeError);
    CHECK_THROWS_AS(weakcoin::build_primal(weakcoin::optimal_game(4)),
                    weakcoin::SizeError);
    CHECK_THROWS_AS(weakcoin::build_dual(weakcoin::optimal_game(4)),
                    weakcoin::SizeError);
    CHECK_THROWS_AS(weakcoin::build_dual(weakcoin::optimal_game(2), 1e-4, 1),
                    weakcoin::SizeError);
    CHECK_THROWS_AS(weakcoin::build_dual(depth1_game(), 0.0),
                    weakcoin::DomainError);
    CHECK_THROWS_AS(weakcoin::build_dual(depth1_game(), -1.0),
                    weakcoin::DomainError);
    CHECK_THROWS_AS(weakcoin::build_primal(all_loss_game()),
                    weakcoin::DegenerateGame);
    CHECK_THROWS_AS(weakcoin::cheating_alice_bound(all_loss_game()),
                    weakcoin::DegenerateGame);
}
