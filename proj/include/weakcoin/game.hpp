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
 * @file game.hpp
 * Coin games on complete binary trees and their per-node value recursions.
 *
 * A coin game of depth n assigns a coin bias in [0,1] to every interior node
 * and a winner label in {0,1} to every leaf of a complete binary tree.  The
 * root plays first; at a node x with value G_x the play moves to child x0
 * with probability G_x and to child x1 otherwise, alternating which party
 * announces the coin.  Six per-node recursions summarize the game:
 *
 *   H  — probability that the leaf reached under honest play is labeled 1
 *        (the second party wins), H_x = G_x H_{x0} + (1-G_x) H_{x1}.
 *   A  — value tree for a cheating first party: leaves 1-G_x; at even depth
 *        A_x = G_x A_{x0}^2 + (1-G_x) A_{x1}^2, at odd depth the squares
 *        become square roots.
 *   B  — value tree for a cheating second party: leaves G_x; same two rules
 *        with the parities swapped.
 *   P  — probability of reaching each node honestly (forward product).
 *   W  — weights of the explicit optimal cheating strategy for the second
 *        party (used by the certification module).
 *   Z  — node values of the dual certificate that upper-bounds the second
 *        party's cheating probability.
 *
 * The root triple (A_r, B_r, H_r) determines the associated protocol's
 * operating point: honest first-party win probability P_A = 1 - H_r and
 * cheating success bounds P_A* = A_r / (1 - H_r), P_B* = B_r^2 / H_r.
 *
 * Trees are stored as flat level-order arrays: node x at depth d with path
 * bits p sits at index (2^d - 1) + p, and the array holds 2^(n+1) - 1
 * entries.  All functions here are pure and safe to call concurrently.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "weakcoin/errors.hpp"

namespace weakcoin {

/// Address of one node in a complete binary tree: its depth and the path
/// bits leading to it (most-significant bit first; the root has depth 0 and
/// empty path).
struct NodeId {
    int depth = 0;
    std::uint64_t path = 0;

    /// The root node (depth 0, empty path).
    static NodeId root() noexcept { return {0, 0}; }

    /// Child reached by appending @p bit (0 = left, 1 = right).
    [[nodiscard]] NodeId child(int bit) const noexcept {
        return {depth + 1, (path << 1) | static_cast<std::uint64_t>(bit & 1)};
    }

    /// Parent node; the root is its own parent.
    [[nodiscard]] NodeId parent() const noexcept {
        return depth == 0 ? *this : NodeId{depth - 1, path >> 1};
    }

    /// Flat level-order index: (2^depth - 1) + path.
    [[nodiscard]] std::size_t index() const noexcept {
        return (std::size_t{1} << depth) - 1 + path;
    }

    /// Path rendered as a bit string, e.g. "01"; the root yields "".
    [[nodiscard]] std::string label() const;

    /// Inverse of index().
    static NodeId from_index(std::size_t index) noexcept;

    friend bool operator==(const NodeId &, const NodeId &) = default;
};

/// A complete binary tree of coin biases and winner labels.
///
/// The constructor checks only structural properties (depth bounds, array
/// length); value-range and leaf-binarity checks live in validate() so that
/// malformed games can be constructed, inspected, and reported on.
class CoinGame {
  public:
    /// Largest depth that may be materialized as a flat array (2^25 - 1
    /// nodes, ~256 MiB); deeper requests raise SizeError.
    static constexpr int max_depth = 24;

    /// @throws DepthError for depth < 1 or a values array of the wrong
    ///         length; SizeError for depth > max_depth.
    CoinGame(int depth, std::vector<double> values);

    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] std::size_t node_count() const noexcept {
        return values_.size();
    }
    [[nodiscard]] std::size_t leaf_count() const noexcept {
        return std::size_t{1} << depth_;
    }
    [[nodiscard]] const std::vector<double> &values() const noexcept {
        return values_;
    }

    /// Value stored at @p node. @throws DepthError if the node lies outside
    /// the tree.
    [[nodiscard]] double value(NodeId node) const;

    [[nodiscard]] bool is_leaf(NodeId node) const noexcept {
        return node.depth == depth_;
    }

    /// Number of nodes a depth-n tree holds: 2^(n+1) - 1.
    static std::size_t nodes_for_depth(int depth) noexcept {
        return (std::size_t{2} << depth) - 1;
    }

  private:
    int depth_;
    std::vector<double> values_;
};

/// One real value per node of a fixed-depth tree (holds the H, A, B, P, W,
/// and Z assignments).
struct TreeAssignment {
    int depth = 0;
    std::vector<double> values;

    static TreeAssignment zeros(int depth) {
        return {depth, std::vector<double>(CoinGame::nodes_for_depth(depth))};
    }

    [[nodiscard]] double value(NodeId node) const {
        return values.at(node.index());
    }
    [[nodiscard]] double root() const { return values.at(0); }
};

/// What a single validation failure is about.
enum class IssueKind {
    shape, ///< array length inconsistent with the declared depth
    range, ///< interior value outside [0,1]
    leaf,  ///< leaf value not exactly 0 or 1
};

struct ValidationIssue {
    IssueKind kind;
    std::string node;    ///< path label of the offending node ("" = root)
    double value;        ///< the offending value (0 for shape issues)
    std::string message; ///< human-readable description
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    [[nodiscard]] bool ok() const noexcept { return issues.empty(); }
};

/// Checks a raw (depth, values) pair: array length, interior range, exact
/// binary leaves.  Never throws; every violation is listed.
ValidationReport validate(int depth, const std::vector<double> &values);

/// Same checks for an already-constructed game (its shape is correct by
/// construction).
ValidationReport validate(const CoinGame &game);

/// @throws DomainError describing the first validation issue, if any.
void require_valid(const CoinGame &game);

/// Backward recursion for the honest second-party win probability.
TreeAssignment eval_h(const CoinGame &game);

/// The A and B value trees of the two cheating analyses.
struct ABTrees {
    TreeAssignment a;
    TreeAssignment b;
};

/// Backward recursions for both cheating value trees.
ABTrees eval_ab(const CoinGame &game);

/// Forward recursion for the honest reach probability of every node
/// (P_root = 1, children split by the coin bias).
TreeAssignment eval_p(const CoinGame &game);

/// Weight tree of the explicit optimal cheating strategy for the second
/// party.  W_root = 1; children at odd depth split by the coin,
/// W_{y0} = G_y W_y and W_{y1} = (1-G_y) W_y; a child x at even depth takes
/// W_x = coin * B_x^2 W_y / B_y (coin = G_y for x = y0, 1-G_y for x = y1),
/// with both children forced to 0 whenever B_y = 0.
///
/// @param b the B tree from eval_ab(game).
TreeAssignment eval_w(const CoinGame &game, const TreeAssignment &b);

/// Node values of the dual certificate. Z_root = B_r^2 / h_root; a node x at
/// odd depth with parent y takes Z_x = sqrt(B_x) Z_y / B_y; a node at even
/// depth copies its parent; both children are forced to 0 whenever the
/// parent has B_y = 0.
///
/// @param b      the B tree from eval_ab(game).
/// @param h_root the root of eval_h(game).
/// @throws DegenerateGame unless 0 < h_root < 1.
TreeAssignment eval_z(const CoinGame &game, const TreeAssignment &b,
                      double h_root);

/// Operating point of the protocol built from a game: honest win
/// probabilities and both parties' cheating bounds.
struct ProtocolPoint {
    double pa;      ///< honest first-party win probability, 1 - H_r
    double pa_star; ///< cheating first party's success bound, A_r / (1-H_r)
    double pb_star; ///< cheating second party's success bound, B_r^2 / H_r
    double a_root;
    double b_root;
    double h_root;

    /// Excess advantage of the better-off cheater over a fair coin.
    [[nodiscard]] double bias() const noexcept {
        return (pa_star > pb_star ? pa_star : pb_star) - 0.5;
    }
};

/// @throws DegenerateGame when H_r is 0 or 1 (one party can never win, so
///         cheating probabilities are undefined).
ProtocolPoint protocol_point(const CoinGame &game);

/// A game split at the root: the top coin plus the two depth-(n-1) subgames
/// with their leaf labels flipped (each subgame is a complete game for the
/// parties with roles shifted one move).
struct Decomposition {
    double gamma;
    CoinGame left;
    CoinGame right;
};

/// Splits a game of depth >= 2 into its top coin and two leaf-flipped
/// subgames.  The roots recombine as A_r = gamma*B_L^2 + (1-gamma)*B_R^2 and
/// B_r = gamma*sqrt(A_L) + (1-gamma)*sqrt(A_R).
/// @throws DepthError for depth < 2.
Decomposition decompose(const CoinGame &game);

/// Inverse of decompose: builds the depth-(n+1) game with top coin @p gamma
/// whose leaf-flipped subgames are @p left and @p right.
/// @throws DepthError if the subgame depths differ; DomainError if gamma is
///         outside [0,1].
CoinGame compose(double gamma, const CoinGame &left, const CoinGame &right);

/// The depth-(n+1) game with the parties' roles exchanged: a forced first
/// move (root coin 1), both subtrees copies of the original with leaf
/// labels flipped.  Satisfies B'_r^2 = A_r and H'_r = 1 - H_r, so the first
/// party's cheating analysis of the original becomes the second party's
/// analysis of the reversal.
CoinGame reverse_roles(const CoinGame &game);

/// Deterministic pseudo-random game: interior coins uniform on [0,1), leaf
/// labels fair Bernoulli.  Identical (depth, seed) pairs yield identical
/// games.
CoinGame random_game(int depth, std::uint64_t seed);

/// Level-k sum Σ_{|x|=k} B_x^e sqrt(W_x P_x) with exponent e = 1 at even k
/// and e = 1/2 at odd k; equal to B_r at every level for a correctly built
/// W tree.
double conserved_sum_primal(const CoinGame &game, const TreeAssignment &b,
                            const TreeAssignment &p, const TreeAssignment &w,
                            int k);

/// Level-k sum Σ_{|x|=k, Z_x>0} B_x^{2e} P_x / (h_root Z_x), same exponent
/// convention; equal to 1 at every level for a correctly built Z tree.
double conserved_sum_dual(const CoinGame &game, const TreeAssignment &b,
                          const TreeAssignment &p, const TreeAssignment &z,
                          double h_root, int k);

} // namespace weakcoin
