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

#include "weakcoin/game.hpp"

#include <cmath>
#include <random>
#include <utility>

namespace weakcoin {

namespace {

/// First flat index of depth-d nodes.
std::size_t level_begin(int d) noexcept { return (std::size_t{1} << d) - 1; }

/// Number of nodes at depth d.
std::size_t level_size(int d) noexcept { return std::size_t{1} << d; }

std::string node_label(int depth, std::uint64_t path) {
    std::string s(static_cast<std::size_t>(depth), '0');
    for (int i = 0; i < depth; ++i) {
        if ((path >> (depth - 1 - i)) & 1U) {
            s[static_cast<std::size_t>(i)] = '1';
        }
    }
    return s;
}

/// Uniform double in [0,1) from the top 53 bits of a 64-bit draw; spelled
/// out so fixtures do not depend on the standard library's unspecified
/// distribution mapping.
double uniform_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

std::string NodeId::label() const { return node_label(depth, path); }

NodeId NodeId::from_index(std::size_t index) noexcept {
    int depth = 0;
    while (level_begin(depth + 1) <= index) {
        ++depth;
    }
    return {depth, index - level_begin(depth)};
}

CoinGame::CoinGame(int depth, std::vector<double> values)
    : depth_(depth), values_(std::move(values)) {
    if (depth < 1) {
        throw DepthError("game depth must be at least 1, got " +
                         std::to_string(depth));
    }
    if (depth > max_depth) {
        throw SizeError("game depth " + std::to_string(depth) +
                        " exceeds the materialization limit of " +
                        std::to_string(max_depth));
    }
    const std::size_t expected = nodes_for_depth(depth);
    if (values_.size() != expected) {
        throw DepthError("depth-" + std::to_string(depth) +
                         " game requires " + std::to_string(expected) +
                         " node values, got " +
                         std::to_string(values_.size()));
    }
}

double CoinGame::value(NodeId node) const {
    if (node.depth < 0 || node.depth > depth_ ||
        node.path >= level_size(node.depth)) {
        throw DepthError("node " + node_label(node.depth, node.path) +
                         " lies outside a depth-" + std::to_string(depth_) +
                         " tree");
    }
    return values_[node.index()];
}

ValidationReport validate(int depth, const std::vector<double> &values) {
    ValidationReport report;
    if (depth < 1) {
        report.issues.push_back({IssueKind::shape, "", 0.0,
                                 "depth must be at least 1, got " +
                                     std::to_string(depth)});
        return report;
    }
    const std::size_t expected = CoinGame::nodes_for_depth(depth);
    if (values.size() != expected) {
        report.issues.push_back(
            {IssueKind::shape, "", 0.0,
             "expected " + std::to_string(expected) + " node values, got " +
                 std::to_string(values.size())});
        return report;
    }
    for (int d = 0; d < depth; ++d) {
        for (std::size_t p = 0; p < level_size(d); ++p) {
            const double v = values[level_begin(d) + p];
            if (!(v >= 0.0 && v <= 1.0)) {
                report.issues.push_back(
                    {IssueKind::range, node_label(d, p), v,
                     "interior value " + std::to_string(v) +
                         " outside [0,1] at node \"" + node_label(d, p) +
                         "\""});
            }
        }
    }
    for (std::size_t p = 0; p < level_size(depth); ++p) {
        const double v = values[level_begin(depth) + p];
        if (v != 0.0 && v != 1.0) {
            report.issues.push_back(
                {IssueKind::leaf, node_label(depth, p), v,
                 "leaf value " + std::to_string(v) +
                     " is not exactly 0 or 1 at node \"" +
                     node_label(depth, p) + "\""});
        }
    }
    return report;
}

ValidationReport validate(const CoinGame &game) {
    return validate(game.depth(), game.values());
}

void require_valid(const CoinGame &game) {
    const ValidationReport report = validate(game);
    if (!report.ok()) {
        throw DomainError("invalid game: " + report.issues.front().message);
    }
}

TreeAssignment eval_h(const CoinGame &game) {
    require_valid(game);
    const int n = game.depth();
    TreeAssignment h = TreeAssignment::zeros(n);
    for (std::size_t p = 0; p < level_size(n); ++p) {
        h.values[level_begin(n) + p] = game.values()[level_begin(n) + p];
    }
    for (int d = n - 1; d >= 0; --d) {
        for (std::size_t p = 0; p < level_size(d); ++p) {
            const std::size_t i = level_begin(d) + p;
            const std::size_t c0 = level_begin(d + 1) + 2 * p;
            const double g = game.values()[i];
            h.values[i] = g * h.values[c0] + (1.0 - g) * h.values[c0 + 1];
        }
    }
    return h;
}

ABTrees eval_ab(const CoinGame &game) {
    require_valid(game);
    const int n = game.depth();
    TreeAssignment a = TreeAssignment::zeros(n);
    TreeAssignment b = TreeAssignment::zeros(n);
    for (std::size_t p = 0; p < level_size(n); ++p) {
        const double g = game.values()[level_begin(n) + p];
        a.values[level_begin(n) + p] = 1.0 - g;
        b.values[level_begin(n) + p] = g;
    }
    for (int d = n - 1; d >= 0; --d) {
        const bool even = (d % 2 == 0);
        for (std::size_t p = 0; p < level_size(d); ++p) {
            const std::size_t i = level_begin(d) + p;
            const std::size_t c0 = level_begin(d + 1) + 2 * p;
            const double g = game.values()[i];
            const double a0 = a.values[c0];
            const double a1 = a.values[c0 + 1];
            const double b0 = b.values[c0];
            const double b1 = b.values[c0 + 1];
            if (even) {
                // A mixes squares, B mixes square roots at even depth; the
                // rules swap at odd depth.
                a.values[i] = g * a0 * a0 + (1.0 - g) * a1 * a1;
                b.values[i] =
                    g * std::sqrt(b0) + (1.0 - g) * std::sqrt(b1);
            } else {
                a.values[i] =
                    g * std::sqrt(a0) + (1.0 - g) * std::sqrt(a1);
                b.values[i] = g * b0 * b0 + (1.0 - g) * b1 * b1;
            }
        }
    }
    return {std::move(a), std::move(b)};
}

TreeAssignment eval_p(const CoinGame &game) {
    require_valid(game);
    const int n = game.depth();
    TreeAssignment p = TreeAssignment::zeros(n);
    p.values[0] = 1.0;
    for (int d = 0; d < n; ++d) {
        for (std::size_t q = 0; q < level_size(d); ++q) {
            const std::size_t i = level_begin(d) + q;
            const std::size_t c0 = level_begin(d + 1) + 2 * q;
            const double g = game.values()[i];
            p.values[c0] = g * p.values[i];
            p.values[c0 + 1] = (1.0 - g) * p.values[i];
        }
    }
    return p;
}

TreeAssignment eval_w(const CoinGame &game, const TreeAssignment &b) {
    require_valid(game);
    const int n = game.depth();
    if (b.depth != n) {
        throw DepthError("B tree depth " + std::to_string(b.depth) +
                         " does not match game depth " + std::to_string(n));
    }
    TreeAssignment w = TreeAssignment::zeros(n);
    w.values[0] = 1.0;
    for (int d = 0; d < n; ++d) {
        const bool child_odd = ((d + 1) % 2 == 1);
        for (std::size_t q = 0; q < level_size(d); ++q) {
            const std::size_t i = level_begin(d) + q;
            const std::size_t c0 = level_begin(d + 1) + 2 * q;
            const double g = game.values()[i];
            const double wy = w.values[i];
            if (child_odd) {
                w.values[c0] = g * wy;
                w.values[c0 + 1] = (1.0 - g) * wy;
            } else {
                const double by = b.values[i];
                if (by == 0.0) {
                    // Zero-division convention: a vanishing B weight kills
                    // the whole subtree.
                    w.values[c0] = 0.0;
                    w.values[c0 + 1] = 0.0;
                } else {
                    const double b0 = b.values[c0];
                    const double b1 = b.values[c0 + 1];
                    w.values[c0] = g * b0 * b0 * wy / by;
                    w.values[c0 + 1] = (1.0 - g) * b1 * b1 * wy / by;
                }
            }
        }
    }
    return w;
}

TreeAssignment eval_z(const CoinGame &game, const TreeAssignment &b,
                      double h_root) {
    require_valid(game);
    const int n = game.depth();
    if (b.depth != n) {
        throw DepthError("B tree depth " + std::to_string(b.depth) +
                         " does not match game depth " + std::to_string(n));
    }
    if (!(h_root > 0.0 && h_root < 1.0)) {
        throw DegenerateGame(
            "dual node values require 0 < H_r < 1, got H_r = " +
            std::to_string(h_root));
    }
    TreeAssignment z = TreeAssignment::zeros(n);
    z.values[0] = b.values[0] * b.values[0] / h_root;
    for (int d = 0; d < n; ++d) {
        const bool child_odd = ((d + 1) % 2 == 1);
        for (std::size_t q = 0; q < level_size(d); ++q) {
            const std::size_t i = level_begin(d) + q;
            const std::size_t c0 = level_begin(d + 1) + 2 * q;
            const double zy = z.values[i];
            if (child_odd) {
                const double by = b.values[i];
                if (by == 0.0) {
                    z.values[c0] = 0.0;
                    z.values[c0 + 1] = 0.0;
                } else {
                    z.values[c0] = std::sqrt(b.values[c0]) * zy / by;
                    z.values[c0 + 1] = std::sqrt(b.values[c0 + 1]) * zy / by;
                }
            } else {
                z.values[c0] = zy;
                z.values[c0 + 1] = zy;
            }
        }
    }
    return z;
}

ProtocolPoint protocol_point(const CoinGame &game) {
    const TreeAssignment h = eval_h(game);
    const ABTrees ab = eval_ab(game);
    const double hr = h.root();
    if (hr <= 0.0 || hr >= 1.0) {
        throw DegenerateGame(
            "game is degenerate (honest win probability " +
            std::to_string(hr) + "); cheating bounds are undefined");
    }
    ProtocolPoint point{};
    point.a_root = ab.a.root();
    point.b_root = ab.b.root();
    point.h_root = hr;
    point.pa = 1.0 - hr;
    point.pa_star = point.a_root / (1.0 - hr);
    point.pb_star = point.b_root * point.b_root / hr;
    return point;
}

Decomposition decompose(const CoinGame &game) {
    const int n = game.depth();
    if (n < 2) {
        throw DepthError("decompose requires depth >= 2, got " +
                         std::to_string(n));
    }
    const int m = n - 1;
    std::vector<double> left(CoinGame::nodes_for_depth(m));
    std::vector<double> right(CoinGame::nodes_for_depth(m));
    for (int d = 0; d <= m; ++d) {
        const bool leaf = (d == m);
        for (std::size_t p = 0; p < level_size(d); ++p) {
            const std::size_t sub = level_begin(d) + p;
            // Subgame node (d, p) came from parent node (d+1, s‖p).
            const std::size_t src0 = level_begin(d + 1) + p;
            const std::size_t src1 = level_begin(d + 1) + level_size(d) + p;
            const double v0 = game.values()[src0];
            const double v1 = game.values()[src1];
            left[sub] = leaf ? 1.0 - v0 : v0;
            right[sub] = leaf ? 1.0 - v1 : v1;
        }
    }
    return {game.values()[0], CoinGame(m, std::move(left)),
            CoinGame(m, std::move(right))};
}

CoinGame compose(double gamma, const CoinGame &left, const CoinGame &right) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw DomainError("top coin must lie in [0,1], got " +
                          std::to_string(gamma));
    }
    const int m = left.depth();
    if (right.depth() != m) {
        throw DepthError("compose requires equal subgame depths, got " +
                         std::to_string(m) + " and " +
                         std::to_string(right.depth()));
    }
    const int n = m + 1;
    if (n > CoinGame::max_depth) {
        throw SizeError("composed depth " + std::to_string(n) +
                        " exceeds the materialization limit");
    }
    std::vector<double> values(CoinGame::nodes_for_depth(n));
    values[0] = gamma;
    for (int d = 0; d <= m; ++d) {
        const bool leaf = (d == m);
        for (std::size_t p = 0; p < level_size(d); ++p) {
            const std::size_t sub = level_begin(d) + p;
            const std::size_t dst0 = level_begin(d + 1) + p;
            const std::size_t dst1 = level_begin(d + 1) + level_size(d) + p;
            const double v0 = left.values()[sub];
            const double v1 = right.values()[sub];
            values[dst0] = leaf ? 1.0 - v0 : v0;
            values[dst1] = leaf ? 1.0 - v1 : v1;
        }
    }
    return {n, std::move(values)};
}

CoinGame reverse_roles(const CoinGame &game) {
    const int n = game.depth();
    if (n + 1 > CoinGame::max_depth) {
        throw SizeError("reversed depth " + std::to_string(n + 1) +
                        " exceeds the materialization limit");
    }
    std::vector<double> values(CoinGame::nodes_for_depth(n + 1));
    values[0] = 1.0;
    for (int d = 0; d <= n; ++d) {
        const bool leaf = (d == n);
        for (std::size_t p = 0; p < level_size(d); ++p) {
            const double v = game.values()[level_begin(d) + p];
            const double out = leaf ? 1.0 - v : v;
            // Both children of the forced first move carry the same copy.
            values[level_begin(d + 1) + p] = out;
            values[level_begin(d + 1) + level_size(d) + p] = out;
        }
    }
    return {n + 1, std::move(values)};
}

CoinGame random_game(int depth, std::uint64_t seed) {
    if (depth < 1) {
        throw DepthError("game depth must be at least 1, got " +
                         std::to_string(depth));
    }
    if (depth > CoinGame::max_depth) {
        throw SizeError("game depth " + std::to_string(depth) +
                        " exceeds the materialization limit");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> values(CoinGame::nodes_for_depth(depth));
    for (int d = 0; d < depth; ++d) {
        for (std::size_t p = 0; p < level_size(d); ++p) {
            values[level_begin(d) + p] = uniform_unit(rng);
        }
    }
    for (std::size_t p = 0; p < level_size(depth); ++p) {
        values[level_begin(depth) + p] =
            static_cast<double>(rng() & 1ULL);
    }
    return {depth, std::move(values)};
}

double conserved_sum_primal(const CoinGame &game, const TreeAssignment &b,
                            const TreeAssignment &p, const TreeAssignment &w,
                            int k) {
    if (k < 0 || k > game.depth()) {
        throw DepthError("level " + std::to_string(k) +
                         " outside depth-" + std::to_string(game.depth()) +
                         " tree");
    }
    const bool even = (k % 2 == 0);
    double sum = 0.0;
    for (std::size_t q = 0; q < level_size(k); ++q) {
        const std::size_t i = level_begin(k) + q;
        const double bx = b.values[i];
        const double weight = even ? bx : std::sqrt(bx);
        sum += weight * std::sqrt(w.values[i] * p.values[i]);
    }
    return sum;
}

double conserved_sum_dual(const CoinGame &game, const TreeAssignment &b,
                          const TreeAssignment &p, const TreeAssignment &z,
                          double h_root, int k) {
    if (k < 0 || k > game.depth()) {
        throw DepthError("level " + std::to_string(k) +
                         " outside depth-" + std::to_string(game.depth()) +
                         " tree");
    }
    const bool even = (k % 2 == 0);
    double sum = 0.0;
    for (std::size_t q = 0; q < level_size(k); ++q) {
        const std::size_t i = level_begin(k) + q;
        const double zx = z.values[i];
        if (zx <= 0.0) {
            continue; // zero-weight branches are excluded by convention
        }
        const double bx = b.values[i];
        const double weight = even ? bx * bx : bx;
        sum += weight * p.values[i] / (h_root * zx);
    }
    return sum;
}

} // namespace weakcoin
