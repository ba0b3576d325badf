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

#include "weakcoin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "weakcoin/protocol.hpp"

namespace weakcoin {

namespace {

using Triplet = Eigen::Triplet<double>;

struct Decoded {
    std::uint64_t a;
    std::uint64_t a_prime;
    int ac;
    int m;
    std::uint64_t mn;
};

Decoded decode(const VerifySpace &space, std::size_t full) {
    const int n = space.n;
    const std::size_t ia = full / space.message_dim();
    const std::size_t im = full % space.message_dim();
    Decoded d{};
    d.a = static_cast<std::uint64_t>(ia >> (n + 1));
    d.a_prime =
        (static_cast<std::uint64_t>(ia) >> 1) & ((std::uint64_t{1} << n) - 1);
    d.ac = static_cast<int>(ia & 1);
    d.m = static_cast<int>(im >> n);
    d.mn = static_cast<std::uint64_t>(im) & ((std::uint64_t{1} << n) - 1);
    return d;
}

SparseOp from_triplets(std::size_t dim, std::vector<Triplet> &trips) {
    SparseOp op(static_cast<Eigen::Index>(dim),
                static_cast<Eigen::Index>(dim));
    op.setFromTriplets(trips.begin(), trips.end());
    return op;
}

void check_size(const CoinGame &game, int depth_limit) {
    if (game.depth() > depth_limit) {
        throw SizeError("dense certification handles depth up to " +
                        std::to_string(depth_limit) + ", got " +
                        std::to_string(game.depth()));
    }
}

/// Partial trace over the message factor of a sparse operator on the
/// joined space.
SparseOp trace_message(const VerifySpace &space, const SparseOp &op) {
    const std::size_t dm = space.message_dim();
    std::vector<Triplet> trips;
    for (int outer = 0; outer < op.outerSize(); ++outer) {
        for (SparseOp::InnerIterator it(op, outer); it; ++it) {
            const std::size_t r = static_cast<std::size_t>(it.row());
            const std::size_t c = static_cast<std::size_t>(it.col());
            if (r % dm == c % dm) {
                trips.emplace_back(static_cast<int>(r / dm),
                                   static_cast<int>(c / dm), it.value());
            }
        }
    }
    return from_triplets(space.alice_dim(), trips);
}

double max_abs_entry(const SparseOp &op) {
    double m = 0.0;
    for (int outer = 0; outer < op.outerSize(); ++outer) {
        for (SparseOp::InnerIterator it(op, outer); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

double max_diff(const SparseOp &lhs, const SparseOp &rhs) {
    return max_abs_entry(SparseOp(lhs - rhs));
}

/// Strategy weights: the W recursion, except that subtrees the scaled rule
/// would zero out (parent B = 0) keep splitting by the raw coin so that no
/// probability mass is lost.  Such subtrees never contribute to the final
/// projection, so the strategy's value is unchanged.
TreeAssignment strategy_weights(const CoinGame &game,
                                const TreeAssignment &b) {
    const int n = game.depth();
    TreeAssignment w = TreeAssignment::zeros(n);
    w.values[0] = 1.0;
    for (int depth = 0; depth < n; ++depth) {
        for (std::uint64_t path = 0; path < (std::uint64_t{1} << depth);
             ++path) {
            const NodeId y{depth, path};
            const double g = game.value(y);
            const double wy = w.value(y);
            const NodeId y0 = y.child(0);
            const NodeId y1 = y.child(1);
            double w0 = g * wy;
            double w1 = (1.0 - g) * wy;
            if ((depth + 1) % 2 == 0 && b.value(y) > 0.0) {
                w0 *= b.value(y0) * b.value(y0) / b.value(y);
                w1 *= b.value(y1) * b.value(y1) / b.value(y);
            }
            w.values[y0.index()] = w0;
            w.values[y1.index()] = w1;
        }
    }
    return w;
}

/// Diagonal sparse state with the given (index, weight) entries.
SparseOp diagonal_state(std::size_t dim,
                        const std::vector<std::pair<std::size_t, double>>
                            &entries) {
    std::vector<Triplet> trips;
    trips.reserve(entries.size());
    for (const auto &[index, weight] : entries) {
        trips.emplace_back(static_cast<int>(index), static_cast<int>(index),
                           weight);
    }
    return from_triplets(dim, trips);
}

Eigen::VectorXd padded_diagonal(const VerifySpace &space,
                                const Eigen::VectorXd &alice_diag) {
    const std::size_t dm = space.message_dim();
    Eigen::VectorXd full(static_cast<Eigen::Index>(space.full_dim()));
    for (std::size_t i = 0; i < space.full_dim(); ++i) {
        full(static_cast<Eigen::Index>(i)) =
            alice_diag(static_cast<Eigen::Index>(i / dm));
    }
    return full;
}

/// Scales every row r of @p op by @p row_weights(r).
SparseOp scale_rows(const SparseOp &op, const Eigen::VectorXd &row_weights) {
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(op.nonZeros()));
    for (int outer = 0; outer < op.outerSize(); ++outer) {
        for (SparseOp::InnerIterator it(op, outer); it; ++it) {
            trips.emplace_back(static_cast<int>(it.row()),
                               static_cast<int>(it.col()),
                               it.value() * row_weights(it.row()));
        }
    }
    SparseOp out(op.rows(), op.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

/// Smallest eigenvalue of diag(lhs) - op^T diag(rhs) op, densely.
double sandwich_min_eig(const Eigen::VectorXd &lhs, const SparseOp &op,
                        const Eigen::VectorXd &rhs) {
    const SparseOp conjugated = SparseOp(op.transpose()) * scale_rows(op, rhs);
    Eigen::MatrixXd dense = Eigen::MatrixXd(conjugated);
    dense = -dense;
    dense.diagonal() += lhs;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        dense, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

} // namespace

AliceSideOperators alice_side_operators(const CoinGame &game,
                                        int depth_limit) {
    require_valid(game);
    check_size(game, depth_limit);
    const int n = game.depth();
    const VerifySpace space{n};
    const std::size_t full = space.full_dim();
    const std::size_t da = space.alice_dim();
    const std::size_t dm = space.message_dim();

    AliceSideOperators ops;
    ops.n = n;
    ops.space = space;

    for (int k = 1; k <= n; ++k) {
        std::vector<Triplet> rot;
        std::vector<Triplet> swp;
        rot.reserve(2 * full);
        swp.reserve(full);
        for (std::size_t col = 0; col < full; ++col) {
            const Decoded d = decode(space, col);
            const std::uint64_t prefix = d.a >> (n - k + 1);
            const int ak = static_cast<int>((d.a >> (n - k)) & 1ULL);
            // Coin rotation on (a_k, m), angle set by the transcript so far.
            const auto u = u_matrix(game.value(NodeId{k - 1, prefix}));
            const int in = 2 * ak + d.m;
            for (int out = 0; out < 4; ++out) {
                const double v = u[static_cast<std::size_t>(out)]
                                  [static_cast<std::size_t>(in)];
                if (v == 0.0) {
                    continue;
                }
                const std::uint64_t mask = std::uint64_t{1} << (n - k);
                const std::uint64_t a_new =
                    (out >> 1) != 0 ? (d.a | mask) : (d.a & ~mask);
                const std::size_t row = space.full_index(
                    space.alice_index(a_new, d.a_prime, d.ac),
                    space.message_index(out & 1, d.mn));
                rot.emplace_back(static_cast<int>(row),
                                 static_cast<int>(col), v);
            }
            // Swap of a_k with the single-qubit message.
            const std::uint64_t mask = std::uint64_t{1} << (n - k);
            const std::uint64_t a_sw =
                d.m != 0 ? (d.a | mask) : (d.a & ~mask);
            const std::size_t row =
                space.full_index(space.alice_index(a_sw, d.a_prime, d.ac),
                                 space.message_index(ak, d.mn));
            swp.emplace_back(static_cast<int>(row), static_cast<int>(col),
                             1.0);
        }
        ops.rotations.push_back(from_triplets(full, rot));
        ops.swaps.push_back(from_triplets(full, swp));
    }

    {
        // Outcome marking: a 2x2 action on ac controlled by the leaf in a.
        std::vector<Triplet> trips;
        trips.reserve(2 * da);
        for (std::size_t col = 0; col < da; ++col) {
            const std::uint64_t a = static_cast<std::uint64_t>(col) >> (n + 1);
            const std::uint64_t ap = (static_cast<std::uint64_t>(col) >> 1) &
                                     ((std::uint64_t{1} << n) - 1);
            const int ac = static_cast<int>(col & 1);
            const double g = game.value(NodeId{n, a});
            const double to0 = ac == 0 ? 1.0 - g : -g;
            const double to1 = ac == 0 ? g : 1.0 - g;
            if (to0 != 0.0) {
                trips.emplace_back(
                    static_cast<int>(space.alice_index(a, ap, 0)),
                    static_cast<int>(col), to0);
            }
            if (to1 != 0.0) {
                trips.emplace_back(
                    static_cast<int>(space.alice_index(a, ap, 1)),
                    static_cast<int>(col), to1);
            }
        }
        ops.mark_alice = from_triplets(da, trips);

        std::vector<Triplet> padded;
        padded.reserve(static_cast<std::size_t>(ops.mark_alice.nonZeros()) *
                       dm);
        for (int outer = 0; outer < ops.mark_alice.outerSize(); ++outer) {
            for (SparseOp::InnerIterator it(ops.mark_alice, outer); it;
                 ++it) {
                for (std::size_t im = 0; im < dm; ++im) {
                    padded.emplace_back(
                        static_cast<int>(space.full_index(
                            static_cast<std::size_t>(it.row()), im)),
                        static_cast<int>(space.full_index(
                            static_cast<std::size_t>(it.col()), im)),
                        it.value());
                }
            }
        }
        ops.mark = from_triplets(full, padded);
    }

    {
        std::vector<Triplet> t0;
        std::vector<Triplet> t1;
        t0.reserve(full);
        t1.reserve(full);
        for (std::size_t col = 0; col < full; ++col) {
            const Decoded d = decode(space, col);
            std::size_t row0 = col;
            std::size_t row1 = col;
            if (d.ac == 0) {
                row0 = space.full_index(
                    space.alice_index(d.mn, d.a_prime, d.ac),
                    space.message_index(d.m, d.a));
            } else {
                row1 = space.full_index(
                    space.alice_index(d.a, d.mn, d.ac),
                    space.message_index(d.m, d.a_prime));
            }
            t0.emplace_back(static_cast<int>(row0), static_cast<int>(col),
                            1.0);
            t1.emplace_back(static_cast<int>(row1), static_cast<int>(col),
                            1.0);
        }
        ops.ship_zero = from_triplets(full, t0);
        ops.ship_one = from_triplets(full, t1);
    }
    return ops;
}

Eigen::VectorXd alice_target_vector(const CoinGame &game) {
    const int n = game.depth();
    const VerifySpace space{n};
    const double hr = eval_h(game).root();
    if (hr <= 0.0 || hr >= 1.0) {
        throw DegenerateGame(
            "the verification state requires 0 < H_r < 1, got H_r = " +
            std::to_string(hr));
    }
    const TreeAssignment p = eval_p(game);
    Eigen::VectorXd psi =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.alice_dim()));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const NodeId leaf{n, x};
        if (game.value(leaf) == 1.0) {
            psi(static_cast<Eigen::Index>(space.alice_index(x, x, 1))) =
                std::sqrt(p.value(leaf) / hr);
        }
    }
    return psi;
}

PrimalStrategy build_primal(const CoinGame &game, int depth_limit) {
    require_valid(game);
    check_size(game, depth_limit);
    const int n = game.depth();
    const double hr = eval_h(game).root();
    if (hr <= 0.0 || hr >= 1.0) {
        throw DegenerateGame("cheating probabilities require 0 < H_r < 1, "
                             "got H_r = " +
                             std::to_string(hr));
    }
    const ABTrees ab = eval_ab(game);
    const TreeAssignment w = strategy_weights(game, ab.b);

    PrimalStrategy s;
    s.n = n;
    s.space = VerifySpace{n};
    const VerifySpace &space = s.space;
    const std::size_t msg_zero = space.message_index(0, 0);

    for (int k = 0; k <= n; ++k) {
        Eigen::VectorXd sigma(static_cast<Eigen::Index>(std::size_t{1}
                                                        << k));
        std::vector<std::pair<std::size_t, double>> entries;
        entries.reserve(std::size_t{1} << k);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
            const double wx = w.value(NodeId{k, x});
            sigma(static_cast<Eigen::Index>(x)) = wx;
            const std::size_t ia = space.alice_index(x << (n - k), 0, 0);
            const std::size_t index =
                k % 2 == 0 ? space.full_index(ia, msg_zero) : ia;
            entries.emplace_back(index, wx);
        }
        s.sigma.push_back(std::move(sigma));
        s.rho.push_back(diagonal_state(
            k % 2 == 0 ? space.full_dim() : space.alice_dim(), entries));
    }

    std::vector<std::pair<std::size_t, double>> marked;
    std::vector<std::pair<std::size_t, double>> winners;
    double loser = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const NodeId leaf{n, x};
        const double g = game.value(leaf);
        const double wx = w.value(leaf);
        marked.emplace_back(
            space.full_index(space.alice_index(x, 0, g == 1.0 ? 1 : 0),
                             msg_zero),
            wx);
        if (g == 1.0) {
            winners.emplace_back(
                space.full_index(space.alice_index(x, x, 1), msg_zero), wx);
        } else {
            loser += wx;
        }
    }
    s.rho_e = diagonal_state(space.full_dim(), marked);
    s.loser_weight = loser;

    std::vector<Triplet> final_trips;
    final_trips.reserve(winners.size() * winners.size() + 1);
    for (const auto &[i, wi] : winners) {
        for (const auto &[j, wj] : winners) {
            final_trips.emplace_back(static_cast<int>(i),
                                     static_cast<int>(j),
                                     std::sqrt(wi) * std::sqrt(wj));
        }
    }
    if (loser != 0.0) {
        final_trips.emplace_back(0, 0, loser);
    }
    s.rho_f = from_triplets(space.full_dim(), final_trips);
    return s;
}

PrimalCheckReport measure_primal_constraints(const CoinGame &game,
                                             const PrimalStrategy &strategy) {
    const int n = game.depth();
    const AliceSideOperators ops = alice_side_operators(game, n);
    const VerifySpace &space = strategy.space;

    PrimalCheckReport report;
    auto push = [&report](std::string name, double value) {
        report.residuals.push_back({std::move(name), value});
        report.max_residual = std::max(report.max_residual, value);
    };

    {
        std::vector<Triplet> unit{{0, 0, 1.0}};
        push("initial state",
             max_diff(strategy.rho[0], from_triplets(space.full_dim(), unit)));
    }
    for (int k = 1; k <= n; ++k) {
        if (k % 2 == 1) {
            const SparseOp &r = ops.rotations[static_cast<std::size_t>(k - 1)];
            const SparseOp evolved = trace_message(
                space, SparseOp(SparseOp(r * strategy.rho[k - 1]) *
                                SparseOp(r.transpose())));
            push("round " + std::to_string(k) + " rotation",
                 max_diff(evolved, strategy.rho[k]));
        } else {
            const SparseOp &sw = ops.swaps[static_cast<std::size_t>(k - 1)];
            const SparseOp undone = trace_message(
                space, SparseOp(SparseOp(SparseOp(sw.transpose()) *
                                         strategy.rho[k]) *
                                sw));
            push("round " + std::to_string(k) + " swap",
                 max_diff(undone, strategy.rho[k - 1]));
        }
    }
    if (n % 2 == 0) {
        const SparseOp marked =
            SparseOp(SparseOp(ops.mark * strategy.rho[n]) *
                     SparseOp(ops.mark.transpose()));
        push("outcome marking", max_diff(marked, strategy.rho_e));
    } else {
        const SparseOp marked =
            SparseOp(SparseOp(ops.mark_alice * strategy.rho[n]) *
                     SparseOp(ops.mark_alice.transpose()));
        push("outcome marking",
             max_diff(marked, trace_message(space, strategy.rho_e)));
    }
    {
        const SparseOp lhs = trace_message(
            space, SparseOp(SparseOp(SparseOp(ops.ship_one.transpose()) *
                                     strategy.rho_f) *
                            ops.ship_one));
        const SparseOp rhs = trace_message(
            space, SparseOp(SparseOp(ops.ship_zero * strategy.rho_e) *
                            SparseOp(ops.ship_zero.transpose())));
        push("final shipment", max_diff(lhs, rhs));
    }
    return report;
}

PrimalCheckReport check_primal_constraints(const CoinGame &game,
                                           const PrimalStrategy &strategy,
                                           double tol) {
    PrimalCheckReport report = measure_primal_constraints(game, strategy);
    for (const ConstraintResidual &r : report.residuals) {
        if (!(r.value <= tol)) {
            throw ConstraintViolation(
                "strategy constraint '" + r.name + "' deviates by " +
                std::to_string(r.value) + " (tolerance " +
                std::to_string(tol) + ")");
        }
    }
    return report;
}

double primal_value(const CoinGame &game, const PrimalStrategy &strategy) {
    const Eigen::VectorXd psi = alice_target_vector(game);
    const VerifySpace &space = strategy.space;
    const std::size_t dm = space.message_dim();
    // The target has the message registers in the all-zeros state.
    double value = 0.0;
    for (int outer = 0; outer < strategy.rho_f.outerSize(); ++outer) {
        for (SparseOp::InnerIterator it(strategy.rho_f, outer); it; ++it) {
            const std::size_t r = static_cast<std::size_t>(it.row());
            const std::size_t c = static_cast<std::size_t>(it.col());
            if (r % dm == 0 && c % dm == 0) {
                value += psi(static_cast<Eigen::Index>(r / dm)) * it.value() *
                         psi(static_cast<Eigen::Index>(c / dm));
            }
        }
    }
    return value;
}

namespace {

/// Exact minimum eigenvalue of the step-k inequality as a function of the
/// padding constant, exploiting that every operator in the chain is
/// diagonal or a two-entry-per-column rotation.  The matrix splits into
/// scalar sectors plus, at rotation steps, one 2x2 block per depth-k node.
class PaddingOracle {
  public:
    PaddingOracle(const CoinGame &game, const TreeAssignment &z_tree,
                  double epsilon_prime)
        : game_(game), z_(z_tree), eps_(epsilon_prime), n_(game.depth()) {}

    [[nodiscard]] double max_leaf_z() const {
        double m = 0.0;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n_); ++x) {
            m = std::max(m, z_.value(NodeId{n_, x}));
        }
        return m;
    }

    /// Minimum eigenvalue of step k's LHS - RHS when C_k = c, given the
    /// already-fixed next padding (ignored for k = n-1).
    [[nodiscard]] double min_eig(int k, double c, double c_next) const {
        const double step = eps_ / n_;
        double m = std::numeric_limits<double>::infinity();
        if (k % 2 == 0) {
            // Rotation step: one pair of identical 2x2 blocks per node.
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
                const NodeId node{k, x};
                const double g = game_.value(node);
                const double zl = z_.value(node) + lift(k);
                const double w0 = z_.value(node.child(0)) + lift(k + 1);
                const double w1 = z_.value(node.child(1)) + lift(k + 1);
                const double p = zl - g * w0 - (1.0 - g) * w1;
                const double q = c - (1.0 - g) * w0 - g * w1;
                const double s =
                    std::sqrt(std::max(0.0, g * (1.0 - g))) * (w1 - w0);
                m = std::min(m, 0.5 * (p + q) -
                                    std::hypot(0.5 * (p - q), s));
                if (k + 1 == n_) {
                    // Labels whose copy register is populated still see the
                    // leaf values on the RHS.
                    m = std::min(m, c - std::max(w0, w1));
                }
            }
        } else {
            // Swap step: everything stays diagonal.
            m = std::min(m, step);
            double zmax = 0.0;
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << (k + 1));
                 ++y) {
                zmax = std::max(zmax, z_.value(NodeId{k + 1, y}));
            }
            m = std::min(m, c - zmax - lift(k + 1));
        }
        if (k + 1 < n_) {
            m = std::min(m, c - c_next);
        } else {
            // The last chain operator vanishes on outcome-1 labels.
            m = std::min(m, c);
        }
        return m;
    }

  private:
    [[nodiscard]] double lift(int k) const {
        return k < n_ ? (n_ - k) * eps_ / n_ : 0.0;
    }

    const CoinGame &game_;
    const TreeAssignment &z_;
    double eps_;
    int n_;
};

} // namespace

DualCertificate build_dual(const CoinGame &game, double epsilon_prime,
                           int depth_limit) {
    require_valid(game);
    check_size(game, depth_limit);
    if (!(epsilon_prime > 0.0)) {
        throw DomainError("the certificate slack must be positive, got " +
                          std::to_string(epsilon_prime));
    }
    const int n = game.depth();
    const ABTrees ab = eval_ab(game);
    const double hr = eval_h(game).root();
    const TreeAssignment z_tree = eval_z(game, ab.b, hr);

    DualCertificate cert;
    cert.n = n;
    cert.space = VerifySpace{n};
    cert.epsilon_prime = epsilon_prime;
    cert.bound = z_tree.root() + epsilon_prime;

    const PaddingOracle oracle(game, z_tree, epsilon_prime);
    cert.c.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = n - 1; k >= 0; --k) {
        const double c_next =
            k + 1 < n ? cert.c[static_cast<std::size_t>(k + 1)] : 0.0;
        double lo = k == n - 1 ? oracle.max_leaf_z() : 0.0;
        double hi = 1e6;
        if (oracle.min_eig(k, hi, c_next) < 0.0) {
            throw BisectionFailure(
                "no padding constant up to 1e6 closes step " +
                std::to_string(k) + "; try a larger slack");
        }
        if (oracle.min_eig(k, lo, c_next) >= 0.0) {
            cert.c[static_cast<std::size_t>(k)] = lo;
        } else {
            while (hi - lo > 1e-6) {
                const double mid = 0.5 * (lo + hi);
                if (oracle.min_eig(k, mid, c_next) >= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            cert.c[static_cast<std::size_t>(k)] = hi;
        }
    }

    const VerifySpace &space = cert.space;
    const auto da = static_cast<Eigen::Index>(space.alice_dim());
    cert.z.assign(static_cast<std::size_t>(n) + 3, Eigen::VectorXd());
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd diag = Eigen::VectorXd::Constant(
            da, cert.c[static_cast<std::size_t>(k)]);
        const double lift = (n - k) * epsilon_prime / n;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << k); ++y) {
            diag(static_cast<Eigen::Index>(
                space.alice_index(y << (n - k), 0, 0))) =
                z_tree.value(NodeId{k, y}) + lift;
        }
        cert.z[static_cast<std::size_t>(k)] = std::move(diag);
    }
    for (int which = 0; which < 3; ++which) {
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(da);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const NodeId leaf{n, x};
            const double zx = z_tree.value(leaf);
            const int g = game.value(leaf) == 1.0 ? 1 : 0;
            // which 0: all leaves on outcome 0; which 1: each leaf on its
            // own outcome; which 2: winning leaves on outcome 1.
            const int ac = which == 0 ? 0 : g;
            if (which == 2 && g != 1) {
                continue;
            }
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
                diag(static_cast<Eigen::Index>(space.alice_index(x, w, ac))) =
                    zx;
            }
        }
        cert.z[static_cast<std::size_t>(n + which)] = std::move(diag);
    }
    return cert;
}

DualCheckReport measure_dual_constraints(const CoinGame &game,
                                         const DualCertificate &certificate) {
    const int n = game.depth();
    const AliceSideOperators ops = alice_side_operators(game, n);
    const VerifySpace &space = certificate.space;

    DualCheckReport report;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    auto push = [&report](std::string name, double value) {
        report.levels.push_back({std::move(name), value});
        report.min_eigenvalue = std::min(report.min_eigenvalue, value);
    };

    for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd lhs =
            padded_diagonal(space, certificate.z[static_cast<std::size_t>(k)]);
        const Eigen::VectorXd rhs = padded_diagonal(
            space, certificate.z[static_cast<std::size_t>(k + 1)]);
        const bool rotation = k % 2 == 0;
        const SparseOp &op =
            rotation ? ops.rotations[static_cast<std::size_t>(k)]
                     : ops.swaps[static_cast<std::size_t>(k)];
        push("round " + std::to_string(k + 1) +
                 (rotation ? " rotation" : " swap"),
             sandwich_min_eig(lhs, op, rhs));
    }
    push("outcome marking",
         sandwich_min_eig(certificate.z[static_cast<std::size_t>(n)],
                          ops.mark_alice,
                          certificate.z[static_cast<std::size_t>(n + 1)]));
    push("outcome-0 shipment",
         sandwich_min_eig(
             padded_diagonal(space,
                             certificate.z[static_cast<std::size_t>(n + 1)]),
             ops.ship_zero,
             padded_diagonal(space,
                             certificate.z[static_cast<std::size_t>(n + 2)])));

    const TreeAssignment p = eval_p(game);
    const double hr = eval_h(game).root();
    const Eigen::VectorXd &zn2 =
        certificate.z[static_cast<std::size_t>(n + 2)];
    for (const double eps : {1e-4, 1e-6, 1e-8}) {
        double sum = 0.0;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const NodeId leaf{n, x};
            if (game.value(leaf) == 1.0) {
                const double zx = zn2(static_cast<Eigen::Index>(
                    space.alice_index(x, x, 1)));
                sum += p.value(leaf) / (hr * (zx + eps));
            }
        }
        report.rank_one.emplace_back(eps, sum);
    }
    return report;
}

DualCheckReport check_dual_constraints(const CoinGame &game,
                                       const DualCertificate &certificate,
                                       double tol) {
    DualCheckReport report = measure_dual_constraints(game, certificate);
    for (const ConstraintResidual &level : report.levels) {
        if (!(level.value >= -tol)) {
            throw ConstraintViolation(
                "certificate step '" + level.name +
                "' has minimum eigenvalue " + std::to_string(level.value) +
                " (tolerance " + std::to_string(tol) + ")");
        }
    }
    for (const auto &[eps, value] : report.rank_one) {
        if (!(value <= 1.0 + tol)) {
            throw ConstraintViolation(
                "certificate final step: rank-one reduction at eps = " +
                std::to_string(eps) + " evaluates to " +
                std::to_string(value) + " > 1");
        }
    }
    return report;
}

double cheating_alice_bound(const CoinGame &game) {
    return protocol_point(game).pa_star;
}

} // namespace weakcoin
