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
 * @file verify.hpp
 * Two-sided certification of the second party's cheating bound B_r^2/H_r.
 *
 * Only the first party's registers are tracked: a cheating second party can
 * do anything to the message registers between the first party's moves, so
 * the reachable states are exactly those satisfying a short list of linear
 * constraints on the reduced density operators (one per protocol step).
 * Everything here lives on the first party's space (a, a', ac) joined with
 * the message space (m, mn).
 *
 * Primal side: an explicit sequence of density operators built from the W
 * weight tree satisfies all constraints and projects onto the verification
 * state with probability exactly B_r^2/H_r, so no smaller bound is
 * possible.
 *
 * Dual side: a chain of diagonal operators Z_0..Z_{n+2} built from the Z
 * tree satisfies one operator inequality per step; any constraint-
 * satisfying sequence of states therefore wins with probability at most
 * the chain's starting entry Z_r + eps', i.e. B_r^2/H_r + eps'.  The
 * off-tree diagonal padding constants C_k are found by bisection against
 * an exact blockwise minimum-eigenvalue oracle; the reported checks use
 * dense eigensolves.
 *
 * The first party's own cheating bound A_r/(1-H_r) follows by exchanging
 * the parties' roles and re-running the same machinery.
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "weakcoin/errors.hpp"
#include "weakcoin/game.hpp"

namespace weakcoin {

/// Basis bookkeeping for the first party's registers (a, a', ac) joined
/// with the message registers (m, mn), packed most-significant-first in
/// that order.
struct VerifySpace {
    int n = 1;

    [[nodiscard]] std::size_t alice_dim() const noexcept {
        return std::size_t{1} << (2 * n + 1);
    }
    [[nodiscard]] std::size_t message_dim() const noexcept {
        return std::size_t{1} << (n + 1);
    }
    [[nodiscard]] std::size_t full_dim() const noexcept {
        return alice_dim() * message_dim();
    }

    [[nodiscard]] std::size_t alice_index(std::uint64_t a,
                                          std::uint64_t a_prime,
                                          int ac) const noexcept {
        return ((a << n | a_prime) << 1) | static_cast<unsigned>(ac & 1);
    }
    [[nodiscard]] std::size_t message_index(int m,
                                            std::uint64_t mn) const noexcept {
        return (static_cast<std::size_t>(m & 1) << n) | mn;
    }
    [[nodiscard]] std::size_t full_index(std::size_t ia,
                                         std::size_t im) const noexcept {
        return ia * message_dim() + im;
    }
};

using SparseOp = Eigen::SparseMatrix<double>;

/// The first party's protocol unitaries as sparse matrices.  The round
/// operators and shipments act on the joined space; the outcome marking
/// acts on the party's registers alone and is also provided padded with
/// the message identity.  Every matrix is real orthogonal.
struct AliceSideOperators {
    int n = 1;
    VerifySpace space;
    std::vector<SparseOp> rotations; ///< round k coin rotation, index k-1
    std::vector<SparseOp> swaps;     ///< round k message swap, index k-1
    SparseOp mark_alice;             ///< outcome marking on (a, a', ac)
    SparseOp mark;                   ///< the same padded to the full space
    SparseOp ship_zero;              ///< outcome-0 shipment (swap a <-> mn)
    SparseOp ship_one;               ///< outcome-1 shipment (swap a' <-> mn)
};

/// Builds all of the first party's unitaries for @p game.
/// @throws SizeError when the depth exceeds @p depth_limit (the joined
///         space has dimension 2^(3n+2)); DomainError for invalid games.
AliceSideOperators alice_side_operators(const CoinGame &game,
                                        int depth_limit = 3);

/// The verification state the first party projects onto: amplitudes
/// sqrt(P_x/H_r) at (a = x, a' = x, ac = 1) for winning leaves x, as a
/// dense vector on the party's space.
/// @throws DegenerateGame unless 0 < H_r < 1.
Eigen::VectorXd alice_target_vector(const CoinGame &game);

/// The explicit optimal strategy for a cheating second party, written as
/// the first party's density-operator sequence.
///
/// The diagonal weights follow the W tree, with one repair: wherever the
/// W recursion zeroes an entire subtree (a parent with B = 0), the weights
/// instead keep splitting by the raw coin.  The zeroed variant loses the
/// trapped probability mass and would violate the even-step marginal
/// constraint; the repaired flow is constraint-exact and never touches the
/// final projection, because such subtrees contribute nothing to it.
struct PrimalStrategy {
    int n = 1;
    VerifySpace space;
    /// Strategy weights per level: sigma[k] has 2^k entries (depth-k nodes).
    std::vector<Eigen::VectorXd> sigma;
    /// States after each round: even k on the joined space, odd k on the
    /// party's space alone (the single-qubit message is in transit).
    std::vector<SparseOp> rho;
    SparseOp rho_e; ///< state after outcome marking (joined space)
    SparseOp rho_f; ///< state after both shipments (joined space)
    /// Total weight on losing leaves; the final state parks it on the
    /// all-zeros label after the outcome-0 shipment.
    double loser_weight = 0.0;
};

/// @throws SizeError beyond @p depth_limit; DegenerateGame; DomainError.
PrimalStrategy build_primal(const CoinGame &game, int depth_limit = 3);

/// One named residual or eigenvalue from a constraint check.
struct ConstraintResidual {
    std::string name;
    double value = 0.0;
};

struct PrimalCheckReport {
    /// Max entrywise deviation per constraint, in protocol order.
    std::vector<ConstraintResidual> residuals;
    double max_residual = 0.0;
};

/// Computes every constraint residual without judging it.
PrimalCheckReport measure_primal_constraints(const CoinGame &game,
                                             const PrimalStrategy &strategy);

/// Verifies the full constraint list: the initial state, each round's
/// rotation/swap relation, the outcome-marking relation (whose trace
/// pattern depends on the parity of n), and the shipment relation between
/// the last two states.
/// @throws ConstraintViolation naming the first constraint whose residual
///         exceeds @p tol.
PrimalCheckReport check_primal_constraints(const CoinGame &game,
                                           const PrimalStrategy &strategy,
                                           double tol = 1e-10);

/// The probability the cheating second party wins under @p strategy: the
/// quadratic form of the final state on the verification vector.  Equals
/// B_r^2/H_r for a correctly built strategy.
double primal_value(const CoinGame &game, const PrimalStrategy &strategy);

/// The diagonal certificate chain upper-bounding the second party's
/// cheating probability by Z_r + eps'.
struct DualCertificate {
    int n = 1;
    VerifySpace space;
    double epsilon_prime = 1e-4;
    /// Diagonals of Z_0..Z_{n+2} on the party's space.  Z_k for k < n
    /// holds tree entries Z_y + (n-k)eps'/n on labels (y||0..0, 0, 0) and
    /// the padding constant C_k elsewhere; Z_n..Z_{n+2} are assembled from
    /// the leaf Z values (a' unconstrained, outcome qubit selecting).
    std::vector<Eigen::VectorXd> z;
    std::vector<double> c; ///< padding constants C_0..C_{n-1}
    double bound = 0.0;    ///< Z_r + eps'
};

/// Builds the certificate.  Each C_k (k = n-1 down to 0) is the smallest
/// padding that keeps the step-k operator inequality positive
/// semidefinite, located by bisection (resolution 1e-6) against an exact
/// blockwise eigenvalue oracle; C_{n-1}'s search starts at the maximum
/// leaf Z value.
/// @throws BisectionFailure when no C_k up to 1e6 suffices; SizeError;
///         DegenerateGame.
DualCertificate build_dual(const CoinGame &game, double epsilon_prime = 1e-4,
                           int depth_limit = 3);

struct DualCheckReport {
    /// Minimum eigenvalue of LHS - RHS per chain step, in order: the n
    /// round inequalities, the outcome-marking step, and the shipment
    /// step.
    std::vector<ConstraintResidual> levels;
    /// The final step is rank-one reduced: pairs (eps, value) of
    /// <target|(Z_{n+2} + eps I)^{-1}|target>, each of which must be <= 1.
    std::vector<std::pair<double, double>> rank_one;
    double min_eigenvalue = 0.0; ///< min over levels
};

/// Computes every check without judging it (dense eigensolves).
DualCheckReport measure_dual_constraints(const CoinGame &game,
                                         const DualCertificate &certificate);

/// Verifies every operator inequality of the chain: min eigenvalue
/// >= -tol for each step, and the rank-one reduction <= 1 + tol on the
/// grid eps in {1e-4, 1e-6, 1e-8}.
/// @throws ConstraintViolation naming the failing step.
DualCheckReport check_dual_constraints(const CoinGame &game,
                                       const DualCertificate &certificate,
                                       double tol = 1e-8);

/// The first party's cheating bound A_r/(1-H_r).  Equals the second
/// party's bound of the role-reversed game, which is how tests
/// cross-check it.
/// @throws DegenerateGame.
double cheating_alice_bound(const CoinGame &game);

} // namespace weakcoin
