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
 * @file protocol.hpp
 * Sparse state-vector simulation of the message protocol built from a game.
 *
 * The two parties hold 5n+3 qubits split into eight named registers:
 *
 *   a (n), a' (n), ac (1)  — first party: transcript, received copy, outcome
 *   b (n), b' (n), bc (1)  — second party: the mirror image
 *   m (1), mn (n)          — the single- and n-qubit message registers
 *
 * Basis labels pack the registers most-significant-first in the order
 * (a, a', ac, b, b', bc, m, mn).  States are sparse maps from labels to
 * amplitudes; honest evolution never populates more than 2^n basis terms.
 *
 * One protocol run plays n coin rounds (a controlled rotation on the
 * mover's transcript qubit and the message qubit, then a swap into the
 * receiver's transcript), marks each party's outcome qubit from its
 * transcript, and ships the winner's transcript through mn so the loser
 * can project onto the expected verification state.  Honestly played, the
 * final state splits into a weight-H_r branch where the second party wins
 * and a weight-(1-H_r) branch where the first party wins, and the two
 * parties' measurements agree with certainty.
 */
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "weakcoin/errors.hpp"
#include "weakcoin/game.hpp"

namespace weakcoin {

/// Basis label over up to 5*24+3 qubits; 128 bits so deep games stay
/// addressable.
using Label = unsigned __int128;

/// Field layout of basis labels for an n-round protocol.
struct RegisterLayout {
    int n = 1;

    enum class Reg { a, a_prime, ac, b, b_prime, bc, m, mn };

    [[nodiscard]] int total_qubits() const noexcept { return 5 * n + 3; }

    [[nodiscard]] int width(Reg r) const noexcept {
        switch (r) {
        case Reg::ac:
        case Reg::bc:
        case Reg::m:
            return 1;
        default:
            return n;
        }
    }

    /// Bit position of the field's least-significant bit within a label.
    [[nodiscard]] int shift(Reg r) const noexcept {
        switch (r) {
        case Reg::mn:
            return 0;
        case Reg::m:
            return n;
        case Reg::bc:
            return n + 1;
        case Reg::b_prime:
            return n + 2;
        case Reg::b:
            return 2 * n + 2;
        case Reg::ac:
            return 3 * n + 2;
        case Reg::a_prime:
            return 3 * n + 3;
        case Reg::a:
            return 4 * n + 3;
        }
        return 0;
    }

    [[nodiscard]] std::uint64_t field(Label label, Reg r) const noexcept {
        const Label mask = (Label{1} << width(r)) - 1;
        return static_cast<std::uint64_t>((label >> shift(r)) & mask);
    }

    [[nodiscard]] Label with_field(Label label, Reg r,
                                   std::uint64_t value) const noexcept {
        const Label mask = (Label{1} << width(r)) - 1;
        return (label & ~(mask << shift(r))) |
               ((static_cast<Label>(value) & mask) << shift(r));
    }

    /// Full-width bit string of a label, most-significant register first.
    [[nodiscard]] std::string bits(Label label) const;
};

using Amplitude = std::complex<double>;

/// Sparse state: only nonzero amplitudes are stored.  The ordered map
/// keeps dumps and comparisons deterministic.
struct QuantumState {
    RegisterLayout layout;
    std::map<Label, Amplitude> amps;

    [[nodiscard]] double norm_squared() const;
};

/// All-zeros computational basis state for an n-round protocol.
QuantumState initial_state(int n);

/// The 4x4 real orthogonal coin rotation acting on a transcript qubit and
/// the message qubit (basis order |00>, |01>, |10>, |11>):
///
///   [  sqrt(z)      0           0        -sqrt(1-z) ]
///   [  0            sqrt(z)    -sqrt(1-z)    0      ]
///   [  0            sqrt(1-z)   sqrt(z)      0      ]
///   [  sqrt(1-z)    0           0         sqrt(z)   ]
///
/// It sends |00> to sqrt(z)|00> + sqrt(1-z)|11>, creating the entangled
/// coin; at z = 1 it is the identity.
/// @throws DomainError for z outside [0,1].
std::array<std::array<double, 4>, 4> u_matrix(double z);

/// One protocol step.
struct Step {
    enum class Kind {
        rotate,       ///< coin rotation on (transcript qubit k, m)
        swap_in,      ///< swap the message qubit into transcript qubit k
        mark_outcome, ///< set the outcome qubit from the transcript
        ship_zero,    ///< outcome-0 branch: winner's transcript into mn /
                      ///< receiver's copy out of mn
        ship_one,     ///< outcome-1 branch: same for the other winner
    };
    enum class Side { first, second };

    Kind kind;
    Side side;
    int k = 0; ///< round index, 1-based; used by rotate and swap_in only
};

/// The canonical step order of one protocol run: for each round k the
/// mover's rotation then the receiver's swap (the first party moves on odd
/// k), both outcome markings, then the four conditional shipments.
std::vector<Step> protocol_steps(int n);

/// Applies a single step as a sparse action on basis labels.  Rotations
/// expand each term into at most two; all other steps permute labels (up
/// to a sign).  No ordering is enforced here.
/// @throws StepError for malformed steps (round out of range, wrong side
///         for the round).
QuantumState apply_step(const CoinGame &game, const QuantumState &state,
                        const Step &step);

/// Strict-order protocol executor: steps must be applied exactly in
/// protocol_steps() order.
class ProtocolRunner {
  public:
    /// @throws SizeError when the game depth exceeds @p depth_limit.
    explicit ProtocolRunner(const CoinGame &game, int depth_limit = 16);

    [[nodiscard]] const QuantumState &state() const noexcept {
        return state_;
    }
    [[nodiscard]] std::size_t steps_applied() const noexcept {
        return next_;
    }
    [[nodiscard]] bool finished() const noexcept {
        return next_ == steps_.size();
    }

    /// Applies @p step, which must be the next canonical step.
    /// @throws StepOrderError otherwise; StepError if malformed.
    void apply(const Step &step);

    /// Applies the next canonical step. @throws StepOrderError when the
    /// run is already complete.
    void apply_next();

  private:
    CoinGame game_;
    std::vector<Step> steps_;
    QuantumState state_;
    std::size_t next_ = 0;
};

/// The two verification states the losers project onto: over the first
/// party's registers, amplitudes sqrt(P_x / H_r) on (a = x, a' = x, ac = 1)
/// for winning leaves x; over the second party's registers, amplitudes
/// sqrt(P_x / (1 - H_r)) on (b = x, b' = x, bc = 0) for losing leaves.
/// Labels are full-width with all other registers zero.
struct TargetStates {
    RegisterLayout layout;
    std::map<Label, double> psi_a1;
    std::map<Label, double> psi_b0;
};

/// @throws DegenerateGame unless 0 < H_r < 1.
TargetStates target_states(const CoinGame &game);

/// Result of one honest protocol run.
struct HonestOutcome {
    double p_alice_wins; ///< probability the first party's outcome is 0
    double p_bob_wins;   ///< probability the second party's outcome is 1
    bool agreement;      ///< true iff the outcomes never disagree
    QuantumState final_state;
};

/// Runs the whole protocol honestly.  When @p on_round is set it is invoked
/// after each completed coin round with (k, state), enabling round-by-round
/// checks against the reach probabilities.
/// @throws SizeError when the game depth exceeds @p depth_limit;
///         DegenerateGame for degenerate games.
HonestOutcome honest_run(
    const CoinGame &game, int depth_limit = 16,
    const std::function<void(int, const QuantumState &)> &on_round = nullptr);

/// Monte-Carlo estimate of the second party's honest win probability.
struct ClassicalEstimate {
    double estimate;  ///< fraction of sampled plays the second party won
    double std_error; ///< binomial standard error of the estimate
    std::uint64_t samples;
};

/// Plays the classical public-coin game by sampling every announced coin.
/// Deterministic for a fixed seed.
/// @throws DomainError for samples = 0.
ClassicalEstimate classical_play(const CoinGame &game, std::uint64_t samples,
                                 std::uint64_t seed);

} // namespace weakcoin
