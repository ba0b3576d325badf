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

#include "weakcoin/protocol.hpp"

#include <cmath>
#include <random>
#include <utility>

namespace weakcoin {

namespace {

using Reg = RegisterLayout::Reg;

double uniform_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Swaps the contents of two equal-width register fields of a label.
Label swap_fields(const RegisterLayout &layout, Label label, Reg r1,
                  Reg r2) {
    const std::uint64_t v1 = layout.field(label, r1);
    const std::uint64_t v2 = layout.field(label, r2);
    return layout.with_field(layout.with_field(label, r1, v2), r2, v1);
}

/// Bit of an n-bit register field at 1-based position k, counting from the
/// most significant side (matching transcript order: round k writes the
/// k-th bit from the left).
int field_bit(const RegisterLayout &layout, Label label, Reg r, int k) {
    return static_cast<int>(
        (layout.field(label, r) >> (layout.n - k)) & 1ULL);
}

Label set_field_bit(const RegisterLayout &layout, Label label, Reg r, int k,
                    int bit) {
    std::uint64_t v = layout.field(label, r);
    const std::uint64_t mask = 1ULL << (layout.n - k);
    v = bit != 0 ? (v | mask) : (v & ~mask);
    return layout.with_field(label, r, v);
}

void validate_step(const Step &step, int n) {
    switch (step.kind) {
    case Step::Kind::rotate: {
        if (step.k < 1 || step.k > n) {
            throw StepError("rotation round " + std::to_string(step.k) +
                            " outside 1.." + std::to_string(n));
        }
        const bool first_moves = (step.k % 2 == 1);
        if ((step.side == Step::Side::first) != first_moves) {
            throw StepError("round " + std::to_string(step.k) +
                            " is rotated by the " +
                            (first_moves ? "first" : "second") + " party");
        }
        return;
    }
    case Step::Kind::swap_in: {
        if (step.k < 1 || step.k > n) {
            throw StepError("swap round " + std::to_string(step.k) +
                            " outside 1.." + std::to_string(n));
        }
        const bool first_receives = (step.k % 2 == 0);
        if ((step.side == Step::Side::first) != first_receives) {
            throw StepError("round " + std::to_string(step.k) +
                            " is received by the " +
                            (first_receives ? "first" : "second") +
                            " party");
        }
        return;
    }
    case Step::Kind::mark_outcome:
    case Step::Kind::ship_zero:
    case Step::Kind::ship_one:
        return;
    }
    throw StepError("unknown step kind");
}

void accumulate(std::map<Label, Amplitude> &out, Label label,
                Amplitude amp) {
    if (amp == Amplitude{}) {
        return;
    }
    auto [it, inserted] = out.try_emplace(label, amp);
    if (!inserted) {
        it->second += amp;
        if (it->second == Amplitude{}) {
            out.erase(it);
        }
    }
}

/// Projects onto |target><target| (x) identity, where the target is a
/// sparse real unit vector supported on the registers selected by
/// @p support_mask (its labels are zero elsewhere).
QuantumState project_onto(const QuantumState &state,
                          const std::map<Label, double> &target,
                          Label support_mask) {
    // Inner products, grouped by the untouched register content.
    std::map<Label, Amplitude> inner;
    for (const auto &[label, amp] : state.amps) {
        const Label part = label & support_mask;
        const Label rest = label & ~support_mask;
        const auto it = target.find(part);
        if (it != target.end()) {
            accumulate(inner, rest, it->second * amp);
        }
    }
    QuantumState out{state.layout, {}};
    for (const auto &[rest, coeff] : inner) {
        for (const auto &[part, value] : target) {
            accumulate(out.amps, part | rest, coeff * value);
        }
    }
    return out;
}

QuantumState subtract(const QuantumState &lhs, const QuantumState &rhs) {
    QuantumState out = lhs;
    for (const auto &[label, amp] : rhs.amps) {
        accumulate(out.amps, label, -amp);
    }
    return out;
}

Label register_mask(const RegisterLayout &layout,
                    std::initializer_list<Reg> regs) {
    Label mask = 0;
    for (Reg r : regs) {
        const Label field = (Label{1} << layout.width(r)) - 1;
        mask |= field << layout.shift(r);
    }
    return mask;
}

} // namespace

std::string RegisterLayout::bits(Label label) const {
    const int q = total_qubits();
    std::string s(static_cast<std::size_t>(q), '0');
    for (int i = 0; i < q; ++i) {
        if ((label >> (q - 1 - i)) & 1U) {
            s[static_cast<std::size_t>(i)] = '1';
        }
    }
    return s;
}

double QuantumState::norm_squared() const {
    double sum = 0.0;
    for (const auto &[label, amp] : amps) {
        sum += std::norm(amp);
    }
    return sum;
}

QuantumState initial_state(int n) {
    QuantumState state{RegisterLayout{n}, {}};
    state.amps[Label{0}] = 1.0;
    return state;
}

std::array<std::array<double, 4>, 4> u_matrix(double z) {
    if (!(z >= 0.0 && z <= 1.0)) {
        throw DomainError("coin bias must lie in [0,1], got " +
                          std::to_string(z));
    }
    const double c = std::sqrt(z);
    const double s = std::sqrt(1.0 - z);
    return {{{c, 0.0, 0.0, -s},
             {0.0, c, -s, 0.0},
             {0.0, s, c, 0.0},
             {s, 0.0, 0.0, c}}};
}

std::vector<Step> protocol_steps(int n) {
    std::vector<Step> steps;
    steps.reserve(static_cast<std::size_t>(2 * n) + 6);
    for (int k = 1; k <= n; ++k) {
        const bool first_moves = (k % 2 == 1);
        steps.push_back({Step::Kind::rotate,
                         first_moves ? Step::Side::first
                                     : Step::Side::second,
                         k});
        steps.push_back({Step::Kind::swap_in,
                         first_moves ? Step::Side::second
                                     : Step::Side::first,
                         k});
    }
    steps.push_back({Step::Kind::mark_outcome, Step::Side::first, 0});
    steps.push_back({Step::Kind::mark_outcome, Step::Side::second, 0});
    // Outcome-0 branch: the first party ships its transcript, the second
    // receives it into its copy register; the outcome-1 branch mirrors it.
    steps.push_back({Step::Kind::ship_zero, Step::Side::first, 0});
    steps.push_back({Step::Kind::ship_zero, Step::Side::second, 0});
    steps.push_back({Step::Kind::ship_one, Step::Side::second, 0});
    steps.push_back({Step::Kind::ship_one, Step::Side::first, 0});
    return steps;
}

QuantumState apply_step(const CoinGame &game, const QuantumState &state,
                        const Step &step) {
    const RegisterLayout &layout = state.layout;
    const int n = layout.n;
    if (game.depth() != n) {
        throw StepError("game depth " + std::to_string(game.depth()) +
                        " does not match the state's layout (n = " +
                        std::to_string(n) + ")");
    }
    validate_step(step, n);
    const bool first = (step.side == Step::Side::first);
    QuantumState out{layout, {}};

    switch (step.kind) {
    case Step::Kind::rotate: {
        const Reg transcript = first ? Reg::a : Reg::b;
        const int k = step.k;
        for (const auto &[label, amp] : state.amps) {
            // Control string: the k-1 transcript bits already played.
            const std::uint64_t x =
                layout.field(label, transcript) >> (n - (k - 1));
            const double g = game.value(NodeId{k - 1, x});
            const auto u = u_matrix(g);
            const int in = 2 * field_bit(layout, label, transcript, k) +
                           static_cast<int>(layout.field(label, Reg::m));
            for (int outRow = 0; outRow < 4; ++outRow) {
                const double entry =
                    u[static_cast<std::size_t>(outRow)]
                     [static_cast<std::size_t>(in)];
                if (entry == 0.0) {
                    continue;
                }
                Label next = set_field_bit(layout, label, transcript, k,
                                           outRow >> 1);
                next = layout.with_field(
                    next, Reg::m, static_cast<std::uint64_t>(outRow & 1));
                accumulate(out.amps, next, entry * amp);
            }
        }
        return out;
    }
    case Step::Kind::swap_in: {
        const Reg transcript = first ? Reg::a : Reg::b;
        const int k = step.k;
        for (const auto &[label, amp] : state.amps) {
            const int tbit = field_bit(layout, label, transcript, k);
            const int mbit = static_cast<int>(layout.field(label, Reg::m));
            Label next = set_field_bit(layout, label, transcript, k, mbit);
            next = layout.with_field(next, Reg::m,
                                     static_cast<std::uint64_t>(tbit));
            accumulate(out.amps, next, amp);
        }
        return out;
    }
    case Step::Kind::mark_outcome: {
        const Reg transcript = first ? Reg::a : Reg::b;
        const Reg outcome = first ? Reg::ac : Reg::bc;
        for (const auto &[label, amp] : state.amps) {
            const std::uint64_t x = layout.field(label, transcript);
            const double g = game.value(NodeId{n, x});
            // 2x2 action on the outcome qubit: [[1-g, -g], [g, 1-g]].
            // For binary leaves this flips the qubit (with a sign on the
            // 1 -> 0 path) when g = 1 and does nothing when g = 0.
            const int c = static_cast<int>(layout.field(label, outcome));
            const double to0 = c == 0 ? 1.0 - g : -g;
            const double to1 = c == 0 ? g : 1.0 - g;
            if (to0 != 0.0) {
                accumulate(out.amps,
                           layout.with_field(label, outcome, 0), to0 * amp);
            }
            if (to1 != 0.0) {
                accumulate(out.amps,
                           layout.with_field(label, outcome, 1), to1 * amp);
            }
        }
        return out;
    }
    case Step::Kind::ship_zero: {
        const Reg outcome = first ? Reg::ac : Reg::bc;
        const Reg moved = first ? Reg::a : Reg::b_prime;
        for (const auto &[label, amp] : state.amps) {
            const Label next =
                layout.field(label, outcome) == 0
                    ? swap_fields(layout, label, moved, Reg::mn)
                    : label;
            accumulate(out.amps, next, amp);
        }
        return out;
    }
    case Step::Kind::ship_one: {
        const Reg outcome = first ? Reg::ac : Reg::bc;
        const Reg moved = first ? Reg::a_prime : Reg::b;
        for (const auto &[label, amp] : state.amps) {
            const Label next =
                layout.field(label, outcome) == 1
                    ? swap_fields(layout, label, moved, Reg::mn)
                    : label;
            accumulate(out.amps, next, amp);
        }
        return out;
    }
    }
    throw StepError("unknown step kind");
}

ProtocolRunner::ProtocolRunner(const CoinGame &game, int depth_limit)
    : game_(game), steps_(protocol_steps(game.depth())),
      state_(initial_state(game.depth())) {
    if (game.depth() > depth_limit) {
        throw SizeError("game depth " + std::to_string(game.depth()) +
                        " exceeds the simulation limit of " +
                        std::to_string(depth_limit));
    }
    require_valid(game);
}

void ProtocolRunner::apply(const Step &step) {
    if (next_ >= steps_.size()) {
        throw StepOrderError("the protocol run is already complete");
    }
    const Step &expected = steps_[next_];
    if (step.kind != expected.kind || step.side != expected.side ||
        step.k != expected.k) {
        throw StepOrderError("step " + std::to_string(next_) +
                             " applied out of protocol order");
    }
    state_ = apply_step(game_, state_, step);
    ++next_;
}

void ProtocolRunner::apply_next() {
    if (next_ >= steps_.size()) {
        throw StepOrderError("the protocol run is already complete");
    }
    apply(steps_[next_]);
}

TargetStates target_states(const CoinGame &game) {
    const TreeAssignment h = eval_h(game);
    const double hr = h.root();
    if (hr <= 0.0 || hr >= 1.0) {
        throw DegenerateGame(
            "verification states require 0 < H_r < 1, got H_r = " +
            std::to_string(hr));
    }
    const TreeAssignment p = eval_p(game);
    const int n = game.depth();
    TargetStates targets{RegisterLayout{n}, {}, {}};
    const RegisterLayout &layout = targets.layout;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const NodeId leaf{n, x};
        const double g = game.value(leaf);
        const double px = p.value(leaf);
        if (g == 1.0) {
            Label label = layout.with_field(0, Reg::a, x);
            label = layout.with_field(label, Reg::a_prime, x);
            label = layout.with_field(label, Reg::ac, 1);
            targets.psi_a1[label] = std::sqrt(px / hr);
        } else {
            Label label = layout.with_field(0, Reg::b, x);
            label = layout.with_field(label, Reg::b_prime, x);
            targets.psi_b0[label] = std::sqrt(px / (1.0 - hr));
        }
    }
    return targets;
}

HonestOutcome honest_run(
    const CoinGame &game, int depth_limit,
    const std::function<void(int, const QuantumState &)> &on_round) {
    const TargetStates targets = target_states(game);
    ProtocolRunner runner(game, depth_limit);
    const int n = game.depth();
    for (int k = 1; k <= n; ++k) {
        runner.apply_next(); // rotation
        runner.apply_next(); // swap into the receiver's transcript
        if (on_round) {
            on_round(k, runner.state());
        }
    }
    while (!runner.finished()) {
        runner.apply_next();
    }
    const QuantumState &final_state = runner.state();
    const RegisterLayout &layout = final_state.layout;

    const Label mask_a =
        register_mask(layout, {Reg::a, Reg::a_prime, Reg::ac});
    const Label mask_b =
        register_mask(layout, {Reg::b, Reg::b_prime, Reg::bc});

    // The two parties measure projectors on disjoint registers, so joint
    // outcome probabilities factor through sequential projections.
    const QuantumState proj_a =
        project_onto(final_state, targets.psi_a1, mask_a);
    const QuantumState proj_b =
        project_onto(final_state, targets.psi_b0, mask_b);
    const QuantumState rest_a = subtract(final_state, proj_a);
    const QuantumState rest_b = subtract(final_state, proj_b);

    HonestOutcome outcome{};
    outcome.p_bob_wins = proj_a.norm_squared();
    outcome.p_alice_wins = proj_b.norm_squared();
    // Disagreement: the first party sees the outcome-1 state while the
    // second sees outcome 0, or neither sees their expected state.
    const double p_disagree =
        project_onto(proj_a, targets.psi_b0, mask_b).norm_squared() +
        subtract(rest_a, project_onto(rest_a, targets.psi_b0, mask_b))
            .norm_squared();
    outcome.agreement = p_disagree < 1e-10;
    outcome.final_state = final_state;
    return outcome;
}

ClassicalEstimate classical_play(const CoinGame &game, std::uint64_t samples,
                                 std::uint64_t seed) {
    require_valid(game);
    if (samples == 0) {
        throw DomainError("at least one sample is required");
    }
    std::mt19937_64 rng(seed);
    const int n = game.depth();
    std::uint64_t wins = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        NodeId node = NodeId::root();
        for (int d = 0; d < n; ++d) {
            const double g = game.value(node);
            node = node.child(uniform_unit(rng) < g ? 0 : 1);
        }
        if (game.value(node) == 1.0) {
            ++wins;
        }
    }
    ClassicalEstimate est{};
    est.samples = samples;
    est.estimate =
        static_cast<double>(wins) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) /
                              static_cast<double>(samples));
    return est;
}

} // namespace weakcoin
