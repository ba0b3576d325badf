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
 * @file asymptotics.hpp
 * Long-game limit of the protocol family with a slowly varying message
 * schedule.
 *
 * A two-variable recursion tracks upper and lower envelopes (H, L) of the
 * cheat probabilities backwards from the end of the game; in the limit of
 * many messages the recursion is governed by a single ODE whose fixed point
 * gives the limiting common cheat probability 2*L0^2 ~ 0.6922, i.e. a bias
 * just over 0.19.  Three independent routes to that constant live here: the
 * discrete recursion, the ODE integration, and the closed form.
 */
#pragma once

#include <utility>
#include <vector>

#include "weakcoin/errors.hpp"

namespace weakcoin {

/// Backward envelope trajectories for a concrete message schedule.
struct HLSequence {
    /// Number of messages (length of the schedule).
    int n = 0;
    /// Schedule entries a_1..a_n, each in [0, 1).
    std::vector<double> schedule;
    /// H_0..H_n with H_n = 1; H is nonincreasing as the index decreases.
    std::vector<double> h;
    /// L_0..L_n with L_n = 0; L is nondecreasing as the index decreases.
    std::vector<double> l;

    /// The quantity that converges to half the limiting cheat probability.
    [[nodiscard]] double h0_squared() const { return h[0] * h[0]; }
};

/// Runs the backward envelope recursion for the given schedule a_1..a_n:
/// starting from H_n = 1, L_n = 0, even steps update
/// H_k = sqrt(a_{k+1} L^2 + (1 - a_{k+1}) H^2) and odd steps update
/// L_k = a_{k+1} H + (1 - a_{k+1}) L, carrying the other envelope forward.
///
/// @throws ScheduleError if any entry lies outside [0, 1).
HLSequence discrete_hl(const std::vector<double> &schedule);

/// The default slowly-varying schedule a_k = c / (k + c0), k = 1..n.
std::vector<double> default_schedule(int n, double c = 2.0, double c0 = 20.0);

/// Numeric integration of the envelope ODE dH/dL = -(H + L) / (2H).
struct OdeTrajectory {
    /// Requested base step in L (the effective step shrinks near the end).
    double step = 0.0;
    /// Sampled (L, H) points from (0, 1) to the stopping point.
    std::vector<std::pair<double, double>> samples;
    /// The extrapolated crossing point H = L.
    double l0 = 0.0;

    /// The limiting common cheat probability 2*L0^2.
    [[nodiscard]] double limiting_value() const { return 2.0 * l0 * l0; }
};

/// Integrates dH/dL = -(H + L) / (2H) from (L, H) = (0, 1) with a classical
/// 4th-order Runge-Kutta scheme until H - L < 1e-10, capping each step at a
/// quarter of the remaining gap, then refines the crossing point by one
/// Newton step on H(L) - L.
///
/// @throws StepError if step is not positive.
OdeTrajectory ode_convergence(double step = 1e-4);

/// The conserved quantity of the envelope ODE,
/// log(H^2 + LH/2 + L^2/2) + (2/sqrt(7)) atan(sqrt(7) L / (4H + L)),
/// which is exactly 0 along the trajectory started at (0, 1).
double ode_invariant(double l, double h);

/// The limiting cheat probability in closed form,
/// exp(-(2/sqrt(7)) atan(sqrt(7)/5)) = 0.692181687...
double closed_form_constant();

} // namespace weakcoin
