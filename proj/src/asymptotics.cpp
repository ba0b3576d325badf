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

#include "weakcoin/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace weakcoin {

namespace {

double slope(double l, double h) { return -(h + l) / (2.0 * h); }

} // namespace

HLSequence discrete_hl(const std::vector<double> &schedule) {
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const double a = schedule[i];
        if (!(a >= 0.0) || !(a < 1.0)) {
            throw ScheduleError("schedule entry " + std::to_string(i + 1) +
                                " = " + std::to_string(a) +
                                " lies outside [0, 1)");
        }
    }
    HLSequence seq;
    seq.n = static_cast<int>(schedule.size());
    seq.schedule = schedule;
    seq.h.assign(schedule.size() + 1, 1.0);
    seq.l.assign(schedule.size() + 1, 0.0);
    for (int k = seq.n - 1; k >= 0; --k) {
        const double a = schedule[static_cast<std::size_t>(k)];
        const double h = seq.h[static_cast<std::size_t>(k + 1)];
        const double l = seq.l[static_cast<std::size_t>(k + 1)];
        if (k % 2 == 0) {
            seq.h[static_cast<std::size_t>(k)] =
                std::sqrt(a * l * l + (1.0 - a) * h * h);
            seq.l[static_cast<std::size_t>(k)] = l;
        } else {
            seq.h[static_cast<std::size_t>(k)] = h;
            seq.l[static_cast<std::size_t>(k)] = a * h + (1.0 - a) * l;
        }
    }
    return seq;
}

std::vector<double> default_schedule(int n, double c, double c0) {
    if (n < 0) {
        throw ScheduleError("schedule length must be nonnegative, got " +
                            std::to_string(n));
    }
    std::vector<double> schedule(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        schedule[static_cast<std::size_t>(k - 1)] = c / (k + c0);
    }
    return schedule;
}

OdeTrajectory ode_convergence(double step) {
    if (!(step > 0.0)) {
        throw StepError("integration step must be positive, got " +
                        std::to_string(step));
    }
    OdeTrajectory traj;
    traj.step = step;
    double l = 0.0;
    double h = 1.0;
    traj.samples.emplace_back(l, h);
    while (h - l >= 1e-10) {
        const double dl = std::min(step, 0.25 * (h - l));
        const double k1 = slope(l, h);
        const double k2 = slope(l + 0.5 * dl, h + 0.5 * dl * k1);
        const double k3 = slope(l + 0.5 * dl, h + 0.5 * dl * k2);
        const double k4 = slope(l + dl, h + dl * k3);
        h += dl / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        l += dl;
        traj.samples.emplace_back(l, h);
    }
    // One Newton step on H(L) - L locates the crossing to far better than
    // the stopping gap.
    traj.l0 = l + (h - l) / (1.0 - slope(l, h));
    return traj;
}

double ode_invariant(double l, double h) {
    return std::log(h * h + 0.5 * l * h + 0.5 * l * l) +
           2.0 / std::sqrt(7.0) *
               std::atan(std::sqrt(7.0) * l / (4.0 * h + l));
}

double closed_form_constant() {
    return std::exp(-2.0 / std::sqrt(7.0) * std::atan(std::sqrt(7.0) / 5.0));
}

} // namespace weakcoin
