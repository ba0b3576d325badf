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

#include "weakcoin.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include <json.hpp>

#include "weakcoin/asymptotics.hpp"
#include "weakcoin/boundary.hpp"
#include "weakcoin/errors.hpp"
#include "weakcoin/families.hpp"
#include "weakcoin/game.hpp"
#include "weakcoin/json_io.hpp"
#include "weakcoin/protocol.hpp"
#include "weakcoin/verify.hpp"

struct wcf_game {
    weakcoin::CoinGame game;
};

namespace {

thread_local std::string g_last_error = "no error";

char *dup_string(const std::string &text) {
    char *copy = static_cast<char *>(std::malloc(text.size() + 1));
    if (copy == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(copy, text.c_str(), text.size() + 1);
    return copy;
}

/// Runs @p body, translating library exceptions into status codes and the
/// thread-local error string.
template <typename F> wcf_status guarded(F &&body) {
    try {
        return body();
    } catch (const weakcoin::Error &e) {
        g_last_error = e.what();
        return static_cast<wcf_status>(static_cast<int>(e.kind()));
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return WCF_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return WCF_ERROR_INTERNAL;
    }
}

wcf_status require(bool condition, const char *message) {
    if (!condition) {
        g_last_error = message;
        return WCF_ERROR_VALIDATION;
    }
    return WCF_OK;
}

wcf_status make_game(weakcoin::CoinGame game, wcf_game **out) {
    *out = new wcf_game{std::move(game)};
    return WCF_OK;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

extern "C" {

const char *wcf_last_error(void) { return g_last_error.c_str(); }

void wcf_string_free(char *text) { std::free(text); }

void wcf_game_free(wcf_game *game) { delete game; }

wcf_status wcf_game_parse(const char *json, wcf_game **out) {
    if (wcf_status s = require(json != nullptr && out != nullptr,
                               "wcf_game_parse: NULL argument")) {
        return s;
    }
    return guarded([&] {
        weakcoin::CoinGame game = weakcoin::game_from_json(json);
        weakcoin::require_valid(game);
        return make_game(std::move(game), out);
    });
}

wcf_status wcf_game_to_json(const wcf_game *game, char **out) {
    if (wcf_status s = require(game != nullptr && out != nullptr,
                               "wcf_game_to_json: NULL argument")) {
        return s;
    }
    return guarded([&] {
        *out = dup_string(weakcoin::game_to_json(game->game));
        return WCF_OK;
    });
}

wcf_status wcf_game_optimal(int n, wcf_game **out) {
    if (wcf_status s =
            require(out != nullptr, "wcf_game_optimal: NULL argument")) {
        return s;
    }
    return guarded([&] { return make_game(weakcoin::optimal_game(n), out); });
}

wcf_status wcf_game_fair(int n, wcf_game **out) {
    if (wcf_status s =
            require(out != nullptr, "wcf_game_fair: NULL argument")) {
        return s;
    }
    return guarded([&] { return make_game(weakcoin::fair_game(n), out); });
}

wcf_status wcf_game_t_family(int n, double t, wcf_game **out) {
    if (wcf_status s =
            require(out != nullptr, "wcf_game_t_family: NULL argument")) {
        return s;
    }
    return guarded(
        [&] { return make_game(weakcoin::t_family_game(n, t), out); });
}

wcf_status wcf_game_random(int depth, uint64_t seed, wcf_game **out) {
    if (wcf_status s =
            require(out != nullptr, "wcf_game_random: NULL argument")) {
        return s;
    }
    return guarded(
        [&] { return make_game(weakcoin::random_game(depth, seed), out); });
}

wcf_status wcf_game_boundary_point(int n, double z, wcf_game **out) {
    if (wcf_status s = require(out != nullptr,
                               "wcf_game_boundary_point: NULL argument")) {
        return s;
    }
    return guarded([&] {
        return make_game(weakcoin::game_for_boundary_point(n, z), out);
    });
}

int wcf_game_depth(const wcf_game *game) {
    return game == nullptr ? -1 : game->game.depth();
}

wcf_status wcf_analyze(const wcf_game *game, double out[7]) {
    if (wcf_status s = require(game != nullptr && out != nullptr,
                               "wcf_analyze: NULL argument")) {
        return s;
    }
    return guarded([&] {
        const weakcoin::ProtocolPoint p = weakcoin::protocol_point(game->game);
        out[0] = p.a_root;
        out[1] = p.b_root;
        out[2] = p.h_root;
        out[3] = p.pa;
        out[4] = p.pa_star;
        out[5] = p.pb_star;
        out[6] = p.bias();
        return WCF_OK;
    });
}

wcf_status wcf_family_table_row(int n, double out[8]) {
    if (wcf_status s =
            require(out != nullptr, "wcf_family_table_row: NULL argument")) {
        return s;
    }
    return guarded([&] {
        const weakcoin::OptimalFamilyPoint p =
            weakcoin::optimal_family_point(n);
        out[0] = p.gamma;
        out[1] = p.a_root;
        out[2] = p.b_root;
        out[3] = p.h_root;
        out[4] = p.pa;
        out[5] = p.pa_star;
        out[6] = p.pb_star;
        out[7] = p.bias();
        return WCF_OK;
    });
}

wcf_status wcf_curve_params(int n, double *alpha, double *beta) {
    if (wcf_status s = require(alpha != nullptr && beta != nullptr,
                               "wcf_curve_params: NULL argument")) {
        return s;
    }
    return guarded([&] {
        const weakcoin::BoundaryParams p = weakcoin::boundary_params(n);
        *alpha = p.alpha;
        *beta = p.beta;
        return WCF_OK;
    });
}

wcf_status wcf_curve_value(int n, double z, double *out) {
    if (wcf_status s =
            require(out != nullptr, "wcf_curve_value: NULL argument")) {
        return s;
    }
    return guarded([&] {
        *out = weakcoin::boundary_curve(n, z);
        return WCF_OK;
    });
}

wcf_status wcf_curve_limit_value(double z, double *out) {
    if (wcf_status s =
            require(out != nullptr, "wcf_curve_limit_value: NULL argument")) {
        return s;
    }
    return guarded([&] {
        *out = weakcoin::boundary_curve_limit(z);
        return WCF_OK;
    });
}

wcf_status wcf_simulate_honest(const wcf_game *game, int depth_limit,
                               double out[3], char **state_json_lines) {
    if (wcf_status s = require(game != nullptr && out != nullptr,
                               "wcf_simulate_honest: NULL argument")) {
        return s;
    }
    return guarded([&] {
        const int limit = depth_limit > 0 ? depth_limit : 16;
        const weakcoin::HonestOutcome outcome =
            weakcoin::honest_run(game->game, limit);
        out[0] = outcome.p_alice_wins;
        out[1] = outcome.p_bob_wins;
        out[2] = outcome.agreement ? 1.0 : 0.0;
        if (state_json_lines != nullptr) {
            *state_json_lines =
                dup_string(weakcoin::state_to_json_lines(outcome.final_state));
        }
        return WCF_OK;
    });
}

wcf_status wcf_simulate_classical(const wcf_game *game, uint64_t samples,
                                  uint64_t seed, double out[2]) {
    if (wcf_status s = require(game != nullptr && out != nullptr,
                               "wcf_simulate_classical: NULL argument")) {
        return s;
    }
    return guarded([&] {
        const weakcoin::ClassicalEstimate est =
            weakcoin::classical_play(game->game, samples, seed);
        out[0] = est.estimate;
        out[1] = est.std_error;
        return WCF_OK;
    });
}

wcf_status wcf_certify(const wcf_game *game, double epsilon_prime,
                       double primal_tol, double dual_tol, int depth_limit,
                       char **report_json) {
    if (wcf_status s = require(game != nullptr && report_json != nullptr,
                               "wcf_certify: NULL argument")) {
        return s;
    }
    return guarded([&]() -> wcf_status {
        const weakcoin::CoinGame &g = game->game;
        const int limit = depth_limit > 0 ? depth_limit : 3;
        const double ptol = primal_tol > 0 ? primal_tol : 1e-10;
        const double dtol = dual_tol > 0 ? dual_tol : 1e-8;

        const weakcoin::PrimalStrategy primal =
            weakcoin::build_primal(g, limit);
        const weakcoin::PrimalCheckReport primal_report =
            weakcoin::measure_primal_constraints(g, primal);
        const double value = weakcoin::primal_value(g, primal);

        const weakcoin::DualCertificate dual =
            weakcoin::build_dual(g, epsilon_prime, limit);
        const weakcoin::DualCheckReport dual_report =
            weakcoin::measure_dual_constraints(g, dual);

        std::string failure;
        for (const auto &r : primal_report.residuals) {
            if (!(r.value <= ptol) && failure.empty()) {
                failure = "strategy constraint '" + r.name + "' deviates by " +
                          format_number(r.value);
            }
        }
        for (const auto &level : dual_report.levels) {
            if (!(level.value >= -dtol) && failure.empty()) {
                failure = "certificate step '" + level.name +
                          "' has minimum eigenvalue " +
                          format_number(level.value);
            }
        }
        for (const auto &[eps, rv] : dual_report.rank_one) {
            if (!(rv <= 1.0 + dtol) && failure.empty()) {
                failure = "certificate final step rank-one value " +
                          format_number(rv) + " at eps = " +
                          format_number(eps);
            }
        }

        nlohmann::ordered_json report;
        report["depth"] = g.depth();
        report["epsilon_prime"] = epsilon_prime;
        report["primal"]["value"] = value;
        report["primal"]["max_residual"] = primal_report.max_residual;
        report["primal"]["residuals"] = nlohmann::ordered_json::array();
        for (const auto &r : primal_report.residuals) {
            report["primal"]["residuals"].push_back(
                {{"name", r.name}, {"value", r.value}});
        }
        report["dual"]["bound"] = dual.bound;
        report["dual"]["min_eigenvalue"] = dual_report.min_eigenvalue;
        report["dual"]["padding"] = dual.c;
        report["dual"]["levels"] = nlohmann::ordered_json::array();
        for (const auto &level : dual_report.levels) {
            report["dual"]["levels"].push_back(
                {{"name", level.name}, {"min_eigenvalue", level.value}});
        }
        report["dual"]["rank_one"] = nlohmann::ordered_json::array();
        for (const auto &[eps, rv] : dual_report.rank_one) {
            report["dual"]["rank_one"].push_back(
                {{"epsilon", eps}, {"value", rv}});
        }
        report["gap"] = dual.bound - value;
        report["alice_bound"] = weakcoin::cheating_alice_bound(g);
        report["pass"] = failure.empty();
        *report_json = dup_string(report.dump(2) + "\n");

        if (!failure.empty()) {
            g_last_error = failure;
            return WCF_ERROR_CONSTRAINT;
        }
        return WCF_OK;
    });
}

wcf_status wcf_asymptotic_closed_form(double *out) {
    if (wcf_status s = require(out != nullptr,
                               "wcf_asymptotic_closed_form: NULL argument")) {
        return s;
    }
    *out = weakcoin::closed_form_constant();
    return WCF_OK;
}

wcf_status wcf_asymptotic_ode(double step, double *out) {
    if (wcf_status s =
            require(out != nullptr, "wcf_asymptotic_ode: NULL argument")) {
        return s;
    }
    return guarded([&] {
        const weakcoin::OdeTrajectory traj =
            weakcoin::ode_convergence(step > 0 ? step : 1e-4);
        *out = traj.limiting_value();
        return WCF_OK;
    });
}

wcf_status wcf_asymptotic_discrete(int n, double c, double c0, double *out,
                                   char **trajectory_csv) {
    if (wcf_status s = require(out != nullptr,
                               "wcf_asymptotic_discrete: NULL argument")) {
        return s;
    }
    return guarded([&] {
        const weakcoin::HLSequence seq =
            weakcoin::discrete_hl(weakcoin::default_schedule(n, c, c0));
        *out = 2.0 * seq.h0_squared();
        if (trajectory_csv != nullptr) {
            std::string csv = "k,H,L\n";
            for (std::size_t k = 0; k < seq.h.size(); ++k) {
                csv += std::to_string(k) + "," + format_number(seq.h[k]) +
                       "," + format_number(seq.l[k]) + "\n";
            }
            *trajectory_csv = dup_string(csv);
        }
        return WCF_OK;
    });
}

} // extern "C"
