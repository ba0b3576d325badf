/* Copyright 2026 The weakcoin authors.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

/*
 * weakcoin.h - C interface to the weak coin-flipping protocol library.
 *
 * Every function returns a wcf_status; 0 means success and any other value
 * matches the process exit codes used by the command-line tool.  On failure
 * wcf_last_error() returns a thread-local description of what went wrong.
 * Strings returned through char** out-parameters are heap-allocated and must
 * be released with wcf_string_free; games must be released with
 * wcf_game_free.
 */
#ifndef WEAKCOIN_H
#define WEAKCOIN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wcf_status {
    WCF_OK = 0,
    WCF_ERROR_VALIDATION = 2, /* malformed input or argument */
    WCF_ERROR_CONSTRAINT = 3, /* a checked (in)equality failed */
    WCF_ERROR_SIZE = 4,       /* a configured size limit was exceeded */
    WCF_ERROR_INTERNAL = 5    /* unexpected library failure */
} wcf_status;

/* An immutable coin game (a full binary tree of coin probabilities with
 * win/lose leaves). */
typedef struct wcf_game wcf_game;

/* Description of the most recent failure on this thread; never NULL. */
const char *wcf_last_error(void);

/* Releases a string returned by this library.  NULL is ignored. */
void wcf_string_free(char *text);

/* Releases a game handle.  NULL is ignored. */
void wcf_game_free(wcf_game *game);

/* ---- constructors and serialization ---- */

/* Parses `{"depth": n, "nodes": [...]}` JSON text into a validated game. */
wcf_status wcf_game_parse(const char *json, wcf_game **out);

/* Renders canonical JSON; round-trips exactly through wcf_game_parse. */
wcf_status wcf_game_to_json(const wcf_game *game, char **out);

/* The n-round member of the recursively built family whose cheat
 * probabilities approach 2/3 from above.  n >= 1. */
wcf_status wcf_game_optimal(int n, wcf_game **out);

/* The balanced variant (honest win probability exactly 1/2).  n even. */
wcf_status wcf_game_fair(int n, wcf_game **out);

/* The balanced family reparametrized by the product of cheat
 * probabilities; t in (0, 1].  n even. */
wcf_status wcf_game_t_family(int n, double t, wcf_game **out);

/* A seeded random game: uniform interior coins, fair random leaves. */
wcf_status wcf_game_random(int depth, uint64_t seed, wcf_game **out);

/* A game of depth <= n achieving the point (z, f_n(z)) of the n-round
 * achievability frontier.  Requires 0 <= z <= 1. */
wcf_status wcf_game_boundary_point(int n, double z, wcf_game **out);

/* Tree depth (number of rounds) of a game; -1 if game is NULL. */
int wcf_game_depth(const wcf_game *game);

/* ---- analysis ---- */

/* Honest and cheating figures of merit:
 * out[0..6] = A_r, B_r, H_r, P_A, P_A*, P_B*, bias. */
wcf_status wcf_analyze(const wcf_game *game, double out[7]);

/* Closed-form row of the family table for n rounds:
 * out[0..7] = gamma_n, A_r, B_r, H_r, P_A, P_A*, P_B*, bias. */
wcf_status wcf_family_table_row(int n, double out[8]);

/* ---- achievability frontier ---- */

/* Knee coordinates (alpha_n, beta_n) of the n-round frontier. */
wcf_status wcf_curve_params(int n, double *alpha, double *beta);

/* f_n(z) for n >= 1 and 0 <= z <= 1. */
wcf_status wcf_curve_value(int n, double z, double *out);

/* The n -> infinity frontier value at z. */
wcf_status wcf_curve_limit_value(double z, double *out);

/* ---- simulation ---- */

/* Runs both honest parties and measures:
 * out[0..2] = p_alice_wins, p_bob_wins, agreement (1.0 if the outputs are
 * always equal, else 0.0).  depth_limit <= 0 selects the default limit.
 * If state_json_lines is non-NULL it receives the final joint state as JSON
 * lines (one nonzero amplitude per line). */
wcf_status wcf_simulate_honest(const wcf_game *game, int depth_limit,
                               double out[3], char **state_json_lines);

/* Monte-Carlo estimate of the classical value of the tree game:
 * out[0..1] = estimate, standard error. */
wcf_status wcf_simulate_classical(const wcf_game *game, uint64_t samples,
                                  uint64_t seed, double out[2]);

/* ---- certification ---- */

/* Builds and checks the explicit cheating strategy (lower bound) and the
 * dual certificate (upper bound) for a cheating Bob, plus the closed-form
 * cheating-Alice bound.  Writes a JSON report to *report_json (always, when
 * the build itself succeeds) and returns WCF_ERROR_CONSTRAINT if any check
 * fails.  epsilon_prime > 0 is the certificate slack; primal_tol and
 * dual_tol <= 0 select the defaults (1e-10 and 1e-8); depth_limit <= 0
 * selects the default dense limit. */
wcf_status wcf_certify(const wcf_game *game, double epsilon_prime,
                       double primal_tol, double dual_tol, int depth_limit,
                       char **report_json);

/* ---- long-game limit ---- */

/* The limiting common cheat probability in closed form, 0.692181687... */
wcf_status wcf_asymptotic_closed_form(double *out);

/* The same constant from the envelope ODE; step <= 0 selects the default. */
wcf_status wcf_asymptotic_ode(double step, double *out);

/* The discrete envelope recursion with schedule a_k = c/(k + c0) for n
 * messages; *out receives 2*H_0^2.  If trajectory_csv is non-NULL it
 * receives the whole trajectory as CSV (columns k, H, L). */
wcf_status wcf_asymptotic_discrete(int n, double c, double c0, double *out,
                                   char **trajectory_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WEAKCOIN_H */
