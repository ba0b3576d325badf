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

// weakcoin - command-line front end, built purely on the C interface.
//
// Exit codes: 0 success, 2 bad input/arguments, 3 certification failure,
// 4 size limit exceeded, 5 internal error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weakcoin.h"

namespace {

struct GameDeleter {
    void operator()(wcf_game *g) const { wcf_game_free(g); }
};
using GamePtr = std::unique_ptr<wcf_game, GameDeleter>;

struct StringDeleter {
    void operator()(char *s) const { wcf_string_free(s); }
};
using CStr = std::unique_ptr<char, StringDeleter>;

int fail(wcf_status status) {
    std::fprintf(stderr, "error: %s\n", wcf_last_error());
    return static_cast<int>(status);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool read_file(const std::string &path, std::string &out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return !in.bad();
}

/// Writes to stdout when path is empty, else atomically to the file.
int write_output(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    const std::string temp = path + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::fprintf(stderr, "error: cannot open '%s' for writing\n",
                         temp.c_str());
            return 5;
        }
        out << text;
        out.flush();
        if (!out) {
            std::fprintf(stderr, "error: failed writing '%s'\n",
                         temp.c_str());
            return 5;
        }
    }
    if (std::rename(temp.c_str(), path.c_str()) != 0) {
        std::fprintf(stderr, "error: cannot move '%s' to '%s'\n",
                     temp.c_str(), path.c_str());
        std::remove(temp.c_str());
        return 5;
    }
    return 0;
}

int env_limit(const char *name, int fallback) {
    const char *value = std::getenv(name);
    if (value == nullptr || *value == '\0') {
        return fallback;
    }
    char *end = nullptr;
    const long parsed = std::strtol(value, &end, 10);
    if (end == value || *end != '\0' || parsed <= 0 || parsed > 64) {
        std::fprintf(stderr, "warning: ignoring invalid %s='%s'\n", name,
                     value);
        return fallback;
    }
    return static_cast<int>(parsed);
}

int load_game_arg(const std::string &path, GamePtr &game) {
    std::string text;
    if (!read_file(path, text)) {
        std::fprintf(stderr, "error: cannot read '%s'\n", path.c_str());
        return 2;
    }
    wcf_game *raw = nullptr;
    if (wcf_status s = wcf_game_parse(text.c_str(), &raw)) {
        return fail(s);
    }
    game.reset(raw);
    return 0;
}

// ---- analyze ----

struct AnalyzeOptions {
    std::string game_path;
    std::string format = "text";
    std::string out_path;
};

int cmd_analyze(const AnalyzeOptions &opt) {
    GamePtr game;
    if (int rc = load_game_arg(opt.game_path, game)) {
        return rc;
    }
    double v[7];
    if (wcf_status s = wcf_analyze(game.get(), v)) {
        return fail(s);
    }
    static const char *kNames[7] = {"a_root",    "b_root",  "h_root", "p_a",
                                    "p_a_star", "p_b_star", "bias"};
    std::string text;
    if (opt.format == "csv") {
        for (int i = 0; i < 7; ++i) {
            text += std::string(kNames[i]) + (i == 6 ? "\n" : ",");
        }
        for (int i = 0; i < 7; ++i) {
            text += fmt(v[i]) + (i == 6 ? "\n" : ",");
        }
    } else if (opt.format == "json") {
        text = "{";
        for (int i = 0; i < 7; ++i) {
            text += std::string("\"") + kNames[i] + "\": " + fmt(v[i]) +
                    (i == 6 ? "}\n" : ", ");
        }
    } else {
        for (int i = 0; i < 7; ++i) {
            text += std::string(kNames[i]) +
                    std::string(9 - std::strlen(kNames[i]), ' ') + "= " +
                    fmt(v[i]) + "\n";
        }
    }
    return write_output(opt.out_path, text);
}

// ---- generate ----

struct GenerateOptions {
    std::string kind;
    int n = 2;
    double t = 1.0;
    bool table = false;
    std::string out_path;
};

int cmd_generate(const GenerateOptions &opt) {
    if (opt.table) {
        std::string csv =
            "n,gamma,a_root,b_root,h_root,p_a,p_a_star,p_b_star,bias\n";
        for (int n = 1; n <= opt.n; ++n) {
            double row[8];
            if (wcf_status s = wcf_family_table_row(n, row)) {
                return fail(s);
            }
            csv += std::to_string(n);
            for (double value : row) {
                csv += "," + fmt(value);
            }
            csv += "\n";
        }
        return write_output(opt.out_path, csv);
    }
    wcf_game *raw = nullptr;
    wcf_status s = WCF_OK;
    if (opt.kind == "optimal") {
        s = wcf_game_optimal(opt.n, &raw);
    } else if (opt.kind == "fair") {
        s = wcf_game_fair(opt.n, &raw);
    } else {
        s = wcf_game_t_family(opt.n, opt.t, &raw);
    }
    if (s != WCF_OK) {
        return fail(s);
    }
    GamePtr game(raw);
    char *json = nullptr;
    if (wcf_status s2 = wcf_game_to_json(game.get(), &json)) {
        return fail(s2);
    }
    CStr text(json);
    return write_output(opt.out_path, text.get());
}

// ---- curve ----

struct CurveOptions {
    int n = 0;
    bool infinity = false;
    int grid = 101;
    std::string format = "csv";
    std::string out_path;
};

std::string curve_svg(const std::vector<std::pair<double, double>> &points,
                      double knee_z, double knee_f, const std::string &title) {
    auto px = [](double z) { return 40.0 + 480.0 * z; };
    auto py = [](double f) { return 520.0 - 480.0 * f; };
    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 560 560\">\n"
        "  <rect x=\"40\" y=\"40\" width=\"480\" height=\"480\" "
        "fill=\"white\" stroke=\"black\"/>\n";
    svg += "  <text x=\"280\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">" +
           title + "</text>\n";
    svg += "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" "
           "points=\"";
    for (const auto &[z, f] : points) {
        svg += fmt(px(z)) + "," + fmt(py(f)) + " ";
    }
    svg += "\"/>\n";
    if (std::isfinite(knee_f)) {
        svg += "  <circle cx=\"" + fmt(px(knee_z)) + "\" cy=\"" +
               fmt(py(knee_f)) + "\" r=\"4\" fill=\"crimson\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

int cmd_curve(const CurveOptions &opt) {
    if (!opt.infinity && opt.n < 1) {
        std::fprintf(stderr,
                     "error: curve needs --n >= 1 or --infinity\n");
        return 2;
    }
    if (opt.grid < 2) {
        std::fprintf(stderr, "error: --grid must be at least 2\n");
        return 2;
    }
    double alpha = 1.0 / 3.0;
    double beta = std::sqrt(1.0 / 3.0);
    if (!opt.infinity) {
        if (wcf_status s = wcf_curve_params(opt.n, &alpha, &beta)) {
            return fail(s);
        }
    }
    std::vector<std::pair<double, double>> points;
    points.reserve(static_cast<std::size_t>(opt.grid));
    for (int i = 0; i < opt.grid; ++i) {
        const double z = static_cast<double>(i) / (opt.grid - 1);
        double f = 0.0;
        const wcf_status s = opt.infinity ? wcf_curve_limit_value(z, &f)
                                          : wcf_curve_value(opt.n, z, &f);
        if (s != WCF_OK) {
            return fail(s);
        }
        points.emplace_back(z, f);
    }
    const std::string label =
        opt.infinity ? "infinity" : std::to_string(opt.n);
    if (opt.format == "svg") {
        // The knee sits at (alpha, beta); at n = 1 beta is NaN and the
        // marker is skipped.
        return write_output(
            opt.out_path,
            curve_svg(points, alpha, beta, "frontier, n = " + label));
    }
    std::string csv = "# n = " + label + ", alpha = " + fmt(alpha) +
                      ", beta = " + fmt(beta) + "\nz,f\n";
    for (const auto &[z, f] : points) {
        csv += fmt(z) + "," + fmt(f) + "\n";
    }
    return write_output(opt.out_path, csv);
}

// ---- simulate ----

struct SimulateOptions {
    std::string mode;
    std::string game_path;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    std::string dump_path;
};

int cmd_simulate(const SimulateOptions &opt) {
    GamePtr game;
    if (int rc = load_game_arg(opt.game_path, game)) {
        return rc;
    }
    if (opt.mode == "honest") {
        const int limit = env_limit("WEAKCOIN_MAX_HONEST_DEPTH", 16);
        double v[3];
        char *dump = nullptr;
        const wcf_status s = wcf_simulate_honest(
            game.get(), limit, v, opt.dump_path.empty() ? nullptr : &dump);
        if (s != WCF_OK) {
            return fail(s);
        }
        CStr dump_guard(dump);
        std::string text;
        text += "p_alice_wins = " + fmt(v[0]) + "\n";
        text += "p_bob_wins   = " + fmt(v[1]) + "\n";
        text += std::string("agreement    = ") + (v[2] == 1.0 ? "yes" : "no") +
                "\n";
        if (dump != nullptr) {
            if (int rc = write_output(opt.dump_path, dump)) {
                return rc;
            }
        }
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    double v[2];
    if (wcf_status s =
            wcf_simulate_classical(game.get(), opt.samples, opt.seed, v)) {
        return fail(s);
    }
    std::string text;
    text += "estimate  = " + fmt(v[0]) + "\n";
    text += "std_error = " + fmt(v[1]) + "\n";
    text += "samples   = " + std::to_string(opt.samples) + "\n";
    std::fputs(text.c_str(), stdout);
    return 0;
}

// ---- certify ----

struct CertifyOptions {
    std::string game_path;
    double epsilon_prime = 1e-4;
    double tol = 0.0;      // 0 selects the library default (1e-10)
    double dual_tol = 0.0; // 0 selects the library default (1e-8)
    std::string out_path;
};

int cmd_certify(const CertifyOptions &opt) {
    GamePtr game;
    if (int rc = load_game_arg(opt.game_path, game)) {
        return rc;
    }
    const int limit = env_limit("WEAKCOIN_MAX_DENSE_DEPTH", 3);
    char *report = nullptr;
    const wcf_status s =
        wcf_certify(game.get(), opt.epsilon_prime, opt.tol, opt.dual_tol,
                    limit, &report);
    CStr guard(report);
    if (report != nullptr) {
        if (int rc = write_output(opt.out_path, report)) {
            return rc;
        }
    }
    if (s != WCF_OK) {
        return fail(s);
    }
    return 0;
}

// ---- asymptotic ----

struct AsymptoticOptions {
    std::string mode;
    int n = 100000;
    double step = 1e-4;
    double c = 2.0;
    double c0 = 20.0;
    std::string out_path;
};

int cmd_asymptotic(const AsymptoticOptions &opt) {
    double value = 0.0;
    if (opt.mode == "closed-form") {
        if (wcf_status s = wcf_asymptotic_closed_form(&value)) {
            return fail(s);
        }
    } else if (opt.mode == "ode") {
        if (wcf_status s = wcf_asymptotic_ode(opt.step, &value)) {
            return fail(s);
        }
    } else {
        char *csv = nullptr;
        const wcf_status s = wcf_asymptotic_discrete(
            opt.n, opt.c, opt.c0, &value,
            opt.out_path.empty() ? nullptr : &csv);
        if (s != WCF_OK) {
            return fail(s);
        }
        CStr guard(csv);
        if (csv != nullptr) {
            if (int rc = write_output(opt.out_path, csv)) {
                return rc;
            }
        }
    }
    std::string text;
    text += "limiting_value = " + fmt(value) + "\n";
    text += "bias           = " + fmt(value - 0.5) + "\n";
    std::fputs(text.c_str(), stdout);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"weakcoin: analysis, simulation, and certification of "
                 "tree-game weak coin-flipping protocols"};
    app.require_subcommand(1);

    AnalyzeOptions analyze_opt;
    CLI::App *analyze = app.add_subcommand(
        "analyze", "Honest and cheating figures of merit of a game file");
    analyze->add_option("game", analyze_opt.game_path, "game JSON file")
        ->required();
    analyze->add_option("--format", analyze_opt.format, "text, csv, or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    analyze->add_option("--out", analyze_opt.out_path, "output file");

    GenerateOptions generate_opt;
    CLI::App *generate =
        app.add_subcommand("generate", "Construct a named game family member");
    generate
        ->add_option("kind", generate_opt.kind,
                     "optimal, fair, or t-family")
        ->required()
        ->check(CLI::IsMember({"optimal", "fair", "t-family"}));
    generate->add_option("--n", generate_opt.n, "number of rounds");
    generate->add_option("--t", generate_opt.t,
                         "cheat-probability product for t-family");
    generate->add_flag("--table", generate_opt.table,
                       "emit the closed-form family table for 1..n as CSV");
    generate->add_option("--out", generate_opt.out_path, "output file");

    CurveOptions curve_opt;
    CLI::App *curve = app.add_subcommand(
        "curve", "Sample the achievability frontier f_n (CSV or SVG)");
    curve->add_option("--n", curve_opt.n, "frontier index (rounds)");
    curve->add_flag("--infinity", curve_opt.infinity,
                    "sample the limiting frontier instead");
    curve->add_option("--grid", curve_opt.grid, "number of samples")
        ->check(CLI::PositiveNumber);
    curve->add_option("--format", curve_opt.format, "csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}));
    curve->add_option("--out", curve_opt.out_path, "output file");

    SimulateOptions simulate_opt;
    CLI::App *simulate = app.add_subcommand(
        "simulate", "Run the protocol honestly or play the game classically");
    simulate->add_option("mode", simulate_opt.mode, "honest or classical")
        ->required()
        ->check(CLI::IsMember({"honest", "classical"}));
    simulate->add_option("game", simulate_opt.game_path, "game JSON file")
        ->required();
    simulate->add_option("--samples", simulate_opt.samples,
                         "classical mode: number of plays");
    simulate->add_option("--seed", simulate_opt.seed,
                         "classical mode: RNG seed");
    simulate->add_option("--dump-state", simulate_opt.dump_path,
                         "honest mode: write the final state as JSON lines");

    CertifyOptions certify_opt;
    CLI::App *certify = app.add_subcommand(
        "certify",
        "Check the cheating strategy and certificate for a game file");
    certify->add_option("game", certify_opt.game_path, "game JSON file")
        ->required();
    certify->add_option("--epsilon-prime", certify_opt.epsilon_prime,
                        "certificate slack (> 0)");
    certify->add_option("--tol", certify_opt.tol,
                        "strategy residual tolerance (default 1e-10)");
    certify->add_option("--dual-tol", certify_opt.dual_tol,
                        "certificate eigenvalue tolerance (default 1e-8)");
    certify->add_option("--out", certify_opt.out_path, "report file");

    AsymptoticOptions asymptotic_opt;
    CLI::App *asymptotic = app.add_subcommand(
        "asymptotic", "Limiting cheat probability of long fair games");
    asymptotic
        ->add_option("mode", asymptotic_opt.mode,
                     "ode, discrete, or closed-form")
        ->required()
        ->check(CLI::IsMember({"ode", "discrete", "closed-form"}));
    asymptotic->add_option("--n", asymptotic_opt.n,
                           "discrete mode: number of messages");
    asymptotic->add_option("--step", asymptotic_opt.step,
                           "ode mode: integration step");
    asymptotic->add_option("--c", asymptotic_opt.c,
                           "discrete mode: schedule numerator");
    asymptotic->add_option("--c0", asymptotic_opt.c0,
                           "discrete mode: schedule offset");
    asymptotic->add_option("--out", asymptotic_opt.out_path,
                           "discrete mode: trajectory CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    if (analyze->parsed()) {
        return cmd_analyze(analyze_opt);
    }
    if (generate->parsed()) {
        return cmd_generate(generate_opt);
    }
    if (curve->parsed()) {
        return cmd_curve(curve_opt);
    }
    if (simulate->parsed()) {
        return cmd_simulate(simulate_opt);
    }
    if (certify->parsed()) {
        return cmd_certify(certify_opt);
    }
    if (asymptotic->parsed()) {
        return cmd_asymptotic(asymptotic_opt);
    }
    return 0;
}
