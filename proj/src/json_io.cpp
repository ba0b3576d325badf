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

#include "weakcoin/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace weakcoin {

CoinGame game_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("expected a JSON object with \"depth\" and "
                         "\"nodes\" members");
    }
    if (!j.contains("depth") || !j["depth"].is_number_integer()) {
        throw ParseError("missing or non-integer \"depth\" member");
    }
    if (!j.contains("nodes") || !j["nodes"].is_array()) {
        throw ParseError("missing or non-array \"nodes\" member");
    }
    const auto depth = j["depth"].get<int>();
    std::vector<double> nodes;
    nodes.reserve(j["nodes"].size());
    for (const auto &v : j["nodes"]) {
        if (!v.is_number()) {
            throw ParseError("node entry " + std::to_string(nodes.size()) +
                             " is not a number");
        }
        nodes.push_back(v.get<double>());
    }
    try {
        return CoinGame(depth, std::move(nodes));
    } catch (const Error &e) {
        throw ParseError(e.what());
    }
}

std::string game_to_json(const CoinGame &game) {
    nlohmann::ordered_json j;
    j["depth"] = game.depth();
    j["nodes"] = game.values();
    return j.dump(2) + "\n";
}

CoinGame load_game(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw ParseError("failed while reading '" + path + "'");
    }
    return game_from_json(buf.str());
}

void save_game(const CoinGame &game, const std::string &path) {
    write_text_atomic(path, game_to_json(game));
}

void write_text_atomic(const std::string &path, const std::string &text) {
    const std::string temp = path + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::internal,
                        "cannot open '" + temp + "' for writing");
        }
        out << text;
        out.flush();
        if (!out) {
            throw Error(ErrorKind::internal, "failed writing '" + temp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        std::filesystem::remove(temp);
        throw Error(ErrorKind::internal, "cannot move '" + temp + "' to '" +
                                             path + "': " + ec.message());
    }
}

std::string state_to_json_lines(const QuantumState &state) {
    std::ostringstream out;
    for (const auto &[label, amp] : state.amps) {
        nlohmann::ordered_json line;
        line["label_bits"] = state.layout.bits(label);
        line["re"] = amp.real();
        line["im"] = amp.imag();
        out << line.dump() << "\n";
    }
    return out.str();
}

} // namespace weakcoin
