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
 * @file json_io.hpp
 * Serialization of games and simulator states.
 *
 * Games travel as `{"depth": n, "nodes": [...]}` with the node values in
 * level order (root first, leaves last).  Serialization is canonical: the
 * same game always produces byte-identical text, so generated fixtures can
 * be diffed.  File writes go through a temp-file rename so readers never
 * observe a partially written artifact.
 */
#pragma once

#include <string>

#include "weakcoin/errors.hpp"
#include "weakcoin/game.hpp"
#include "weakcoin/protocol.hpp"

namespace weakcoin {

/// Parses a game from JSON text.
///
/// @throws ParseError if the text is not valid JSON of the expected shape
///         (object with integer "depth" and numeric array "nodes" of length
///         2^(depth+1) - 1).
CoinGame game_from_json(const std::string &text);

/// Renders a game as canonical, pretty-printed JSON (two-space indent,
/// trailing newline).  Round-trips exactly through game_from_json.
std::string game_to_json(const CoinGame &game);

/// Reads and parses a game file.
///
/// @throws ParseError if the file cannot be read or parsed.
CoinGame load_game(const std::string &path);

/// Writes canonical game JSON to @p path atomically.
void save_game(const CoinGame &game, const std::string &path);

/// Writes @p text to @p path via a temporary file and rename, so the target
/// is either absent, the old content, or the complete new content.
///
/// @throws Error (internal) on I/O failure.
void write_text_atomic(const std::string &path, const std::string &text);

/// Renders the nonzero amplitudes of a state as JSON lines, one object
/// `{"label_bits": ..., "re": ..., "im": ...}` per line, ordered by label.
/// The bit string lists the registers as printed by RegisterLayout::bits.
std::string state_to_json_lines(const QuantumState &state);

} // namespace weakcoin
