// Copyright 2026 The epigame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EPIGAME_IO_HPP
#define EPIGAME_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "epigame/core.hpp"
#include "epigame/equilibrium.hpp"

namespace epigame {

using json = nlohmann::ordered_json;

/// Rejection with a JSON-path-like locator for the offending element.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class GameKind { finite, min, kripke };

inline const char* to_string(GameKind k) {
  switch (k) {
    case GameKind::finite: return "finite";
    case GameKind::min: return "min";
    case GameKind::kripke: return "kripke";
  }
  return "?";
}

/**
 * A parsed game file: one of the three game kinds plus the format version.
 * The body always satisfies the model invariants (parse validates).
 */
struct GameDocument {
  int format_version = 1;
  std::variant<FiniteGame, MinGame, KripkeGame> body;

  GameKind kind() const { return static_cast<GameKind>(body.index()); }
  const FiniteGame& finite() const { return std::get<FiniteGame>(body); }
  const MinGame& min() const { return std::get<MinGame>(body); }
  const KripkeGame& kripke() const { return std::get<KripkeGame>(body); }
};

namespace io_detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void require_keys(const json& obj, const std::string& path,
                         const std::vector<std::string>& required,
                         const std::vector<std::string>& optional = {}) {
  for (const std::string& k : required)
    if (!obj.contains(k)) throw ParseError(path, "missing required field \"" + k + "\"");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(required.begin(), required.end(), key) == required.end() &&
        std::find(optional.begin(), optional.end(), key) == optional.end())
      throw ParseError(path + "/" + key, "unknown field");
  }
}

inline std::vector<std::string> parse_string_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      throw ParseError(path + "/" + std::to_string(i), "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline double parse_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "non-finite number");
  return v;
}

inline void parse_tensor_rec(const json& j, const std::vector<int>& dims, std::size_t axis,
                             const std::string& path, std::vector<double>& out) {
  if (axis == dims.size()) {
    out.push_back(parse_number(j, path));
    return;
  }
  if (!j.is_array())
    throw ParseError(path, "expected a nested array (axis " + std::to_string(axis) + ")");
  if (static_cast<int>(j.size()) != dims[axis])
    throw ParseError(path, "expected " + std::to_string(dims[axis]) + " entries, got " +
                               std::to_string(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    parse_tensor_rec(j[i], dims, axis + 1, path + "/" + std::to_string(i), out);
}

inline Tensor parse_tensor(const json& j, const std::vector<int>& dims, const std::string& path) {
  std::vector<double> data;
  std::int64_t n = 1;
  for (int d : dims) n *= d;
  data.reserve(static_cast<std::size_t>(n));
  parse_tensor_rec(j, dims, 0, path, data);
  return Tensor(dims, std::move(data));
}

inline json tensor_to_json_rec(const Tensor& t, std::size_t axis, std::int64_t offset,
                               std::int64_t stride) {
  if (axis == t.dims().size()) return json(t.flat(offset));
  const int d = t.dims()[axis];
  const std::int64_t sub = stride / d;
  json arr = json::array();
  for (int i = 0; i < d; ++i) arr.push_back(tensor_to_json_rec(t, axis + 1, offset + i * sub, sub));
  return arr;
}

inline json tensor_to_json(const Tensor& t) { return tensor_to_json_rec(t, 0, 0, t.size()); }

inline Tensor negated(const Tensor& t) {
  Tensor out(t.dims());
  for (std::int64_t i = 0; i < t.size(); ++i) out.flat(i) = -t.flat(i);
  return out;
}

// Parses the fields shared by all three kinds into `players`/`strategies`,
// and returns the declared zero_sum flag.
template <typename GameT>
inline bool parse_common(const json& j, GameT& game) {
  game.players = parse_string_list(j.at("players"), "/players");

  const json& strat = j.at("strategies");
  if (!strat.is_object()) throw ParseError("/strategies", "expected an object keyed by player");
  for (const auto& [key, value] : strat.items()) {
    (void)value;
    if (std::find(game.players.begin(), game.players.end(), key) == game.players.end())
      throw ParseError("/strategies/" + key, "not a player of the game");
  }
  for (const PlayerId& p : game.players) {
    if (!strat.contains(p)) throw ParseError("/strategies", "missing strategies for player \"" + p + "\"");
    game.strategies.push_back(parse_string_list(strat.at(p), "/strategies/" + p));
  }

  bool zero_sum = false;
  if (j.contains("zero_sum")) {
    if (!j.at("zero_sum").is_boolean()) throw ParseError("/zero_sum", "expected a boolean");
    zero_sum = j.at("zero_sum").get<bool>();
    if (zero_sum && game.players.size() != 2)
      throw ParseError("/zero_sum", "zero-sum input requires exactly two players");
  }
  return zero_sum;
}

// payoff object keyed by player: all players, or only the first one for
// declared zero-sum documents (the second player's tensors are negations)
inline void check_payoff_keys(const json& payoffs, const std::vector<PlayerId>& players,
                              bool zero_sum) {
  if (!payoffs.is_object()) throw ParseError("/payoffs", "expected an object keyed by player");
  for (const auto& [key, value] : payoffs.items()) {
    (void)value;
    if (std::find(players.begin(), players.end(), key) == players.end())
      throw ParseError("/payoffs/" + key, "not a player of the game");
    if (zero_sum && key != players.front())
      throw ParseError("/payoffs/" + key,
                       "zero-sum documents carry only the first player's payoffs");
  }
  const std::size_t expected = zero_sum ? 1 : players.size();
  for (std::size_t p = 0; p < expected; ++p)
    if (!payoffs.contains(players[p]))
      throw ParseError("/payoffs", "missing payoffs for player \"" + players[p] + "\"");
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// Games
// ---------------------------------------------------------------------------

/**
 * Parses a game document (see the README for the schema). Rejects unknown
 * kinds and fields, shape violations, and non-finite numbers; every
 * rejection names the offending element by a JSON-path-like locator.
 * A two-player document with "zero_sum": true carries only the first
 * player's payoffs; the second player's are synthesized as negations.
 */
inline GameDocument parse_game(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("/", std::string("invalid JSON at ") + io_detail::line_col(text, e.byte) +
                              ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("/", "expected a JSON object");
  if (!j.contains("format_version")) throw ParseError("/format_version", "missing field");
  if (!j.at("format_version").is_number_integer() || j.at("format_version").get<int>() != 1)
    throw ParseError("/format_version", "unsupported format_version (expected 1)");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw ParseError("/kind", "missing or non-string kind");
  const std::string kind = j.at("kind").get<std::string>();

  GameDocument doc;
  if (kind == "finite") {
    io_detail::require_keys(j, "/", {"format_version", "kind", "players", "strategies", "payoffs"},
                            {"zero_sum"});
    FiniteGame g;
    const bool zs = io_detail::parse_common(j, g);
    g.declared_zero_sum = zs;
    const std::vector<int> dims = g.strategy_counts();
    const json& payoffs = j.at("payoffs");
    io_detail::check_payoff_keys(payoffs, g.players, zs);
    for (std::size_t p = 0; p < (zs ? 1 : g.players.size()); ++p)
      g.payoffs.push_back(
          io_detail::parse_tensor(payoffs.at(g.players[p]), dims, "/payoffs/" + g.players[p]));
    if (zs) g.payoffs.push_back(io_detail::negated(g.payoffs.front()));
    const auto violations = validate(g);
    if (!violations.empty()) throw ParseError("/", "invalid game: " + violations.front());
    doc.body = std::move(g);
  } else if (kind == "min") {
    io_detail::require_keys(j, "/",
                            {"format_version", "kind", "players", "strategies", "k", "payoffs"},
                            {"zero_sum"});
    MinGame g;
    const bool zs = io_detail::parse_common(j, g);
    g.declared_zero_sum = zs;
    if (!j.at("k").is_number_integer() || j.at("k").get<int>() < 1)
      throw ParseError("/k", "expected a positive integer");
    g.k = j.at("k").get<int>();
    const std::vector<int> dims = g.strategy_counts();
    const json& payoffs = j.at("payoffs");
    io_detail::check_payoff_keys(payoffs, g.players, zs);
    for (std::size_t p = 0; p < (zs ? 1 : g.players.size()); ++p) {
      const std::string path = "/payoffs/" + g.players[p];
      const json& list = payoffs.at(g.players[p]);
      if (!list.is_array()) throw ParseError(path, "expected an array of k tensors");
      if (static_cast<int>(list.size()) != g.k)
        throw ParseError(path, "expected " + std::to_string(g.k) + " tensors, got " +
                                   std::to_string(list.size()));
      std::vector<Tensor> tensors;
      for (std::size_t t = 0; t < list.size(); ++t)
        tensors.push_back(io_detail::parse_tensor(list[t], dims, path + "/" + std::to_string(t)));
      g.payoffs.push_back(std::move(tensors));
    }
    if (zs) {
      std::vector<Tensor> neg;
      for (const Tensor& t : g.payoffs.front()) neg.push_back(io_detail::negated(t));
      g.payoffs.push_back(std::move(neg));
    }
    const auto violations = validate(g);
    if (!violations.empty()) throw ParseError("/", "invalid game: " + violations.front());
    doc.body = std::move(g);
  } else if (kind == "kripke") {
    io_detail::require_keys(j, "/",
                            {"format_version", "kind", "players", "strategies", "worlds",
                             "partitions", "payoffs"},
                            {"zero_sum"});
    KripkeGame g;
    const bool zs = io_detail::parse_common(j, g);
    g.declared_zero_sum = zs;
    g.worlds = io_detail::parse_string_list(j.at("worlds"), "/worlds");

    const json& parts = j.at("partitions");
    if (!parts.is_object()) throw ParseError("/partitions", "expected an object keyed by player");
    for (const auto& [key, value] : parts.items()) {
      (void)value;
      if (std::find(g.players.begin(), g.players.end(), key) == g.players.end())
        throw ParseError("/partitions/" + key, "not a player of the game");
    }
    for (const PlayerId& p : g.players) {
      if (!parts.contains(p))
        throw ParseError("/partitions", "missing partition for player \"" + p + "\"");
      const json& blocks = parts.at(p);
      if (!blocks.is_array()) throw ParseError("/partitions/" + p, "expected an array of blocks");
      std::vector<std::vector<WorldId>> partition;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        partition.push_back(io_detail::parse_string_list(
            blocks[b], "/partitions/" + p + "/" + std::to_string(b)));
      g.partitions.push_back(std::move(partition));
    }

    const std::vector<int> dims = g.strategy_counts();
    const json& payoffs = j.at("payoffs");
    io_detail::check_payoff_keys(payoffs, g.players, zs);
    for (std::size_t p = 0; p < (zs ? 1 : g.players.size()); ++p) {
      const std::string path = "/payoffs/" + g.players[p];
      const json& per_world = payoffs.at(g.players[p]);
      if (!per_world.is_object()) throw ParseError(path, "expected an object keyed by world");
      for (const auto& [key, value] : per_world.items()) {
        (void)value;
        if (std::find(g.worlds.begin(), g.worlds.end(), key) == g.worlds.end())
          throw ParseError(path + "/" + key, "not a world of the game");
      }
      std::vector<Tensor> tensors;
      for (const WorldId& w : g.worlds) {
        if (!per_world.contains(w))
          throw ParseError(path, "missing payoff tensor for world \"" + w + "\"");
        tensors.push_back(io_detail::parse_tensor(per_world.at(w), dims, path + "/" + w));
      }
      g.payoffs.push_back(std::move(tensors));
    }
    if (zs) {
      std::vector<Tensor> neg;
      for (const Tensor& t : g.payoffs.front()) neg.push_back(io_detail::negated(t));
      g.payoffs.push_back(std::move(neg));
    }
    const auto violations = validate(g);
    if (!violations.empty()) throw ParseError("/", "invalid game: " + violations.front());
    doc.body = std::move(g);
  } else {
    throw ParseError("/kind", "unknown kind \"" + kind + "\" (expected finite, min, or kripke)");
  }
  return doc;
}

/**
 * Canonical serialization: fixed key order, players and worlds in declared
 * order, numbers as shortest round-trip decimals. parse(serialize(x))
 * equals x structurally with bit-exact payoffs, and serializing again is
 * byte-identical.
 */
inline std::string serialize_game(const GameDocument& doc) {
  json j;
  j["format_version"] = doc.format_version;
  j["kind"] = to_string(doc.kind());

  const auto common = [&](const auto& g, bool zero_sum) {
    j["players"] = g.players;
    json strat = json::object();
    for (std::size_t p = 0; p < g.players.size(); ++p) strat[g.players[p]] = g.strategies[p];
    j["strategies"] = std::move(strat);
    if (zero_sum) j["zero_sum"] = true;
  };

  if (doc.kind() == GameKind::finite) {
    const FiniteGame& g = doc.finite();
    const bool zs = g.declared_zero_sum;
    if (zs) {
      if (g.players.size() != 2 || g.payoffs[1] != io_detail::negated(g.payoffs[0]))
        throw std::invalid_argument(
            "serialize_game: declared zero-sum game whose payoffs are not negations");
    }
    common(g, zs);
    json payoffs = json::object();
    for (std::size_t p = 0; p < (zs ? 1 : g.players.size()); ++p)
      payoffs[g.players[p]] = io_detail::tensor_to_json(g.payoffs[p]);
    j["payoffs"] = std::move(payoffs);
  } else if (doc.kind() == GameKind::min) {
    const MinGame& g = doc.min();
    const bool zs = g.declared_zero_sum;
    if (zs) {
      if (g.players.size() != 2) throw std::invalid_argument("serialize_game: zero-sum needs 2 players");
      for (int t = 0; t < g.k; ++t)
        if (g.payoffs[1][static_cast<std::size_t>(t)] !=
            io_detail::negated(g.payoffs[0][static_cast<std::size_t>(t)]))
          throw std::invalid_argument(
              "serialize_game: declared zero-sum game whose payoffs are not negations");
    }
    common(g, zs);
    j["k"] = g.k;
    // zero_sum key must come after k in canonical order
    if (zs) {
      j.erase("zero_sum");
      j["zero_sum"] = true;
    }
    json payoffs = json::object();
    for (std::size_t p = 0; p < (zs ? 1 : g.players.size()); ++p) {
      json list = json::array();
      for (const Tensor& t : g.payoffs[p]) list.push_back(io_detail::tensor_to_json(t));
      payoffs[g.players[p]] = std::move(list);
    }
    j["payoffs"] = std::move(payoffs);
  } else {
    const KripkeGame& g = doc.kripke();
    const bool zs = g.declared_zero_sum;
    if (zs) {
      if (g.players.size() != 2) throw std::invalid_argument("serialize_game: zero-sum needs 2 players");
      for (std::size_t w = 0; w < g.worlds.size(); ++w)
        if (g.payoffs[1][w] != io_detail::negated(g.payoffs[0][w]))
          throw std::invalid_argument(
              "serialize_game: declared zero-sum game whose payoffs are not negations");
    }
    common(g, zs);
    j["worlds"] = g.worlds;
    json parts = json::object();
    for (std::size_t p = 0; p < g.players.size(); ++p) parts[g.players[p]] = g.partitions[p];
    j["partitions"] = std::move(parts);
    if (zs) {
      j.erase("zero_sum");
      j["zero_sum"] = true;
    }
    json payoffs = json::object();
    for (std::size_t p = 0; p < (zs ? 1 : g.players.size()); ++p) {
      json per_world = json::object();
      for (std::size_t w = 0; w < g.worlds.size(); ++w)
        per_world[g.worlds[w]] = io_detail::tensor_to_json(g.payoffs[p][w]);
      payoffs[g.players[p]] = std::move(per_world);
    }
    j["payoffs"] = std::move(payoffs);
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Plays
// ---------------------------------------------------------------------------

/// Key identifying a knowledge class in play files: the block's world ids,
/// sorted and comma-joined.
inline std::string block_key(const std::vector<WorldId>& block) {
  std::vector<WorldId> sorted = block;
  std::sort(sorted.begin(), sorted.end());
  std::string key;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) key += ",";
    key += sorted[i];
  }
  return key;
}

inline Play parse_play(const std::string& text, const std::vector<PlayerId>& players,
                       const std::vector<int>& dims) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("/", std::string("invalid JSON at ") + io_detail::line_col(text, e.byte) +
                              ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("/", "expected a JSON object");
  io_detail::require_keys(j, "/", {"kind", "strategies"});
  if (!j.at("kind").is_string() || j.at("kind").get<std::string>() != "play")
    throw ParseError("/kind", "expected \"play\"");
  const json& strat = j.at("strategies");
  if (!strat.is_object()) throw ParseError("/strategies", "expected an object keyed by player");
  for (const auto& [key, value] : strat.items()) {
    (void)value;
    if (std::find(players.begin(), players.end(), key) == players.end())
      throw ParseError("/strategies/" + key, "not a player of the game");
  }
  Play play;
  for (std::size_t p = 0; p < players.size(); ++p) {
    const std::string path = "/strategies/" + players[p];
    if (!strat.contains(players[p]))
      throw ParseError("/strategies", "missing strategy for player \"" + players[p] + "\"");
    const json& arr = strat.at(players[p]);
    if (!arr.is_array() || static_cast<int>(arr.size()) != dims[p])
      throw ParseError(path, "expected an array of " + std::to_string(dims[p]) + " probabilities");
    std::vector<double> probs;
    for (std::size_t i = 0; i < arr.size(); ++i)
      probs.push_back(io_detail::parse_number(arr[i], path + "/" + std::to_string(i)));
    try {
      play.by_player.push_back(MixedStrategy(std::move(probs)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
  }
  return play;
}

inline std::string serialize_play(const Play& play, const std::vector<PlayerId>& players) {
  json j;
  j["kind"] = "play";
  json strat = json::object();
  for (std::size_t p = 0; p < players.size(); ++p)
    strat[players[p]] = play.by_player[p].probabilities();
  j["strategies"] = std::move(strat);
  return j.dump(2) + "\n";
}

inline KripkePlay parse_kripke_play(const std::string& text, const KripkeGame& game) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("/", std::string("invalid JSON at ") + io_detail::line_col(text, e.byte) +
                              ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("/", "expected a JSON object");
  io_detail::require_keys(j, "/", {"kind", "strategies"});
  if (!j.at("kind").is_string() || j.at("kind").get<std::string>() != "kripke_play")
    throw ParseError("/kind", "expected \"kripke_play\"");
  const json& strat = j.at("strategies");
  if (!strat.is_object()) throw ParseError("/strategies", "expected an object keyed by player");
  for (const auto& [key, value] : strat.items()) {
    (void)value;
    if (std::find(game.players.begin(), game.players.end(), key) == game.players.end())
      throw ParseError("/strategies/" + key, "not a player of the game");
  }

  const std::vector<int> dims = game.strategy_counts();
  KripkePlay play;
  for (int p = 0; p < game.num_players(); ++p) {
    const PlayerId& id = game.players[static_cast<std::size_t>(p)];
    const std::string path = "/strategies/" + id;
    if (!strat.contains(id))
      throw ParseError("/strategies", "missing strategies for player \"" + id + "\"");
    const json& per_block = strat.at(id);
    if (!per_block.is_object())
      throw ParseError(path, "expected an object keyed by knowledge class");
    const auto& partition = game.partitions[static_cast<std::size_t>(p)];
    for (const auto& [key, value] : per_block.items()) {
      (void)value;
      bool known = false;
      for (const auto& block : partition)
        if (block_key(block) == key) known = true;
      if (!known) throw ParseError(path + "/" + key, "not a knowledge class of this player");
    }
    std::vector<MixedStrategy> strategies;
    for (const auto& block : partition) {
      const std::string key = block_key(block);
      if (!per_block.contains(key))
        throw ParseError(path, "missing strategy for knowledge class \"" + key + "\"");
      const json& arr = per_block.at(key);
      const std::string bpath = path + "/" + key;
      if (!arr.is_array() || static_cast<int>(arr.size()) != dims[static_cast<std::size_t>(p)])
        throw ParseError(bpath, "expected an array of " +
                                    std::to_string(dims[static_cast<std::size_t>(p)]) +
                                    " probabilities");
      std::vector<double> probs;
      for (std::size_t i = 0; i < arr.size(); ++i)
        probs.push_back(io_detail::parse_number(arr[i], bpath + "/" + std::to_string(i)));
      try {
        strategies.push_back(MixedStrategy(std::move(probs)));
      } catch (const std::invalid_argument& e) {
        throw ParseError(bpath, e.what());
      }
    }
    play.by_player.push_back(std::move(strategies));
  }
  return play;
}

inline std::string serialize_kripke_play(const KripkePlay& play, const KripkeGame& game) {
  json j;
  j["kind"] = "kripke_play";
  json strat = json::object();
  for (int p = 0; p < game.num_players(); ++p) {
    json per_block = json::object();
    const auto& partition = game.partitions[static_cast<std::size_t>(p)];
    for (std::size_t b = 0; b < partition.size(); ++b)
      per_block[block_key(partition[b])] =
          play.by_player[static_cast<std::size_t>(p)][b].probabilities();
    strat[game.players[static_cast<std::size_t>(p)]] = std::move(per_block);
  }
  j["strategies"] = std::move(strat);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Reports and solver results
// ---------------------------------------------------------------------------

inline json gap_report_to_json(const GapReport& report) {
  json j = json::object();
  j["max_gap"] = report.max_gap;
  json per = json::object();
  json brs = json::object();
  for (std::size_t p = 0; p < report.players.size(); ++p) {
    per[report.players[p]] = report.per_player_gap[p];
    brs[report.players[p]] = report.best_responses[p].probabilities();
  }
  j["per_player_gap"] = std::move(per);
  j["best_responses"] = std::move(brs);
  return j;
}

inline json solve_result_to_json(const SolveResult& result, const MinGame& game) {
  json j;
  j["kind"] = "solve_result";
  j["method"] = result.method;
  j["converged"] = result.converged;
  j["iterations_used"] = result.iterations_used;
  j["restarts_used"] = result.restarts_used;
  j["max_gap"] = result.report.max_gap;
  json per = json::object();
  json brs = json::object();
  for (std::size_t p = 0; p < result.report.players.size(); ++p) {
    per[result.report.players[p]] = result.report.per_player_gap[p];
    brs[result.report.players[p]] = result.report.best_responses[p].probabilities();
  }
  j["per_player_gap"] = std::move(per);
  j["best_responses"] = std::move(brs);
  json strat = json::object();
  for (std::size_t p = 0; p < game.players.size(); ++p)
    strat[game.players[p]] = result.play.by_player[p].probabilities();
  j["play"] = json{{"kind", "play"}, {"strategies", std::move(strat)}};
  return j;
}

inline std::string serialize_solve_result(const SolveResult& result, const MinGame& game) {
  return solve_result_to_json(result, game).dump(2) + "\n";
}

inline json solve_result_to_json(const KripkeSolveResult& result, const KripkeGame& game) {
  json j;
  j["kind"] = "solve_result";
  j["method"] = result.method;
  j["converged"] = result.converged;
  j["iterations_used"] = result.iterations_used;
  j["restarts_used"] = result.restarts_used;
  j["max_gap"] = result.report.max_gap;
  json per = json::object();
  json brs = json::object();
  for (std::size_t p = 0; p < result.report.players.size(); ++p) {
    per[result.report.players[p]] = result.report.per_player_gap[p];
    brs[result.report.players[p]] = result.report.best_responses[p].probabilities();
  }
  j["per_player_gap"] = std::move(per);
  j["best_responses"] = std::move(brs);
  json strat = json::object();
  for (int p = 0; p < game.num_players(); ++p) {
    json per_block = json::object();
    const auto& partition = game.partitions[static_cast<std::size_t>(p)];
    for (std::size_t b = 0; b < partition.size(); ++b)
      per_block[block_key(partition[b])] =
          result.play.by_player[static_cast<std::size_t>(p)][b].probabilities();
    strat[game.players[static_cast<std::size_t>(p)]] = std::move(per_block);
  }
  j["play"] = json{{"kind", "kripke_play"}, {"strategies", std::move(strat)}};
  json wp = json::object();
  for (int p = 0; p < game.num_players(); ++p) {
    json per_world = json::object();
    for (std::size_t w = 0; w < game.worlds.size(); ++w)
      per_world[game.worlds[w]] = result.world_payoffs[static_cast<std::size_t>(p)][w];
    wp[game.players[static_cast<std::size_t>(p)]] = std::move(per_world);
  }
  j["world_payoffs"] = std::move(wp);
  return j;
}

inline std::string serialize_solve_result(const KripkeSolveResult& result, const KripkeGame& game) {
  return solve_result_to_json(result, game).dump(2) + "\n";
}

namespace io_detail {

inline json parse_result_header(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("/", std::string("invalid JSON at ") + line_col(text, e.byte) + ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("/", "expected a JSON object");
  if (!j.contains("kind") || j.at("kind") != "solve_result")
    throw ParseError("/kind", "expected \"solve_result\"");
  for (const char* field : {"method", "converged", "iterations_used", "restarts_used", "max_gap",
                            "per_player_gap", "best_responses", "play"})
    if (!j.contains(field))
      throw ParseError(std::string("/") + field, "missing required field");
  return j;
}

template <typename ResultT>
inline void fill_result_common(const json& j, const std::vector<PlayerId>& report_players,
                               const std::vector<int>& report_dims, ResultT& out) {
  out.method = j.at("method").get<std::string>();
  out.converged = j.at("converged").get<bool>();
  out.iterations_used = j.at("iterations_used").get<std::int64_t>();
  out.restarts_used = j.at("restarts_used").get<int>();
  out.report.players = report_players;
  out.report.max_gap = parse_number(j.at("max_gap"), "/max_gap");
  const json& per = j.at("per_player_gap");
  const json& brs = j.at("best_responses");
  for (std::size_t p = 0; p < report_players.size(); ++p) {
    const PlayerId& id = report_players[p];
    if (!per.contains(id)) throw ParseError("/per_player_gap", "missing player \"" + id + "\"");
    if (!brs.contains(id)) throw ParseError("/best_responses", "missing player \"" + id + "\"");
    out.report.per_player_gap.push_back(parse_number(per.at(id), "/per_player_gap/" + id));
    std::vector<double> probs;
    const json& arr = brs.at(id);
    if (!arr.is_array() || static_cast<int>(arr.size()) != report_dims[p])
      throw ParseError("/best_responses/" + id, "expected an array of " +
                                                    std::to_string(report_dims[p]) +
                                                    " probabilities");
    for (std::size_t i = 0; i < arr.size(); ++i)
      probs.push_back(parse_number(arr[i], "/best_responses/" + id + "/" + std::to_string(i)));
    try {
      out.report.best_responses.push_back(MixedStrategy(std::move(probs)));
    } catch (const std::invalid_argument& e) {
      throw ParseError("/best_responses/" + id, e.what());
    }
  }
}

}  // namespace io_detail

/// Inverse of serialize_solve_result for min-game (and finite-game) results.
inline SolveResult parse_solve_result(const std::string& text, const MinGame& game) {
  const json j = io_detail::parse_result_header(text);
  SolveResult out;
  io_detail::fill_result_common(j, game.players, game.strategy_counts(), out);
  out.play = parse_play(j.at("play").dump(), game.players, game.strategy_counts());
  return out;
}

inline KripkeSolveResult parse_kripke_solve_result(const std::string& text,
                                                   const KripkeGame& game) {
  const json j = io_detail::parse_result_header(text);
  if (!j.contains("world_payoffs")) throw ParseError("/world_payoffs", "missing required field");
  const KripkeToMinMap map = kripke_to_min(game);
  KripkeSolveResult out;
  io_detail::fill_result_common(j, map.min_game.players, map.min_game.strategy_counts(), out);
  out.play = parse_kripke_play(j.at("play").dump(), game);
  const json& wp = j.at("world_payoffs");
  for (int p = 0; p < game.num_players(); ++p) {
    const PlayerId& id = game.players[static_cast<std::size_t>(p)];
    if (!wp.contains(id)) throw ParseError("/world_payoffs", "missing player \"" + id + "\"");
    std::vector<double> per_world;
    for (const WorldId& w : game.worlds) {
      if (!wp.at(id).contains(w))
        throw ParseError("/world_payoffs/" + id, "missing world \"" + w + "\"");
      per_world.push_back(
          io_detail::parse_number(wp.at(id).at(w), "/world_payoffs/" + id + "/" + w));
    }
    out.world_payoffs.push_back(std::move(per_world));
  }
  return out;
}

}  // namespace epigame

#endif  // EPIGAME_IO_HPP
