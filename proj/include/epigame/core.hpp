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

#ifndef EPIGAME_CORE_HPP
#define EPIGAME_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "epigame/tensor.hpp"

namespace epigame {

using PlayerId = std::string;
using WorldId = std::string;

namespace tol {
// Mixed-strategy constructors renormalize inputs whose sum deviates from 1
// by at most this much, and reject anything worse. Absorbs float round-trip
// noise without masking genuinely broken input.
inline constexpr double kNormalize = 1e-6;
inline constexpr double kProbability = 1e-9;
inline constexpr double kTie = 1e-12;
}  // namespace tol

/**
 * Probability distribution over one player's strategy list.
 *
 * Entries are nonnegative and sum to 1 after construction (inputs within
 * 1e-6 of a unit sum are renormalized exactly; larger deviations throw).
 */
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw std::invalid_argument("MixedStrategy: empty probability vector");
    double sum = 0.0;
    for (double& v : p_) {
      if (!std::isfinite(v)) throw std::invalid_argument("MixedStrategy: non-finite probability");
      if (v < 0.0) {
        if (v < -1e-12) throw std::invalid_argument("MixedStrategy: negative probability");
        v = 0.0;
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol::kNormalize)
      throw std::invalid_argument("MixedStrategy: probabilities sum to " + std::to_string(sum) +
                                  ", expected 1 within 1e-06");
    // Renormalize real drift only. Sums already within 1e-12 stay untouched,
    // which keeps construction idempotent: one normalization pass lands
    // within a few ulps of 1, so a parse -> serialize -> parse round trip
    // reproduces the stored probabilities bit for bit.
    if (std::abs(sum - 1.0) > 1e-12) {
      for (double& v : p_) v /= sum;
    }
  }

  static MixedStrategy uniform(int m) {
    return MixedStrategy(std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
  }

  static MixedStrategy pure(int m, int strategy_index) {
    std::vector<double> v(static_cast<std::size_t>(m), 0.0);
    v[static_cast<std::size_t>(strategy_index)] = 1.0;
    return MixedStrategy(std::move(v));
  }

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& probabilities() const { return p_; }

  bool operator==(const MixedStrategy& other) const = default;

 private:
  std::vector<double> p_;
};

/// One mixed strategy per player, in the game's declared player order.
/// The joint distribution is always the independent product; expectations
/// are evaluated in closed form, never by sampling.
struct Play {
  std::vector<MixedStrategy> by_player;
};

/**
 * Behavioral strategy profile for a Kripke game: one mixed strategy per
 * knowledge class, per player (by_player[p][b] belongs to block b of
 * player p's partition, in declared block order).
 *
 * A mixed strategy over the class-to-strategy function space and the
 * independent product of its per-class marginals are payoff-equivalent:
 * every per-world expectation touches exactly one class of each player,
 * so only the per-class marginals ever enter any payoff, in any world,
 * against any opponent profile. Storing the marginals loses nothing.
 */
struct KripkePlay {
  std::vector<std::vector<MixedStrategy>> by_player;
};

/**
 * Finite normal-form game: ordered players, one strategy list per player,
 * one payoff tensor per player over the full pure-profile product. Every
 * player maximizes her own tensor; zero-sum two-player games are encoded
 * by giving the second player the negated tensor.
 */
struct FiniteGame {
  std::vector<PlayerId> players;
  std::vector<std::vector<std::string>> strategies;  // aligned with players
  std::vector<Tensor> payoffs;                       // aligned with players
  // Set when the source document declared the game zero-sum; lets the
  // solver dispatch to the exact LP on two-player instances.
  bool declared_zero_sum = false;

  int num_players() const { return static_cast<int>(players.size()); }

  int player_index(const PlayerId& id) const {
    for (int i = 0; i < num_players(); ++i)
      if (players[static_cast<std::size_t>(i)] == id) return i;
    throw std::invalid_argument("unknown player \"" + id + "\"");
  }

  std::vector<int> strategy_counts() const {
    std::vector<int> d;
    d.reserve(strategies.size());
    for (const auto& s : strategies) d.push_back(static_cast<int>(s.size()));
    return d;
  }
};

/// k parallel payoff tensors per player on shared strategy sets; a
/// player's payoff from a play is the minimum of her k expected payoffs.
struct MinGame {
  std::vector<PlayerId> players;
  std::vector<std::vector<std::string>> strategies;
  int k = 1;
  std::vector<std::vector<Tensor>> payoffs;  // [player][component game]
  bool declared_zero_sum = false;

  int num_players() const { return static_cast<int>(players.size()); }

  int player_index(const PlayerId& id) const {
    for (int i = 0; i < num_players(); ++i)
      if (players[static_cast<std::size_t>(i)] == id) return i;
    throw std::invalid_argument("unknown player \"" + id + "\"");
  }

  std::vector<int> strategy_counts() const {
    std::vector<int> d;
    d.reserve(strategies.size());
    for (const auto& s : strategies) d.push_back(static_cast<int>(s.size()));
    return d;
  }
};

/**
 * Game on a set of possible worlds. Each player has a strategy list shared
 * by all worlds, an equivalence partition of the worlds (her knowledge),
 * and one payoff tensor per world. Payoffs are pessimistic: in world w a
 * player expects the worst expectation across the worlds she cannot tell
 * apart from w.
 */
struct KripkeGame {
  std::vector<PlayerId> players;
  std::vector<std::vector<std::string>> strategies;
  std::vector<WorldId> worlds;
  std::vector<std::vector<std::vector<WorldId>>> partitions;  // [player][block][member]
  std::vector<std::vector<Tensor>> payoffs;                   // [player][world]
  bool declared_zero_sum = false;

  int num_players() const { return static_cast<int>(players.size()); }
  int num_worlds() const { return static_cast<int>(worlds.size()); }

  int player_index(const PlayerId& id) const {
    for (int i = 0; i < num_players(); ++i)
      if (players[static_cast<std::size_t>(i)] == id) return i;
    throw std::invalid_argument("unknown player \"" + id + "\"");
  }

  int world_index(const WorldId& id) const {
    for (int i = 0; i < num_worlds(); ++i)
      if (worlds[static_cast<std::size_t>(i)] == id) return i;
    throw std::invalid_argument("unknown world \"" + id + "\"");
  }

  // Index of the block of `player`'s partition containing world w.
  int block_index(int player, int world) const {
    const auto& part = partitions[static_cast<std::size_t>(player)];
    const WorldId& w = worlds[static_cast<std::size_t>(world)];
    for (int b = 0; b < static_cast<int>(part.size()); ++b) {
      const auto& members = part[static_cast<std::size_t>(b)];
      if (std::find(members.begin(), members.end(), w) != members.end()) return b;
    }
    throw std::invalid_argument("world \"" + w + "\" missing from partition of \"" +
                                players[static_cast<std::size_t>(player)] + "\"");
  }

  int num_blocks(int player) const {
    return static_cast<int>(partitions[static_cast<std::size_t>(player)].size());
  }

  std::vector<int> strategy_counts() const {
    std::vector<int> d;
    d.reserve(strategies.size());
    for (const auto& s : strategies) d.push_back(static_cast<int>(s.size()));
    return d;
  }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace detail {

inline void check_ids(const std::vector<std::string>& ids, const std::string& field,
                      std::vector<std::string>& out) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i].empty()) out.push_back(field + "[" + std::to_string(i) + "]: empty identifier");
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (ids[i] == ids[j])
        out.push_back(field + "[" + std::to_string(j) + "]: duplicate identifier \"" + ids[j] + "\"");
    }
  }
}

inline void check_strategies(const std::vector<PlayerId>& players,
                             const std::vector<std::vector<std::string>>& strategies,
                             std::vector<std::string>& out) {
  if (strategies.size() != players.size()) {
    out.push_back("strategies: expected one list per player (" + std::to_string(players.size()) +
                  "), got " + std::to_string(strategies.size()));
    return;
  }
  for (std::size_t p = 0; p < players.size(); ++p) {
    if (strategies[p].empty())
      out.push_back("strategies[" + players[p] + "]: player needs at least one strategy");
    check_ids(strategies[p], "strategies[" + players[p] + "]", out);
  }
}

inline void check_tensor(const Tensor& t, const std::vector<int>& dims, const std::string& field,
                         std::vector<std::string>& out) {
  if (t.dims() != dims) {
    std::string want, got;
    for (int d : dims) want += (want.empty() ? "" : "x") + std::to_string(d);
    for (int d : t.dims()) got += (got.empty() ? "" : "x") + std::to_string(d);
    out.push_back(field + ": tensor shape " + got + ", expected " + want);
    return;
  }
  for (std::int64_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t.flat(i))) {
      out.push_back(field + ": non-finite payoff entry at flat index " + std::to_string(i));
      return;
    }
  }
}

}  // namespace detail

/// Returns one human-readable entry per violated invariant; empty means valid.
inline std::vector<std::string> validate(const FiniteGame& g) {
  std::vector<std::string> out;
  if (g.players.empty()) out.push_back("players: game needs at least one player");
  detail::check_ids(g.players, "players", out);
  detail::check_strategies(g.players, g.strategies, out);
  if (!out.empty()) return out;
  const std::vector<int> dims = g.strategy_counts();
  if (g.payoffs.size() != g.players.size()) {
    out.push_back("payoffs: expected one tensor per player, got " + std::to_string(g.payoffs.size()));
    return out;
  }
  for (std::size_t p = 0; p < g.players.size(); ++p)
    detail::check_tensor(g.payoffs[p], dims, "payoffs[" + g.players[p] + "]", out);
  return out;
}

inline std::vector<std::string> validate(const MinGame& g) {
  std::vector<std::string> out;
  if (g.players.empty()) out.push_back("players: game needs at least one player");
  detail::check_ids(g.players, "players", out);
  detail::check_strategies(g.players, g.strategies, out);
  if (g.k < 1) out.push_back("k: must be at least 1, got " + std::to_string(g.k));
  if (!out.empty()) return out;
  const std::vector<int> dims = g.strategy_counts();
  if (g.payoffs.size() != g.players.size()) {
    out.push_back("payoffs: expected one tensor list per player, got " + std::to_string(g.payoffs.size()));
    return out;
  }
  for (std::size_t p = 0; p < g.players.size(); ++p) {
    if (static_cast<int>(g.payoffs[p].size()) != g.k) {
      out.push_back("payoffs[" + g.players[p] + "]: expected " + std::to_string(g.k) +
                    " tensors, got " + std::to_string(g.payoffs[p].size()));
      continue;
    }
    for (std::size_t j = 0; j < g.payoffs[p].size(); ++j)
      detail::check_tensor(g.payoffs[p][j], dims,
                           "payoffs[" + g.players[p] + "][" + std::to_string(j) + "]", out);
  }
  return out;
}

inline std::vector<std::string> validate(const KripkeGame& g) {
  std::vector<std::string> out;
  if (g.players.empty()) out.push_back("players: game needs at least one player");
  detail::check_ids(g.players, "players", out);
  detail::check_strategies(g.players, g.strategies, out);
  if (g.worlds.empty()) out.push_back("worlds: game needs at least one world");
  detail::check_ids(g.worlds, "worlds", out);
  if (!out.empty()) return out;

  if (g.partitions.size() != g.players.size()) {
    out.push_back("partitions: expected one partition per player, got " +
                  std::to_string(g.partitions.size()));
    return out;
  }
  for (std::size_t p = 0; p < g.players.size(); ++p) {
    const std::string field = "partitions[" + g.players[p] + "]";
    std::vector<WorldId> seen;
    for (std::size_t b = 0; b < g.partitions[p].size(); ++b) {
      const auto& block = g.partitions[p][b];
      if (block.empty()) out.push_back(field + "[" + std::to_string(b) + "]: empty block");
      for (const WorldId& w : block) {
        if (std::find(g.worlds.begin(), g.worlds.end(), w) == g.worlds.end())
          out.push_back(field + ": block member \"" + w + "\" is not a world of the game");
        else if (std::find(seen.begin(), seen.end(), w) != seen.end())
          out.push_back(field + ": world \"" + w + "\" appears in more than one block");
        else
          seen.push_back(w);
      }
    }
    for (const WorldId& w : g.worlds) {
      if (std::find(seen.begin(), seen.end(), w) == seen.end())
        out.push_back(field + ": world \"" + w + "\" is not covered by any block");
    }
  }

  const std::vector<int> dims = g.strategy_counts();
  if (g.payoffs.size() != g.players.size()) {
    out.push_back("payoffs: expected one tensor list per player, got " + std::to_string(g.payoffs.size()));
    return out;
  }
  for (std::size_t p = 0; p < g.players.size(); ++p) {
    if (g.payoffs[p].size() != g.worlds.size()) {
      out.push_back("payoffs[" + g.players[p] + "]: expected one tensor per world (" +
                    std::to_string(g.worlds.size()) + "), got " + std::to_string(g.payoffs[p].size()));
      continue;
    }
    for (std::size_t w = 0; w < g.worlds.size(); ++w)
      detail::check_tensor(g.payoffs[p][w], dims, "payoffs[" + g.players[p] + "][" + g.worlds[w] + "]",
                           out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Play/shape checks
// ---------------------------------------------------------------------------

namespace detail {

inline void require_play_shape(const std::vector<int>& dims, const Play& play,
                               const char* where) {
  if (static_cast<int>(play.by_player.size()) != static_cast<int>(dims.size()))
    throw std::invalid_argument(std::string(where) + ": play has " +
                                std::to_string(play.by_player.size()) + " strategies, game has " +
                                std::to_string(dims.size()) + " players");
  for (std::size_t p = 0; p < dims.size(); ++p) {
    if (play.by_player[p].size() != dims[p])
      throw std::invalid_argument(std::string(where) + ": strategy " + std::to_string(p) +
                                  " has dimension " + std::to_string(play.by_player[p].size()) +
                                  ", expected " + std::to_string(dims[p]));
  }
}

inline void require_kripke_play_shape(const KripkeGame& g, const KripkePlay& play,
                                      const char* where) {
  if (static_cast<int>(play.by_player.size()) != g.num_players())
    throw std::invalid_argument(std::string(where) + ": play has " +
                                std::to_string(play.by_player.size()) + " players, game has " +
                                std::to_string(g.num_players()));
  const std::vector<int> dims = g.strategy_counts();
  for (int p = 0; p < g.num_players(); ++p) {
    const auto& per_block = play.by_player[static_cast<std::size_t>(p)];
    if (static_cast<int>(per_block.size()) != g.num_blocks(p))
      throw std::invalid_argument(std::string(where) + ": player " +
                                  g.players[static_cast<std::size_t>(p)] + " has " +
                                  std::to_string(per_block.size()) + " class strategies, expected " +
                                  std::to_string(g.num_blocks(p)));
    for (const auto& ms : per_block) {
      if (ms.size() != dims[static_cast<std::size_t>(p)])
        throw std::invalid_argument(std::string(where) + ": class strategy of player " +
                                    g.players[static_cast<std::size_t>(p)] + " has dimension " +
                                    std::to_string(ms.size()) + ", expected " +
                                    std::to_string(dims[static_cast<std::size_t>(p)]));
    }
  }
}

// Multilinear expectation of `t` under independent per-axis distributions.
inline double expectation_rec(const Tensor& t, std::span<const MixedStrategy> strats, int axis,
                              std::int64_t offset, std::int64_t stride) {
  const int n = t.rank();
  if (axis == n) return t.flat(offset);
  const int d = t.dims()[static_cast<std::size_t>(axis)];
  const std::int64_t sub = stride / d;
  const MixedStrategy& s = strats[static_cast<std::size_t>(axis)];
  double acc = 0.0;
  for (int i = 0; i < d; ++i) {
    const double pi = s[i];
    if (pi != 0.0) acc += pi * expectation_rec(t, strats, axis + 1, offset + i * sub, sub);
  }
  return acc;
}

inline double expectation(const Tensor& t, std::span<const MixedStrategy> strats) {
  return expectation_rec(t, strats, 0, 0, t.size());
}

// g[i] = expectation of `t` with axis `own` pinned to pure strategy i and
// all other axes weighted by their mixed strategies.
inline void own_strategy_values_rec(const Tensor& t, std::span<const MixedStrategy> strats, int own,
                                    int axis, std::int64_t offset, std::int64_t stride, double weight,
                                    int own_idx, std::vector<double>& g) {
  const int n = t.rank();
  if (axis == n) {
    g[static_cast<std::size_t>(own_idx)] += weight * t.flat(offset);
    return;
  }
  const int d = t.dims()[static_cast<std::size_t>(axis)];
  const std::int64_t sub = stride / d;
  if (axis == own) {
    for (int i = 0; i < d; ++i)
      own_strategy_values_rec(t, strats, own, axis + 1, offset + i * sub, sub, weight, i, g);
  } else {
    const MixedStrategy& s = strats[static_cast<std::size_t>(axis)];
    for (int i = 0; i < d; ++i) {
      const double pi = s[i];
      if (pi != 0.0)
        own_strategy_values_rec(t, strats, own, axis + 1, offset + i * sub, sub, weight * pi, own_idx,
                                g);
    }
  }
}

inline std::vector<double> own_strategy_values(const Tensor& t, std::span<const MixedStrategy> strats,
                                               int own) {
  std::vector<double> g(static_cast<std::size_t>(t.dims()[static_cast<std::size_t>(own)]), 0.0);
  own_strategy_values_rec(t, strats, own, 0, 0, t.size(), 1.0, 0, g);
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Payoff evaluation
// ---------------------------------------------------------------------------

/**
 * Exact expected payoff of `player` under the independent product play:
 * the full multilinear sum over all pure profiles. Deterministic, no
 * sampling; cost is the product of all strategy-list sizes.
 */
inline double expected_payoff(const FiniteGame& game, const Play& play, const PlayerId& player) {
  detail::require_play_shape(game.strategy_counts(), play, "expected_payoff");
  const int p = game.player_index(player);
  return detail::expectation(game.payoffs[static_cast<std::size_t>(p)], play.by_player);
}

struct MinPayoff {
  double value = 0.0;
  // Component games attaining the minimum, within a 1e-12 tie band.
  std::vector<int> min_components;
};

/// Worst of the player's k expected payoffs, with the attaining components.
inline MinPayoff min_game_payoff_detail(const MinGame& game, const Play& play,
                                        const PlayerId& player) {
  detail::require_play_shape(game.strategy_counts(), play, "min_game_payoff");
  const int p = game.player_index(player);
  const auto& tensors = game.payoffs[static_cast<std::size_t>(p)];
  std::vector<double> values(tensors.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < tensors.size(); ++j) {
    values[j] = detail::expectation(tensors[j], play.by_player);
    best = std::min(best, values[j]);
  }
  MinPayoff out;
  out.value = best;
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] <= best + tol::kTie) out.min_components.push_back(static_cast<int>(j));
  return out;
}

inline double min_game_payoff(const MinGame& game, const Play& play, const PlayerId& player) {
  return min_game_payoff_detail(game, play, player).value;
}

/**
 * Play induced in a specific world: each player contributes the mixed
 * strategy of her knowledge class containing that world.
 */
inline Play specialize(const KripkeGame& game, const KripkePlay& kplay, const WorldId& world) {
  detail::require_kripke_play_shape(game, kplay, "specialize");
  const int w = game.world_index(world);
  Play play;
  play.by_player.reserve(static_cast<std::size_t>(game.num_players()));
  for (int p = 0; p < game.num_players(); ++p) {
    const int b = game.block_index(p, w);
    play.by_player.push_back(kplay.by_player[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)]);
  }
  return play;
}

struct WorstCasePayoff {
  double value = 0.0;
  // Worlds of the class attaining the minimum, within a 1e-12 tie band.
  std::vector<WorldId> min_worlds;
};

/**
 * Pessimistic payoff of `player` in `world`: the minimum, over all worlds v
 * in her knowledge class of `world`, of the expected payoff of the world-v
 * tensor under the play specialized to v. Constant across the class.
 */
inline WorstCasePayoff kripke_payoff_detail(const KripkeGame& game, const KripkePlay& kplay,
                                            const PlayerId& player, const WorldId& world) {
  detail::require_kripke_play_shape(game, kplay, "kripke_payoff");
  const int p = game.player_index(player);
  const int w = game.world_index(world);
  const auto& block =
      game.partitions[static_cast<std::size_t>(p)][static_cast<std::size_t>(game.block_index(p, w))];

  std::vector<double> values;
  values.reserve(block.size());
  double best = std::numeric_limits<double>::infinity();
  for (const WorldId& v : block) {
    const Play sp = specialize(game, kplay, v);
    const int vi = game.world_index(v);
    const double ev =
        detail::expectation(game.payoffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(vi)],
                            sp.by_player);
    values.push_back(ev);
    best = std::min(best, ev);
  }
  WorstCasePayoff out;
  out.value = best;
  for (std::size_t i = 0; i < block.size(); ++i)
    if (values[i] <= best + tol::kTie) out.min_worlds.push_back(block[i]);
  return out;
}

inline double kripke_payoff(const KripkeGame& game, const KripkePlay& kplay, const PlayerId& player,
                            const WorldId& world) {
  return kripke_payoff_detail(game, kplay, player, world).value;
}

// ---------------------------------------------------------------------------
// Small conveniences shared by the solver and tests
// ---------------------------------------------------------------------------

inline Play uniform_play(const std::vector<int>& dims) {
  Play play;
  play.by_player.reserve(dims.size());
  for (int d : dims) play.by_player.push_back(MixedStrategy::uniform(d));
  return play;
}

inline Play pure_play(const std::vector<int>& dims, const std::vector<int>& profile) {
  Play play;
  play.by_player.reserve(dims.size());
  for (std::size_t p = 0; p < dims.size(); ++p)
    play.by_player.push_back(MixedStrategy::pure(dims[p], profile[p]));
  return play;
}

/// View of a finite game as a degenerate min-1-game.
inline MinGame as_min_game(const FiniteGame& g) {
  MinGame m;
  m.players = g.players;
  m.strategies = g.strategies;
  m.k = 1;
  m.payoffs.reserve(g.payoffs.size());
  for (const Tensor& t : g.payoffs) m.payoffs.push_back({t});
  m.declared_zero_sum = g.declared_zero_sum;
  return m;
}

}  // namespace epigame

#endif  // EPIGAME_CORE_HPP
