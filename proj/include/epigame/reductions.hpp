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

#ifndef EPIGAME_REDUCTIONS_HPP
#define EPIGAME_REDUCTIONS_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "epigame/core.hpp"

namespace epigame {

/**
 * Penalty level A used to pad strategy sets (-A) and out-of-class worlds
 * (+A): one more than the largest payoff magnitude anywhere in the source
 * game, so a padded branch can never be attractive and never attains a
 * worst-case minimum.
 */
struct PenaltyConstant {
  double value = 1.0;
};

inline PenaltyConstant penalty_constant(const KripkeGame& game) {
  double m = 0.0;
  for (const auto& per_world : game.payoffs)
    for (const Tensor& t : per_world) m = std::max(m, t.max_abs());
  return PenaltyConstant{1.0 + m};
}

inline PenaltyConstant penalty_constant(const MinGame& game) {
  double m = 0.0;
  for (const auto& per_component : game.payoffs)
    for (const Tensor& t : per_component) m = std::max(m, t.max_abs());
  return PenaltyConstant{1.0 + m};
}

// ---------------------------------------------------------------------------
// Strategy-set unification
// ---------------------------------------------------------------------------

/**
 * Kripke-like game whose strategy lists may differ per world. Tensor for
 * (player, world) is shaped by that world's own strategy lists.
 */
struct RawKripkeGame {
  std::vector<PlayerId> players;
  std::vector<WorldId> worlds;
  std::vector<std::vector<std::vector<WorldId>>> partitions;       // as in KripkeGame
  std::vector<std::vector<std::vector<std::string>>> strategies;   // [player][world]
  std::vector<std::vector<Tensor>> payoffs;                        // [player][world]
};

inline PenaltyConstant penalty_constant(const RawKripkeGame& game) {
  double m = 0.0;
  for (const auto& per_world : game.payoffs)
    for (const Tensor& t : per_world) m = std::max(m, t.max_abs());
  return PenaltyConstant{1.0 + m};
}

/**
 * Rebuilds a per-world-strategy game on unified strategy sets. Each player's
 * unified list is the union of her per-world lists in first-appearance order
 * (world order, then list order). In world w, a profile where the evaluated
 * player plays a strategy absent from her original world-w list pays her -A;
 * profiles present in world w are copied; remaining entries (own strategy
 * present, some opponent's absent) are 0, and are unreachable by any play
 * that avoids padded strategies.
 */
inline KripkeGame unify_strategy_sets(const RawKripkeGame& raw) {
  const int np = static_cast<int>(raw.players.size());
  const int nw = static_cast<int>(raw.worlds.size());
  if (np == 0) throw std::invalid_argument("unify_strategy_sets: game needs players");
  if (nw == 0) throw std::invalid_argument("unify_strategy_sets: game needs worlds");

  KripkeGame out;
  out.players = raw.players;
  out.worlds = raw.worlds;
  out.partitions = raw.partitions;

  out.strategies.assign(static_cast<std::size_t>(np), {});
  for (int p = 0; p < np; ++p) {
    if (static_cast<int>(raw.strategies[static_cast<std::size_t>(p)].size()) != nw)
      throw std::invalid_argument("unify_strategy_sets: strategies[" +
                                  raw.players[static_cast<std::size_t>(p)] +
                                  "] needs one list per world");
    auto& unified = out.strategies[static_cast<std::size_t>(p)];
    for (int w = 0; w < nw; ++w) {
      const auto& list = raw.strategies[static_cast<std::size_t>(p)][static_cast<std::size_t>(w)];
      if (list.empty())
        throw std::invalid_argument("unify_strategy_sets: empty strategy list for player " +
                                    raw.players[static_cast<std::size_t>(p)] + " in world " +
                                    raw.worlds[static_cast<std::size_t>(w)]);
      for (const std::string& s : list)
        if (std::find(unified.begin(), unified.end(), s) == unified.end()) unified.push_back(s);
    }
  }

  const double A = penalty_constant(raw).value;
  const std::vector<int> dims = out.strategy_counts();

  out.payoffs.assign(static_cast<std::size_t>(np), {});
  for (int p = 0; p < np; ++p) {
    auto& per_world = out.payoffs[static_cast<std::size_t>(p)];
    per_world.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
      // unified strategy index -> index in the world-w list, or -1 if absent
      std::vector<std::vector<int>> local(static_cast<std::size_t>(np));
      for (int q = 0; q < np; ++q) {
        const auto& wlist = raw.strategies[static_cast<std::size_t>(q)][static_cast<std::size_t>(w)];
        auto& map = local[static_cast<std::size_t>(q)];
        for (const std::string& s : out.strategies[static_cast<std::size_t>(q)]) {
          const auto it = std::find(wlist.begin(), wlist.end(), s);
          map.push_back(it == wlist.end() ? -1 : static_cast<int>(it - wlist.begin()));
        }
      }

      const Tensor& src = raw.payoffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(w)];
      Tensor t(dims);
      std::vector<int> idx(static_cast<std::size_t>(np), 0);
      std::vector<int> src_idx(static_cast<std::size_t>(np), 0);
      do {
        bool own_absent = false;
        bool any_absent = false;
        for (int q = 0; q < np; ++q) {
          const int li = local[static_cast<std::size_t>(q)][static_cast<std::size_t>(
              idx[static_cast<std::size_t>(q)])];
          if (li < 0) {
            any_absent = true;
            if (q == p) own_absent = true;
          } else {
            src_idx[static_cast<std::size_t>(q)] = li;
          }
        }
        if (own_absent)
          t.at(idx) = -A;
        else if (!any_absent)
          t.at(idx) = src.at(src_idx);
        // else: leave at 0
      } while (t.next_index(idx));
      per_world.push_back(std::move(t));
    }
  }

  const auto violations = validate(out);
  if (!violations.empty())
    throw std::invalid_argument("unify_strategy_sets: result invalid: " + violations.front());
  return out;
}

// ---------------------------------------------------------------------------
// Kripke game -> min-game (class-player splitting)
// ---------------------------------------------------------------------------

/**
 * Result of splitting every player into one player per knowledge class.
 *
 * The min-game has one player per (source player, partition block) pair and
 * one component tensor per source world (k = |W|, component j is world
 * world_order[j]). A class player's world-v tensor is +A when v lies outside
 * her block; otherwise it is the source world-v tensor read through the
 * classes active at v, i.e. its coordinates are those of the class players
 * (q, block of q containing v). Coordinates of other class players are
 * irrelevant (the tensor is constant along them).
 */
struct KripkeToMinMap {
  MinGame min_game;
  // min-game player index -> (source player index, block index)
  std::vector<std::pair<int, int>> origin;
  // [source player index][block index] -> min-game player index
  std::vector<std::vector<int>> class_player;
  std::vector<WorldId> world_order;
  // [world index][source player index] -> the min-game axis carrying that
  // player's strategy at that world. The world-v tensor of any class player
  // is constant along every other axis; the tensors are materialized in full
  // anyway for a uniform evaluation path, this records the real dependencies.
  std::vector<std::vector<int>> active_axis;

  int class_player_index(const KripkeGame& source, const PlayerId& player, int block) const {
    const int p = source.player_index(player);
    return class_player[static_cast<std::size_t>(p)][static_cast<std::size_t>(block)];
  }
};

namespace detail {

inline std::string class_player_name(const PlayerId& player, const std::vector<WorldId>& block) {
  std::vector<WorldId> sorted = block;
  std::sort(sorted.begin(), sorted.end());
  std::string name = player + "@";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) name += ",";
    name += sorted[i];
  }
  return name;
}

}  // namespace detail

inline KripkeToMinMap kripke_to_min(const KripkeGame& game) {
  {
    const auto violations = validate(game);
    if (!violations.empty())
      throw std::invalid_argument("kripke_to_min: invalid game: " + violations.front());
  }
  const int np = game.num_players();
  const int nw = game.num_worlds();
  const double A = penalty_constant(game).value;

  KripkeToMinMap map;
  map.world_order = game.worlds;
  map.class_player.assign(static_cast<std::size_t>(np), {});

  MinGame& mg = map.min_game;
  mg.k = nw;
  for (int p = 0; p < np; ++p) {
    const auto& part = game.partitions[static_cast<std::size_t>(p)];
    for (int b = 0; b < static_cast<int>(part.size()); ++b) {
      const std::string name =
          detail::class_player_name(game.players[static_cast<std::size_t>(p)],
                                    part[static_cast<std::size_t>(b)]);
      if (std::find(mg.players.begin(), mg.players.end(), name) != mg.players.end())
        throw std::invalid_argument("kripke_to_min: class-player name collision: \"" + name + "\"");
      map.class_player[static_cast<std::size_t>(p)].push_back(static_cast<int>(mg.players.size()));
      map.origin.emplace_back(p, b);
      mg.players.push_back(name);
      mg.strategies.push_back(game.strategies[static_cast<std::size_t>(p)]);
    }
  }

  const int nc = static_cast<int>(mg.players.size());
  const std::vector<int> dims = mg.strategy_counts();

  map.active_axis.assign(static_cast<std::size_t>(nw),
                         std::vector<int>(static_cast<std::size_t>(np)));
  for (int v = 0; v < nw; ++v)
    for (int q = 0; q < np; ++q)
      map.active_axis[static_cast<std::size_t>(v)][static_cast<std::size_t>(q)] =
          map.class_player[static_cast<std::size_t>(q)][static_cast<std::size_t>(
              game.block_index(q, v))];

  mg.payoffs.assign(static_cast<std::size_t>(nc), {});
  std::vector<bool> in_block(static_cast<std::size_t>(nw));
  std::vector<int> src_idx(static_cast<std::size_t>(np));
  for (int cp = 0; cp < nc; ++cp) {
    const auto [p, b] = map.origin[static_cast<std::size_t>(cp)];
    for (int v = 0; v < nw; ++v)
      in_block[static_cast<std::size_t>(v)] = game.block_index(p, v) == b;

    auto& per_world = mg.payoffs[static_cast<std::size_t>(cp)];
    per_world.reserve(static_cast<std::size_t>(nw));
    for (int v = 0; v < nw; ++v) {
      if (!in_block[static_cast<std::size_t>(v)]) {
        per_world.emplace_back(dims, A);
        continue;
      }
      const Tensor& src = game.payoffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)];
      const auto& axes = map.active_axis[static_cast<std::size_t>(v)];
      Tensor t(dims);
      std::vector<int> idx(static_cast<std::size_t>(nc), 0);
      do {
        for (int q = 0; q < np; ++q)
          src_idx[static_cast<std::size_t>(q)] =
              idx[static_cast<std::size_t>(axes[static_cast<std::size_t>(q)])];
        t.at(idx) = src.at(src_idx);
      } while (t.next_index(idx));
      per_world.push_back(std::move(t));
    }
  }
  return map;
}

/// Kripke play whose class strategy for (p, block) is the min-game strategy
/// of the corresponding class player.
inline KripkePlay lift_play(const KripkeToMinMap& map, const Play& sigma) {
  if (sigma.by_player.size() != map.min_game.players.size())
    throw std::invalid_argument("lift_play: play does not match the min-game shape");
  const std::vector<int> dims = map.min_game.strategy_counts();
  for (std::size_t c = 0; c < sigma.by_player.size(); ++c)
    if (sigma.by_player[c].size() != dims[c])
      throw std::invalid_argument("lift_play: strategy dimension mismatch for class player \"" +
                                  map.min_game.players[c] + "\"");
  KripkePlay out;
  out.by_player.assign(map.class_player.size(), {});
  for (std::size_t p = 0; p < map.class_player.size(); ++p)
    for (int cp : map.class_player[p])
      out.by_player[p].push_back(sigma.by_player[static_cast<std::size_t>(cp)]);
  return out;
}

/// Inverse of lift_play: reads the class strategies back into min-game
/// player order. Exact round trip (the relabeling is a bijection).
inline Play flatten_play(const KripkeToMinMap& map, const KripkePlay& kplay) {
  if (kplay.by_player.size() != map.class_player.size())
    throw std::invalid_argument("flatten_play: play does not match the source game shape");
  Play out;
  out.by_player.reserve(map.origin.size());
  for (const auto& [p, b] : map.origin) {
    const auto& per_block = kplay.by_player[static_cast<std::size_t>(p)];
    if (b >= static_cast<int>(per_block.size()))
      throw std::invalid_argument("flatten_play: missing class strategy");
    out.by_player.push_back(per_block[static_cast<std::size_t>(b)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Min-game -> finite game (world-chooser opponents)
// ---------------------------------------------------------------------------

/**
 * Finite game on the original players plus one adversarial world chooser
 * per player. Chooser of p picks a component index (strategies "w0".."w{k-1}");
 * p is paid by the chosen component, the chooser receives the negation, and
 * both payoffs ignore every other chooser's pick.
 */
struct WorldChooserMap {
  FiniteGame finite_game;
  std::vector<int> chooser_of;  // source player index -> augmented player index

  int num_source_players() const { return static_cast<int>(chooser_of.size()); }
};

inline WorldChooserMap min_to_finite(const MinGame& game) {
  {
    const auto violations = validate(game);
    if (!violations.empty())
      throw std::invalid_argument("min_to_finite: invalid game: " + violations.front());
  }
  const int np = game.num_players();
  const int k = game.k;

  WorldChooserMap map;
  FiniteGame& fg = map.finite_game;
  fg.players = game.players;
  fg.strategies = game.strategies;
  for (int p = 0; p < np; ++p) {
    const std::string chooser = game.players[static_cast<std::size_t>(p)] + "^hat";
    if (std::find(fg.players.begin(), fg.players.end(), chooser) != fg.players.end())
      throw std::invalid_argument("min_to_finite: chooser name collision: \"" + chooser + "\"");
    map.chooser_of.push_back(np + p);
    fg.players.push_back(chooser);
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) labels.push_back("w" + std::to_string(j));
    fg.strategies.push_back(std::move(labels));
  }

  const std::vector<int> dims = fg.strategy_counts();
  std::vector<int> src_idx(static_cast<std::size_t>(np));
  fg.payoffs.assign(static_cast<std::size_t>(2 * np), Tensor());
  for (int p = 0; p < np; ++p) {
    Tensor t(dims);
    const int chooser_axis = map.chooser_of[static_cast<std::size_t>(p)];
    std::vector<int> idx(dims.size(), 0);
    do {
      for (int q = 0; q < np; ++q) src_idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q)];
      const int j = idx[static_cast<std::size_t>(chooser_axis)];
      t.at(idx) = game.payoffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)].at(src_idx);
    } while (t.next_index(idx));

    Tensor neg(dims);
    for (std::int64_t i = 0; i < t.size(); ++i) neg.flat(i) = -t.flat(i);
    fg.payoffs[static_cast<std::size_t>(p)] = std::move(t);
    fg.payoffs[static_cast<std::size_t>(chooser_axis)] = std::move(neg);
  }
  return map;
}

/// Restriction of an augmented-game play to the original players.
inline Play lowered_play(const WorldChooserMap& map, const Play& sigma) {
  const int np = map.num_source_players();
  if (static_cast<int>(sigma.by_player.size()) != 2 * np)
    throw std::invalid_argument("lowered_play: play does not match the augmented game shape");
  detail::require_play_shape(map.finite_game.strategy_counts(), sigma, "lowered_play");
  Play out;
  out.by_player.assign(sigma.by_player.begin(), sigma.by_player.begin() + np);
  return out;
}

}  // namespace epigame

#endif  // EPIGAME_REDUCTIONS_HPP
