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

#ifndef EPIGAME_FIXTURES_HPP
#define EPIGAME_FIXTURES_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "epigame/core.hpp"
#include "epigame/io.hpp"

namespace epigame {
namespace fixtures {

// Built-in example games, shipped so the CLI and the acceptance tests need
// no external files.

/**
 * "section2": two-player zero-sum play on three possible worlds. Row can
 * tell world 3 apart from {1,2}; Column can tell world 1 apart from {2,3}.
 * World payoff matrices (to Row): matching pennies, then a coordination
 * matrix, then a matrix that rewards Row's second strategy.
 */
inline KripkeGame section2_game() {
  KripkeGame g;
  g.players = {"Row", "Column"};
  g.strategies = {{"1", "2"}, {"1", "2"}};
  g.worlds = {"1", "2", "3"};
  g.partitions = {{{"1", "2"}, {"3"}}, {{"1"}, {"2", "3"}}};
  const Tensor u1({2, 2}, {-1, 1, 1, -1});
  const Tensor u2({2, 2}, {2, 0, 0, 1});
  const Tensor u3({2, 2}, {1, -1, 0, 2});
  g.payoffs.push_back({u1, u2, u3});
  std::vector<Tensor> neg;
  for (const Tensor& t : g.payoffs.front()) {
    Tensor n(t.dims());
    for (std::int64_t i = 0; i < t.size(); ++i) n.flat(i) = -t.flat(i);
    neg.push_back(std::move(n));
  }
  g.payoffs.push_back(std::move(neg));
  g.declared_zero_sum = true;
  return g;
}

/// Equilibrium play for section2: Row mixes evenly on {1,2} and commits to
/// her second strategy on {3}; Column mixes evenly on {1} and plays the
/// first column with probability 0.6 on {2,3}.
inline KripkePlay section2_equilibrium() {
  KripkePlay play;
  play.by_player.push_back(
      {MixedStrategy({0.5, 0.5}), MixedStrategy({0.0, 1.0})});
  play.by_player.push_back(
      {MixedStrategy({0.5, 0.5}), MixedStrategy({0.6, 0.4})});
  return play;
}

/// "mingame-sec4": two zero-sum 2x2 games played in parallel; each player's
/// payoff is her worse expected payoff of the two.
inline MinGame mingame_sec4() {
  MinGame g;
  g.players = {"Row", "Column"};
  g.strategies = {{"1", "2"}, {"1", "2"}};
  g.k = 2;
  const Tensor u1({2, 2}, {-1, 2, 1, -3});
  const Tensor u2({2, 2}, {2, -4, 0, 5});
  g.payoffs.push_back({u1, u2});
  std::vector<Tensor> neg;
  for (const Tensor& t : g.payoffs.front()) {
    Tensor n(t.dims());
    for (std::int64_t i = 0; i < t.size(); ++i) n.flat(i) = -t.flat(i);
    neg.push_back(std::move(n));
  }
  g.payoffs.push_back(std::move(neg));
  g.declared_zero_sum = true;
  return g;
}

/// "one-player-remark": a single player, two strategies, two component
/// payoffs (1,2) and (3,0). The unique optimum mixes evenly for value 3/2 -
/// strictly better than any pure strategy, which no one-component game can
/// reproduce.
inline MinGame one_player_remark() {
  MinGame g;
  g.players = {"P1"};
  g.strategies = {{"s1", "s2"}};
  g.k = 2;
  g.payoffs.push_back({Tensor({2}, {1, 2}), Tensor({2}, {3, 0})});
  return g;
}

inline std::vector<std::string> names() {
  return {"section2", "section2-play", "mingame-sec4", "one-player-remark"};
}

/// Serialized document for a fixture name ("section2-play" is the bundled
/// equilibrium play for "section2"; the rest are game documents).
inline std::string document(const std::string& name) {
  if (name == "section2") return serialize_game(GameDocument{1, section2_game()});
  if (name == "section2-play") return serialize_kripke_play(section2_equilibrium(), section2_game());
  if (name == "mingame-sec4") return serialize_game(GameDocument{1, mingame_sec4()});
  if (name == "one-player-remark") return serialize_game(GameDocument{1, one_player_remark()});
  throw std::invalid_argument("unknown fixture \"" + name +
                              "\" (expected section2, section2-play, mingame-sec4, or one-player-remark)");
}

}  // namespace fixtures
}  // namespace epigame

#endif  // EPIGAME_FIXTURES_HPP
