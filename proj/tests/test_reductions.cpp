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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "epigame/fixtures.hpp"
#include "epigame/reductions.hpp"
#include "test_support.hpp"

using namespace epigame;

TEST_SUITE_BEGIN("reductions");

TEST_CASE("penalty constant is one more than the largest magnitude") {
  CHECK(penalty_constant(fixtures::section2_game()).value == 3.0);

  MinGame zeros;
  zeros.players = {"p"};
  zeros.strategies = {{"a", "b"}};
  zeros.k = 1;
  zeros.payoffs = {{Tensor({2})}};
  CHECK(penalty_constant(zeros).value == 1.0);

  MinGame big = zeros;
  big.payoffs = {{Tensor({2}, {1e6, 0.0})}};
  CHECK(penalty_constant(big).value == 1e6 + 1.0);
}

TEST_CASE("unifying identical per-world lists changes nothing") {
  const KripkeGame src = fixtures::section2_game();
  RawKripkeGame raw;
  raw.players = src.players;
  raw.worlds = src.worlds;
  raw.partitions = src.partitions;
  for (int p = 0; p < src.num_players(); ++p) {
    raw.strategies.push_back(std::vector<std::vector<std::string>>(
        src.worlds.size(), src.strategies[static_cast<std::size_t>(p)]));
    raw.payoffs.push_back(src.payoffs[static_cast<std::size_t>(p)]);
  }
  const KripkeGame unified = unify_strategy_sets(raw);
  CHECK(unified.strategies == src.strategies);
  for (int p = 0; p < src.num_players(); ++p)
    for (std::size_t w = 0; w < src.worlds.size(); ++w)
      CHECK(unified.payoffs[static_cast<std::size_t>(p)][w] ==
            src.payoffs[static_cast<std::size_t>(p)][w]);
}

TEST_CASE("unifying disjoint per-world strategies pads with -A") {
  RawKripkeGame raw;
  raw.players = {"Row", "Col"};
  raw.worlds = {"1", "2"};
  raw.partitions = {{{"1", "2"}}, {{"1"}, {"2"}}};
  // Row has strategy a in world 1 only, b in world 2 only; Col always has c
  raw.strategies = {{{"a"}, {"b"}}, {{"c"}, {"c"}}};
  raw.payoffs = {{Tensor({1, 1}, {2.0}), Tensor({1, 1}, {-1.0})},
                 {Tensor({1, 1}, {-2.0}), Tensor({1, 1}, {1.0})}};

  const KripkeGame unified = unify_strategy_sets(raw);
  CHECK(unified.strategies[0] == std::vector<std::string>{"a", "b"});
  CHECK(validate(unified).empty());

  const double A = penalty_constant(raw).value;
  CHECK(A == 3.0);
  // world 1: Row playing b is padded with -A for Row
  const int idx_b[2] = {1, 0};
  const int idx_a[2] = {0, 0};
  CHECK(unified.payoffs[0][0].at(idx_b) == -A);
  CHECK(unified.payoffs[0][0].at(idx_a) == 2.0);
  // world 2: Row playing a is the padded one
  CHECK(unified.payoffs[0][1].at(idx_a) == -A);
  CHECK(unified.payoffs[0][1].at(idx_b) == -1.0);
  // Col's tensors copy through where her strategy exists and Row's does too
  CHECK(unified.payoffs[1][0].at(idx_a) == -2.0);
  // Col's entry where Row plays a padded strategy is neutral
  CHECK(unified.payoffs[1][0].at(idx_b) == 0.0);
}

TEST_CASE("plays avoiding padded strategies keep their raw-game payoffs") {
  // two worlds, Row has {a} or {a,b} depending on the world, Col has {c,d}
  RawKripkeGame raw;
  raw.players = {"Row", "Col"};
  raw.worlds = {"1", "2"};
  raw.partitions = {{{"1", "2"}}, {{"1", "2"}}};
  raw.strategies = {{{"a"}, {"a", "b"}}, {{"c", "d"}, {"c", "d"}}};
  Rng rng(11);
  raw.payoffs = {{testutil::random_tensor(rng, {1, 2}), testutil::random_tensor(rng, {2, 2})},
                 {testutil::random_tensor(rng, {1, 2}), testutil::random_tensor(rng, {2, 2})}};

  const KripkeGame unified = unify_strategy_sets(raw);
  // Row's unified list is {a, b}; zero mass on b in world-1 classes
  KripkePlay play;
  play.by_player.push_back({MixedStrategy({1.0, 0.0})});
  const std::vector<double> col_mix = rng.next_simplex(2);
  play.by_player.push_back({MixedStrategy(col_mix)});

  // expected payoff in world 1 must equal the raw 1x2 game's value
  const Play sp = specialize(unified, play, "1");
  double raw_row = 0.0, raw_col = 0.0;
  for (int j = 0; j < 2; ++j) {
    const int idx[2] = {0, j};
    raw_row += col_mix[static_cast<std::size_t>(j)] * raw.payoffs[0][0].at(idx);
    raw_col += col_mix[static_cast<std::size_t>(j)] * raw.payoffs[1][0].at(idx);
  }
  const double got_row = detail::expectation(unified.payoffs[0][0], sp.by_player);
  const double got_col = detail::expectation(unified.payoffs[1][0], sp.by_player);
  CHECK(got_row == doctest::Approx(raw_row).epsilon(1e-12));
  CHECK(got_col == doctest::Approx(raw_col).epsilon(1e-12));
}

TEST_CASE("unify rejects an empty per-world strategy list") {
  RawKripkeGame raw;
  raw.players = {"p"};
  raw.worlds = {"1", "2"};
  raw.partitions = {{{"1", "2"}}};
  raw.strategies = {{{"a"}, {}}};  // no strategies in world 2
  raw.payoffs = {{Tensor({1}, {0.0}), Tensor({1}, {0.0})}};
  CHECK_THROWS_AS(unify_strategy_sets(raw), std::invalid_argument);
}

TEST_CASE("class-player split of the bundled kripke game") {
  const KripkeGame g = fixtures::section2_game();
  const KripkeToMinMap map = kripke_to_min(g);

  CHECK(map.min_game.k == 3);
  REQUIRE(map.min_game.players.size() == 4);
  CHECK(map.min_game.players[0] == "Row@1,2");
  CHECK(map.min_game.players[1] == "Row@3");
  CHECK(map.min_game.players[2] == "Column@1");
  CHECK(map.min_game.players[3] == "Column@2,3");
  for (const auto& strategies : map.min_game.strategies) CHECK(strategies.size() == 2);
  CHECK(validate(map.min_game).empty());
  CHECK(map.world_order == g.worlds);

  // recorded dependency structure: which axis matters to whom, per world
  REQUIRE(map.active_axis.size() == 3);
  CHECK(map.active_axis[0] == std::vector<int>{0, 2});  // Row@1,2 and Column@1
  CHECK(map.active_axis[1] == std::vector<int>{0, 3});  // Row@1,2 and Column@2,3
  CHECK(map.active_axis[2] == std::vector<int>{1, 3});  // Row@3 and Column@2,3
}

TEST_CASE("one-world game splits into a payoff-identical min-1-game") {
  Rng rng(7);
  const KripkeGame g = testutil::random_kripke_game(rng, 3, 1, 3);
  const KripkeToMinMap map = kripke_to_min(g);
  CHECK(map.min_game.k == 1);
  CHECK(map.min_game.players.size() == g.players.size());
  for (int p = 0; p < g.num_players(); ++p)
    CHECK(map.min_game.payoffs[static_cast<std::size_t>(p)][0] ==
          g.payoffs[static_cast<std::size_t>(p)][0]);
}

TEST_CASE("identity partitions give +A outside each singleton block") {
  KripkeGame g;
  g.players = {"p"};
  g.strategies = {{"a", "b"}};
  g.worlds = {"u", "v", "w"};
  g.partitions = {{{"u"}, {"v"}, {"w"}}};
  Rng rng(13);
  g.payoffs = {{testutil::random_tensor(rng, {2}), testutil::random_tensor(rng, {2}),
                testutil::random_tensor(rng, {2})}};
  const double A = penalty_constant(g).value;

  const KripkeToMinMap map = kripke_to_min(g);
  REQUIRE(map.min_game.players.size() == 3);
  for (int cp = 0; cp < 3; ++cp) {
    for (int v = 0; v < 3; ++v) {
      const Tensor& t =
          map.min_game.payoffs[static_cast<std::size_t>(cp)][static_cast<std::size_t>(v)];
      if (v == cp) {
        for (std::int64_t i = 0; i < t.size(); ++i) CHECK(t.flat(i) != A);
      } else {
        for (std::int64_t i = 0; i < t.size(); ++i) CHECK(t.flat(i) == A);
      }
    }
  }
}

TEST_CASE("payoff identity: worst-case payoff equals the class player's min payoff") {
  Rng rng(20260808);
  int checked = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const KripkeGame g = testutil::random_kripke_game(rng, 3, 3, 3);
    const KripkeToMinMap map = kripke_to_min(g);
    const std::vector<int> dims = map.min_game.strategy_counts();
    for (int rep = 0; rep < 3; ++rep) {
      const Play sigma = testutil::random_play(rng, dims);
      const KripkePlay lifted = lift_play(map, sigma);
      for (int p = 0; p < g.num_players(); ++p) {
        for (int w = 0; w < g.num_worlds(); ++w) {
          const int cp = map.class_player[static_cast<std::size_t>(p)][static_cast<std::size_t>(
              g.block_index(p, w))];
          const double kripke = kripke_payoff(g, lifted, g.players[static_cast<std::size_t>(p)],
                                              g.worlds[static_cast<std::size_t>(w)]);
          const double min_side = min_game_payoff(
              map.min_game, sigma, map.min_game.players[static_cast<std::size_t>(cp)]);
          CHECK(std::abs(kripke - min_side) <= 1e-12);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("penalty branches never attain the minimum") {
  Rng rng(555);
  for (int iter = 0; iter < 60; ++iter) {
    const KripkeGame g = testutil::random_kripke_game(rng, 3, 3, 3);
    const KripkeToMinMap map = kripke_to_min(g);
    const double A = penalty_constant(g).value;
    const Play sigma = testutil::random_play(rng, map.min_game.strategy_counts());
    for (std::size_t cp = 0; cp < map.min_game.players.size(); ++cp) {
      const auto [p, b] = map.origin[cp];
      const MinPayoff mp = min_game_payoff_detail(map.min_game, sigma, map.min_game.players[cp]);
      CHECK(mp.value < A);
      // every attaining component index is a world of the block
      const auto& block = g.partitions[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)];
      for (int j : mp.min_components) {
        const WorldId& wj = map.world_order[static_cast<std::size_t>(j)];
        CHECK(std::find(block.begin(), block.end(), wj) != block.end());
      }
    }
  }
}

TEST_CASE("lift and flatten are inverse relabelings") {
  Rng rng(321);
  for (int iter = 0; iter < 30; ++iter) {
    const KripkeGame g = testutil::random_kripke_game(rng);
    const KripkeToMinMap map = kripke_to_min(g);
    const Play sigma = testutil::random_play(rng, map.min_game.strategy_counts());
    const Play back = flatten_play(map, lift_play(map, sigma));
    REQUIRE(back.by_player.size() == sigma.by_player.size());
    for (std::size_t c = 0; c < sigma.by_player.size(); ++c)
      CHECK(back.by_player[c] == sigma.by_player[c]);
  }

  // uniform min-game play lifts to all-uniform class strategies
  const KripkeGame g = fixtures::section2_game();
  const KripkeToMinMap map = kripke_to_min(g);
  const KripkePlay lifted = lift_play(map, uniform_play(map.min_game.strategy_counts()));
  for (const auto& per_block : lifted.by_player)
    for (const auto& ms : per_block) CHECK(ms == MixedStrategy::uniform(2));
}

TEST_CASE("world-chooser construction for the parallel-matrices game") {
  const MinGame g = fixtures::mingame_sec4();
  const WorldChooserMap map = min_to_finite(g);
  REQUIRE(map.finite_game.players.size() == 4);
  CHECK(map.finite_game.players[2] == "Row^hat");
  CHECK(map.finite_game.players[3] == "Column^hat");
  CHECK(map.finite_game.strategies[2] == std::vector<std::string>{"w0", "w1"});
  CHECK(validate(map.finite_game).empty());

  // chooser payoffs are the negation of their charge's, pointwise
  for (int p = 0; p < 2; ++p) {
    const Tensor& own = map.finite_game.payoffs[static_cast<std::size_t>(p)];
    const Tensor& hat = map.finite_game.payoffs[static_cast<std::size_t>(
        map.chooser_of[static_cast<std::size_t>(p)])];
    for (std::int64_t i = 0; i < own.size(); ++i) CHECK(hat.flat(i) == -own.flat(i));
  }
}

TEST_CASE("one-player game with a chooser: even mix is worth 3/2 whatever the chooser does") {
  const MinGame g = fixtures::one_player_remark();
  const WorldChooserMap map = min_to_finite(g);
  REQUIRE(map.finite_game.players.size() == 2);
  // at the hedged optimum both components pay 3/2, so the chooser is
  // indifferent and the player's augmented payoff is 3/2 for every chooser mix
  for (double w0 : {0.0, 0.25, 0.5, 1.0}) {
    Play aug;
    aug.by_player = {MixedStrategy({0.5, 0.5}), MixedStrategy({w0, 1.0 - w0})};
    CHECK(expected_payoff(map.finite_game, aug, "P1") == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(expected_payoff(map.finite_game, aug, "P1^hat") ==
          doctest::Approx(-1.5).epsilon(1e-12));
  }
}

TEST_CASE("k=1 chooser games restrict to the original payoffs") {
  Rng rng(88);
  const MinGame g = testutil::random_min_game(rng, 3, 3, 1);
  const WorldChooserMap map = min_to_finite(g);
  const int np = g.num_players();
  for (int p = 0; p < np; ++p)
    CHECK(map.finite_game.strategies[static_cast<std::size_t>(np + p)].size() == 1);

  for (int rep = 0; rep < 10; ++rep) {
    Play aug = testutil::random_play(rng, map.finite_game.strategy_counts());
    const Play low = lowered_play(map, aug);
    for (int p = 0; p < np; ++p) {
      const PlayerId& id = g.players[static_cast<std::size_t>(p)];
      CHECK(expected_payoff(map.finite_game, aug, id) ==
            doctest::Approx(min_game_payoff(g, low, id)).epsilon(1e-12));
    }
  }
}

TEST_CASE("chooser best response value is the negated minimum") {
  Rng rng(999);
  for (int iter = 0; iter < 40; ++iter) {
    const MinGame g = testutil::random_min_game(rng);
    const WorldChooserMap map = min_to_finite(g);
    const int np = g.num_players();
    Play aug = testutil::random_play(rng, map.finite_game.strategy_counts());
    const Play low = lowered_play(map, aug);

    for (int p = 0; p < np; ++p) {
      // enumerate the chooser's pure strategies
      double best_chooser = -1e300;
      for (int j = 0; j < g.k; ++j) {
        Play probe = aug;
        probe.by_player[static_cast<std::size_t>(map.chooser_of[static_cast<std::size_t>(p)])] =
            MixedStrategy::pure(g.k, j);
        best_chooser =
            std::max(best_chooser,
                     expected_payoff(map.finite_game, probe,
                                     map.finite_game.players[static_cast<std::size_t>(
                                         map.chooser_of[static_cast<std::size_t>(p)])]));
      }
      const double min_payoff = min_game_payoff(g, low, g.players[static_cast<std::size_t>(p)]);
      CHECK(best_chooser == doctest::Approx(-min_payoff).epsilon(1e-9));
    }
  }
}

TEST_CASE("lowered play never beats the augmented play") {
  Rng rng(20401);
  int equality_checks = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const MinGame g = testutil::random_min_game(rng);
    const WorldChooserMap map = min_to_finite(g);
    Play aug = testutil::random_play(rng, map.finite_game.strategy_counts());
    const Play low = lowered_play(map, aug);

    for (int p = 0; p < g.num_players(); ++p) {
      const PlayerId& id = g.players[static_cast<std::size_t>(p)];
      const double lowered = min_game_payoff(g, low, id);
      const double augmented = expected_payoff(map.finite_game, aug, id);
      CHECK(lowered <= augmented + 1e-12);
    }

    // with every chooser at a pure minimizing component, equality holds
    Play pinned = aug;
    for (int p = 0; p < g.num_players(); ++p) {
      const MinPayoff mp = min_game_payoff_detail(g, low, g.players[static_cast<std::size_t>(p)]);
      pinned.by_player[static_cast<std::size_t>(map.chooser_of[static_cast<std::size_t>(p)])] =
          MixedStrategy::pure(g.k, mp.min_components.front());
    }
    for (int p = 0; p < g.num_players(); ++p) {
      const PlayerId& id = g.players[static_cast<std::size_t>(p)];
      CHECK(std::abs(min_game_payoff(g, low, id) -
                     expected_payoff(map.finite_game, pinned, id)) <= 1e-12);
      ++equality_checks;
    }
  }
  CHECK(equality_checks > 0);
}

TEST_SUITE_END();
