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

#include <string>

#include "epigame/fixtures.hpp"
#include "epigame/io.hpp"
#include "test_support.hpp"

using namespace epigame;

namespace {

// structural equality helpers for round-trip checks
bool same_game(const FiniteGame& a, const FiniteGame& b) {
  return a.players == b.players && a.strategies == b.strategies && a.payoffs == b.payoffs &&
         a.declared_zero_sum == b.declared_zero_sum;
}
bool same_game(const MinGame& a, const MinGame& b) {
  return a.players == b.players && a.strategies == b.strategies && a.k == b.k &&
         a.payoffs == b.payoffs && a.declared_zero_sum == b.declared_zero_sum;
}
bool same_game(const KripkeGame& a, const KripkeGame& b) {
  return a.players == b.players && a.strategies == b.strategies && a.worlds == b.worlds &&
         a.partitions == b.partitions && a.payoffs == b.payoffs &&
         a.declared_zero_sum == b.declared_zero_sum;
}

std::string require_parse_error(const std::string& text) {
  try {
    (void)parse_game(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  FAIL("expected a ParseError");
  return {};
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("the three-world document parses to a valid zero-sum game") {
  const std::string text = R"({
    "format_version": 1,
    "kind": "kripke",
    "players": ["Row", "Column"],
    "strategies": {"Row": ["1", "2"], "Column": ["1", "2"]},
    "worlds": ["1", "2", "3"],
    "partitions": {"Row": [["1", "2"], ["3"]], "Column": [["1"], ["2", "3"]]},
    "zero_sum": true,
    "payoffs": {"Row": {
      "1": [[-1, 1], [1, -1]],
      "2": [[2, 0], [0, 1]],
      "3": [[1, -1], [0, 2]]
    }}
  })";
  const GameDocument doc = parse_game(text);
  REQUIRE(doc.kind() == GameKind::kripke);
  const KripkeGame& g = doc.kripke();
  CHECK(validate(g).empty());
  CHECK(same_game(g, fixtures::section2_game()));
  // synthesized second player is the exact negation
  for (std::size_t w = 0; w < 3; ++w)
    for (std::int64_t i = 0; i < 4; ++i)
      CHECK(g.payoffs[1][w].flat(i) == -g.payoffs[0][w].flat(i));
}

TEST_CASE("rejections carry a path to the offending element") {
  SUBCASE("overlapping partition blocks") {
    std::string text = fixtures::document("section2");
    const auto pos = text.find("[[\"1\"],[\"2\",\"3\"]]");
    // partitions as emitted use compact arrays inside dump(2); rewrite via json
    json j = json::parse(fixtures::document("section2"));
    j["partitions"]["Column"] = json::array({json::array({"1", "2"}), json::array({"2", "3"})});
    const std::string msg = require_parse_error(j.dump());
    CHECK(msg.find("more than one block") != std::string::npos);
    (void)pos;
  }
  SUBCASE("min-game arity mismatch") {
    json j = json::parse(fixtures::document("one-player-remark"));
    j["payoffs"]["P1"].push_back(json::array({0.0, 0.0}));  // third tensor with k = 2
    const std::string msg = require_parse_error(j.dump());
    CHECK(msg.find("/payoffs/P1") != std::string::npos);
    CHECK(msg.find("expected 2 tensors") != std::string::npos);
  }
  SUBCASE("unknown kind") {
    const std::string msg =
        require_parse_error(R"({"format_version":1,"kind":"bayesian","players":[]})");
    CHECK(msg.find("/kind") != std::string::npos);
  }
  SUBCASE("unknown field") {
    json j = json::parse(fixtures::document("one-player-remark"));
    j["extra"] = 1;
    const std::string msg = require_parse_error(j.dump());
    CHECK(msg.find("/extra") != std::string::npos);
  }
  SUBCASE("missing format version") {
    const std::string msg = require_parse_error(R"({"kind":"finite"})");
    CHECK(msg.find("/format_version") != std::string::npos);
  }
  SUBCASE("non-finite payoff literal") {
    // overflowing literals are refused outright (JSON cannot carry infinity)
    std::string text = fixtures::document("one-player-remark");
    const auto pos = text.find("3.0");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 3, "1e999");
    const std::string msg = require_parse_error(text);
    CHECK(msg.find("overflow") != std::string::npos);
  }
  SUBCASE("non-numeric payoff entry") {
    json j = json::parse(fixtures::document("one-player-remark"));
    j["payoffs"]["P1"][1][0] = "big";
    const std::string msg = require_parse_error(j.dump());
    CHECK(msg.find("/payoffs/P1/1/0") != std::string::npos);
    CHECK(msg.find("expected a number") != std::string::npos);
  }
  SUBCASE("malformed JSON reports line and column") {
    const std::string msg = require_parse_error("{\n  \"format_version\": 1,\n");
    CHECK(msg.find("line") != std::string::npos);
  }
  SUBCASE("wrong tensor shape") {
    json j = json::parse(fixtures::document("mingame-sec4"));
    j["payoffs"]["Row"][0] = json::array({json::array({1.0, 2.0, 3.0}), json::array({1.0, 2.0, 3.0})});
    const std::string msg = require_parse_error(j.dump());
    CHECK(msg.find("/payoffs/Row/0") != std::string::npos);
  }
  SUBCASE("zero_sum with more than two players") {
    const std::string msg = require_parse_error(
        R"({"format_version":1,"kind":"finite","players":["a","b","c"],
            "strategies":{"a":["x"],"b":["x"],"c":["x"]},"zero_sum":true,
            "payoffs":{"a":[[[0]]]}})");
    CHECK(msg.find("/zero_sum") != std::string::npos);
  }
}

TEST_CASE("serialization is canonical and a fixed point") {
  for (const std::string name : {"section2", "mingame-sec4", "one-player-remark"}) {
    const std::string first = fixtures::document(name);
    const GameDocument doc = parse_game(first);
    const std::string second = serialize_game(doc);
    CHECK(first == second);
  }
}

TEST_CASE("parse of serialize is the identity on random documents") {
  Rng rng(1618);
  int finite_docs = 0, min_docs = 0, kripke_docs = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const int pick = static_cast<int>(rng.next_below(3));
    GameDocument doc;
    if (pick == 0) {
      MinGame mg = testutil::random_min_game(rng, 3, 3, 1);
      FiniteGame g;
      g.players = mg.players;
      g.strategies = mg.strategies;
      for (const auto& tensors : mg.payoffs) g.payoffs.push_back(tensors.front());
      doc.body = g;
      ++finite_docs;
    } else if (pick == 1) {
      doc.body = testutil::random_min_game(rng);
      ++min_docs;
    } else {
      doc.body = testutil::random_kripke_game(rng);
      ++kripke_docs;
    }
    const std::string text = serialize_game(doc);
    const GameDocument back = parse_game(text);
    REQUIRE(back.kind() == doc.kind());
    if (doc.kind() == GameKind::finite)
      CHECK(same_game(doc.finite(), back.finite()));
    else if (doc.kind() == GameKind::min)
      CHECK(same_game(doc.min(), back.min()));
    else
      CHECK(same_game(doc.kripke(), back.kripke()));
    // canonical form is a fixed point
    CHECK(serialize_game(back) == text);
  }
  CHECK(finite_docs > 0);
  CHECK(min_docs > 0);
  CHECK(kripke_docs > 0);
}

TEST_CASE("plain play round trip and rejection paths") {
  const MinGame g = fixtures::mingame_sec4();
  Rng rng(27);
  const Play play = testutil::random_play(rng, g.strategy_counts());
  const std::string text = serialize_play(play, g.players);
  const Play back = parse_play(text, g.players, g.strategy_counts());
  for (std::size_t p = 0; p < play.by_player.size(); ++p)
    CHECK(back.by_player[p] == play.by_player[p]);

  CHECK_THROWS_AS(parse_play(R"({"kind":"play","strategies":{"Row":[0.5,0.5]}})", g.players,
                             g.strategy_counts()),
                  ParseError);
  try {
    parse_play(R"({"kind":"play","strategies":{"Row":[0.9,0.5],"Column":[1,0]}})", g.players,
               g.strategy_counts());
    FAIL("expected rejection");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/strategies/Row") != std::string::npos);
  }
}

TEST_CASE("kripke play round trip with sorted block keys") {
  const KripkeGame g = fixtures::section2_game();
  const std::string text = fixtures::document("section2-play");
  const KripkePlay play = parse_kripke_play(text, g);
  CHECK(play.by_player[0][0] == MixedStrategy({0.5, 0.5}));
  CHECK(play.by_player[0][1] == MixedStrategy({0.0, 1.0}));
  CHECK(play.by_player[1][1] == MixedStrategy({0.6, 0.4}));
  CHECK(serialize_kripke_play(play, g) == text);

  // unknown class key is rejected with its path
  json j = json::parse(text);
  j["strategies"]["Row"]["2,3"] = json::array({0.5, 0.5});
  CHECK_THROWS_AS(parse_kripke_play(j.dump(), g), ParseError);
}

TEST_CASE("random kripke plays survive the round trip bit-exactly") {
  Rng rng(8080);
  for (int iter = 0; iter < 30; ++iter) {
    const KripkeGame g = testutil::random_kripke_game(rng);
    const KripkePlay play = testutil::random_kripke_play(rng, g);
    const KripkePlay back = parse_kripke_play(serialize_kripke_play(play, g), g);
    for (std::size_t p = 0; p < play.by_player.size(); ++p)
      for (std::size_t b = 0; b < play.by_player[p].size(); ++b)
        CHECK(back.by_player[p][b] == play.by_player[p][b]);
  }
}

TEST_CASE("solve results serialize with gaps and the method label") {
  const MinGame g = fixtures::one_player_remark();
  const SolveResult r = solve_min_game(g, {});
  const json j = solve_result_to_json(r, g);
  CHECK(j.at("kind") == "solve_result");
  CHECK(j.at("method") == "fictitious-play");
  CHECK(j.at("converged") == true);
  CHECK(j.at("per_player_gap").contains("P1"));
  CHECK(j.at("play").at("strategies").contains("P1"));

  const KripkeGame kg = fixtures::section2_game();
  const KripkeSolveResult kr = solve_kripke(kg, {});
  const json kj = solve_result_to_json(kr, kg);
  CHECK(kj.at("world_payoffs").at("Row").size() == 3);
  CHECK(kj.at("per_player_gap").size() == 4);  // one entry per knowledge class
}

TEST_CASE("solve results round-trip through parse") {
  const MinGame g = fixtures::mingame_sec4();
  const SolveResult r = solve_min_game(g, {});
  const SolveResult back = parse_solve_result(serialize_solve_result(r, g), g);
  CHECK(back.method == r.method);
  CHECK(back.converged == r.converged);
  CHECK(back.iterations_used == r.iterations_used);
  CHECK(back.restarts_used == r.restarts_used);
  CHECK(back.report.max_gap == r.report.max_gap);
  for (std::size_t p = 0; p < r.play.by_player.size(); ++p) {
    CHECK(back.play.by_player[p] == r.play.by_player[p]);
    CHECK(back.report.per_player_gap[p] == r.report.per_player_gap[p]);
    CHECK(back.report.best_responses[p] == r.report.best_responses[p]);
  }

  const KripkeGame kg = fixtures::section2_game();
  const KripkeSolveResult kr = solve_kripke(kg, {});
  const KripkeSolveResult kback = parse_kripke_solve_result(serialize_solve_result(kr, kg), kg);
  CHECK(kback.method == kr.method);
  CHECK(kback.converged == kr.converged);
  CHECK(kback.world_payoffs == kr.world_payoffs);
  for (std::size_t p = 0; p < kr.play.by_player.size(); ++p)
    for (std::size_t b = 0; b < kr.play.by_player[p].size(); ++b)
      CHECK(kback.play.by_player[p][b] == kr.play.by_player[p][b]);

  // result documents with a missing section are rejected with the path
  try {
    json j = json::parse(serialize_solve_result(r, g));
    j.erase("per_player_gap");
    (void)parse_solve_result(j.dump(), g);
    FAIL("expected rejection");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/per_player_gap") != std::string::npos);
  }
}

TEST_CASE("zero-sum serialization declares only the first player") {
  const json j = json::parse(fixtures::document("section2"));
  CHECK(j.at("zero_sum") == true);
  CHECK(j.at("payoffs").size() == 1);
  CHECK(j.at("payoffs").contains("Row"));

  // a declared zero-sum game whose payoffs are not negations is refused
  KripkeGame broken = fixtures::section2_game();
  broken.payoffs[1][0].flat(0) = 99.0;
  CHECK_THROWS_AS(serialize_game(GameDocument{1, broken}), std::invalid_argument);
}

TEST_SUITE_END();
