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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epigame/epigame.hpp"

namespace {

// Exit code contract: 0 success (solve converged / verify accepted),
// 1 parse or validation errors, 2 usage errors, 3 best-effort solve
// (not converged), 4 verify rejected.
constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kUsageError = 2;
constexpr int kNotConverged = 3;
constexpr int kRejected = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file \"" + path + "\"");
  out << text;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

void print_gap_table(const epigame::GapReport& report) {
  std::cout << "player gaps (best-response value minus current payoff):\n";
  for (std::size_t p = 0; p < report.players.size(); ++p) {
    std::cout << "  " << report.players[p] << ": " << report.per_player_gap[p]
              << "  best response (";
    const auto& probs = report.best_responses[p].probabilities();
    for (std::size_t i = 0; i < probs.size(); ++i) std::cout << (i ? ", " : "") << probs[i];
    std::cout << ")\n";
  }
  std::cout << "max gap: " << report.max_gap << "\n";
}

struct Options {
  bool json = false;
  std::string game_path;
  std::string play_path;
  std::string player;
  std::string world;
  std::string to;
  std::string out_path;
  std::string name;
  double epsilon = 1e-6;
  std::uint64_t seed = 0;
  int restarts = 32;
};

int cmd_payoff(const Options& opt) {
  const epigame::GameDocument doc = epigame::parse_game(read_file(opt.game_path));
  epigame::json out;
  out["kind"] = "payoff_report";
  out["game_kind"] = epigame::to_string(doc.kind());
  epigame::json payoffs = epigame::json::object();

  if (doc.kind() == epigame::GameKind::kripke) {
    const epigame::KripkeGame& g = doc.kripke();
    const epigame::KripkePlay play = epigame::parse_kripke_play(read_file(opt.play_path), g);
    for (const epigame::PlayerId& p : g.players) {
      if (!opt.player.empty() && p != opt.player) continue;
      epigame::json per_world = epigame::json::object();
      for (const epigame::WorldId& w : g.worlds) {
        if (!opt.world.empty() && w != opt.world) continue;
        const auto detail = epigame::kripke_payoff_detail(g, play, p, w);
        per_world[w] = {{"value", detail.value}, {"min_worlds", detail.min_worlds}};
        if (!opt.json)
          std::cout << "payoff[" << p << ", world " << w << "] = " << detail.value << "\n";
      }
      payoffs[p] = std::move(per_world);
    }
    if (!opt.player.empty() && !payoffs.contains(opt.player)) g.player_index(opt.player);
    if (!opt.world.empty()) g.world_index(opt.world);
  } else {
    if (!opt.world.empty()) throw UsageError("--world only applies to kripke games");
    const epigame::MinGame g = doc.kind() == epigame::GameKind::min
                                   ? doc.min()
                                   : epigame::as_min_game(doc.finite());
    const epigame::Play play =
        epigame::parse_play(read_file(opt.play_path), g.players, g.strategy_counts());
    for (const epigame::PlayerId& p : g.players) {
      if (!opt.player.empty() && p != opt.player) continue;
      const auto detail = epigame::min_game_payoff_detail(g, play, p);
      if (g.k == 1) {
        payoffs[p] = detail.value;
        if (!opt.json) std::cout << "payoff[" << p << "] = " << detail.value << "\n";
      } else {
        payoffs[p] = {{"value", detail.value}, {"min_components", detail.min_components}};
        if (!opt.json) {
          std::cout << "payoff[" << p << "] = " << detail.value << " (minimum over components";
          for (int j : detail.min_components) std::cout << " " << j;
          std::cout << ")\n";
        }
      }
    }
    if (!opt.player.empty() && !payoffs.contains(opt.player)) g.player_index(opt.player);
  }
  out["payoffs"] = std::move(payoffs);
  if (opt.json) std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_best_response(const Options& opt) {
  const epigame::GameDocument doc = epigame::parse_game(read_file(opt.game_path));
  if (doc.kind() == epigame::GameKind::kripke)
    throw UsageError("best-response requires a finite or min game document");
  const epigame::MinGame g =
      doc.kind() == epigame::GameKind::min ? doc.min() : epigame::as_min_game(doc.finite());
  const epigame::Play play =
      epigame::parse_play(read_file(opt.play_path), g.players, g.strategy_counts());
  const epigame::BestResponse br = epigame::best_response(g, play, opt.player);
  if (opt.json) {
    epigame::json out;
    out["kind"] = "best_response";
    out["player"] = opt.player;
    out["strategy"] = br.strategy.probabilities();
    out["value"] = br.value;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "best response for " << opt.player << ": (";
    const auto& probs = br.strategy.probabilities();
    for (std::size_t i = 0; i < probs.size(); ++i) std::cout << (i ? ", " : "") << probs[i];
    std::cout << ")\nvalue: " << br.value << "\n";
  }
  return kOk;
}

int cmd_reduce(const Options& opt) {
  const epigame::GameDocument doc = epigame::parse_game(read_file(opt.game_path));
  epigame::json envelope;
  envelope["kind"] = "reduction";
  std::string reduced_doc;

  if (opt.to == "min") {
    if (doc.kind() != epigame::GameKind::kripke)
      throw UsageError("reduce --to min requires a kripke game document");
    const epigame::KripkeGame& g = doc.kripke();
    const epigame::KripkeToMinMap map = epigame::kripke_to_min(g);
    envelope["reduction"] = "kripke_to_min";
    envelope["world_order"] = map.world_order;
    epigame::json pm = epigame::json::object();
    for (int p = 0; p < g.num_players(); ++p) {
      epigame::json per_block = epigame::json::object();
      const auto& partition = g.partitions[static_cast<std::size_t>(p)];
      for (std::size_t b = 0; b < partition.size(); ++b) {
        const int cp = map.class_player[static_cast<std::size_t>(p)][b];
        per_block[epigame::block_key(partition[b])] =
            map.min_game.players[static_cast<std::size_t>(cp)];
      }
      pm[g.players[static_cast<std::size_t>(p)]] = std::move(per_block);
    }
    envelope["player_map"] = std::move(pm);
    reduced_doc = epigame::serialize_game(epigame::GameDocument{1, map.min_game});
    envelope["min_game"] = epigame::json::parse(reduced_doc);
  } else if (opt.to == "finite") {
    if (doc.kind() != epigame::GameKind::min)
      throw UsageError("reduce --to finite requires a min game document");
    const epigame::MinGame& g = doc.min();
    const epigame::WorldChooserMap map = epigame::min_to_finite(g);
    envelope["reduction"] = "min_to_finite";
    epigame::json co = epigame::json::object();
    for (int p = 0; p < g.num_players(); ++p)
      co[g.players[static_cast<std::size_t>(p)]] =
          map.finite_game
              .players[static_cast<std::size_t>(map.chooser_of[static_cast<std::size_t>(p)])];
    envelope["chooser_of"] = std::move(co);
    reduced_doc = epigame::serialize_game(epigame::GameDocument{1, map.finite_game});
    envelope["finite_game"] = epigame::json::parse(reduced_doc);
  } else {
    throw UsageError("--to must be min or finite");
  }

  if (!opt.out_path.empty()) {
    write_file(opt.out_path, reduced_doc);
    envelope.erase(opt.to == "min" ? "min_game" : "finite_game");
    envelope["out"] = opt.out_path;
  }
  if (opt.json) {
    std::cout << envelope.dump(2) << "\n";
  } else {
    std::cout << "reduction: " << envelope["reduction"].get<std::string>() << "\n";
    if (!opt.out_path.empty())
      std::cout << "reduced game written to " << opt.out_path << "\n";
    else
      std::cout << envelope.dump(2) << "\n";
  }
  return kOk;
}

int cmd_solve(const Options& opt) {
  const epigame::GameDocument doc = epigame::parse_game(read_file(opt.game_path));
  epigame::SolveConfig cfg;
  cfg.epsilon_target = opt.epsilon;
  cfg.seed = opt.seed;
  cfg.restarts = opt.restarts;

  bool converged = false;
  if (doc.kind() == epigame::GameKind::kripke) {
    const epigame::KripkeGame& g = doc.kripke();
    const epigame::KripkeSolveResult result = epigame::solve_kripke(g, cfg);
    converged = result.converged;
    const std::string text = epigame::serialize_solve_result(result, g);
    if (!opt.out_path.empty()) write_file(opt.out_path, text);
    if (opt.json) {
      std::cout << epigame::solve_result_to_json(result, g).dump(2) << "\n";
    } else {
      std::cout << (converged ? "converged" : "best effort (not converged)") << " via "
                << result.method << " after " << result.iterations_used << " iterations, "
                << result.restarts_used << " restart(s)\n";
      print_gap_table(result.report);
      std::cout << "worst-case payoffs by world:\n";
      for (int p = 0; p < g.num_players(); ++p) {
        std::cout << "  " << g.players[static_cast<std::size_t>(p)] << ":";
        for (std::size_t w = 0; w < g.worlds.size(); ++w)
          std::cout << " " << g.worlds[w] << "=" << result.world_payoffs[static_cast<std::size_t>(p)][w];
        std::cout << "\n";
      }
    }
  } else {
    const epigame::MinGame g =
        doc.kind() == epigame::GameKind::min ? doc.min() : epigame::as_min_game(doc.finite());
    const epigame::SolveResult result = epigame::solve_min_game(g, cfg);
    converged = result.converged;
    const std::string text = epigame::serialize_solve_result(result, g);
    if (!opt.out_path.empty()) write_file(opt.out_path, text);
    if (opt.json) {
      std::cout << epigame::solve_result_to_json(result, g).dump(2) << "\n";
    } else {
      std::cout << (converged ? "converged" : "best effort (not converged)") << " via "
                << result.method << " after " << result.iterations_used << " iterations, "
                << result.restarts_used << " restart(s)\n";
      std::cout << "play:\n";
      for (std::size_t p = 0; p < g.players.size(); ++p) {
        std::cout << "  " << g.players[p] << ": (";
        const auto& probs = result.play.by_player[p].probabilities();
        for (std::size_t i = 0; i < probs.size(); ++i) std::cout << (i ? ", " : "") << probs[i];
        std::cout << ")\n";
      }
      print_gap_table(result.report);
    }
  }
  return converged ? kOk : kNotConverged;
}

int cmd_verify(const Options& opt) {
  const epigame::GameDocument doc = epigame::parse_game(read_file(opt.game_path));
  epigame::VerifyResult result;
  if (doc.kind() == epigame::GameKind::kripke) {
    const epigame::KripkeGame& g = doc.kripke();
    result = epigame::verify_equilibrium(g, epigame::parse_kripke_play(read_file(opt.play_path), g),
                                         opt.epsilon);
  } else {
    const epigame::MinGame g =
        doc.kind() == epigame::GameKind::min ? doc.min() : epigame::as_min_game(doc.finite());
    result = epigame::verify_equilibrium(
        g, epigame::parse_play(read_file(opt.play_path), g.players, g.strategy_counts()),
        opt.epsilon);
  }
  if (opt.json) {
    epigame::json out;
    out["kind"] = "verify_report";
    out["accepted"] = result.accepted;
    out["epsilon"] = opt.epsilon;
    epigame::json report = epigame::gap_report_to_json(result.report);
    for (auto& [key, value] : report.items()) out[key] = std::move(value);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (result.accepted ? "accepted" : "rejected") << " at epsilon = " << opt.epsilon
              << "\n";
    print_gap_table(result.report);
  }
  return result.accepted ? kOk : kRejected;
}

int cmd_example(const Options& opt) {
  emit(epigame::fixtures::document(opt.name), opt.out_path);
  if (!opt.out_path.empty()) {
    if (opt.json)
      std::cout << epigame::json{{"kind", "fixture_written"}, {"name", opt.name},
                                 {"out", opt.out_path}}
                       .dump(2)
                << "\n";
    else
      std::cout << "fixture \"" << opt.name << "\" written to " << opt.out_path << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"epigame: payoffs, reductions, and worst-case equilibria for finite games, "
               "min-games, and Kripke games"};
  app.require_subcommand(1);

  CLI::App* payoff = app.add_subcommand("payoff", "Evaluate payoffs of a play");
  payoff->add_option("--game", opt.game_path, "game document")->required();
  payoff->add_option("--play", opt.play_path, "play document")->required();
  payoff->add_option("--player", opt.player, "restrict to one player");
  payoff->add_option("--world", opt.world, "restrict to one world (kripke games)");

  CLI::App* br = app.add_subcommand("best-response", "Optimal unilateral deviation via LP");
  br->add_option("--game", opt.game_path, "game document")->required();
  br->add_option("--play", opt.play_path, "play document")->required();
  br->add_option("--player", opt.player, "player to deviate")->required();

  CLI::App* reduce = app.add_subcommand("reduce", "Rewrite a game as a simpler kind");
  reduce->add_option("--game", opt.game_path, "game document")->required();
  reduce->add_option("--to", opt.to, "target kind: min (from kripke) or finite (from min)")
      ->required();
  reduce->add_option("--out", opt.out_path, "write the reduced game document here");

  CLI::App* solve = app.add_subcommand("solve", "Search for an equilibrium play");
  solve->add_option("--game", opt.game_path, "game document")->required();
  solve->add_option("--epsilon", opt.epsilon, "gap target (default 1e-6)");
  solve->add_option("--seed", opt.seed, "random restart seed (default 0)");
  solve->add_option("--restarts", opt.restarts, "restart budget (default 32)");
  solve->add_option("--out", opt.out_path, "write the solve result document here");

  CLI::App* verify = app.add_subcommand("verify", "Check a play against an epsilon threshold");
  verify->add_option("--game", opt.game_path, "game document")->required();
  verify->add_option("--play", opt.play_path, "play document")->required();
  verify->add_option("--epsilon", opt.epsilon, "tolerated gap")->required();

  CLI::App* example = app.add_subcommand("example", "Write a built-in example document");
  example
      ->add_option("--name", opt.name,
                   "one of: section2, section2-play, mingame-sec4, one-player-remark")
      ->required();
  example->add_option("--out", opt.out_path, "write here instead of stdout");

  for (CLI::App* sub : {payoff, br, reduce, solve, verify, example})
    sub->add_flag("--json", opt.json, "machine-readable stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (payoff->parsed()) return cmd_payoff(opt);
    if (br->parsed()) return cmd_best_response(opt);
    if (reduce->parsed()) return cmd_reduce(opt);
    if (solve->parsed()) return cmd_solve(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (example->parsed()) return cmd_example(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const epigame::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}
