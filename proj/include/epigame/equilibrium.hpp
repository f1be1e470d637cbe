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

#ifndef EPIGAME_EQUILIBRIUM_HPP
#define EPIGAME_EQUILIBRIUM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epigame/core.hpp"
#include "epigame/lp.hpp"
#include "epigame/reductions.hpp"
#include "epigame/rng.hpp"

namespace epigame {

struct BestResponse {
  MixedStrategy strategy;
  double value = 0.0;
};

/**
 * Optimal unilateral deviation for `player`: maximizes the minimum over
 * component games of her expected payoff with all opponents held at sigma.
 * The gain of pure strategy i under component j is assembled by contracting
 * tensor j over the opponents' mixed strategies; the LP does the rest.
 */
inline BestResponse best_response(const MinGame& game, const Play& sigma, const PlayerId& player) {
  detail::require_play_shape(game.strategy_counts(), sigma, "best_response");
  const int p = game.player_index(player);
  SimplexMaxMinProblem prob;
  prob.gains.reserve(static_cast<std::size_t>(game.k));
  for (const Tensor& t : game.payoffs[static_cast<std::size_t>(p)])
    prob.gains.push_back(detail::own_strategy_values(t, sigma.by_player, p));
  LpSolution sol = solve_simplex_maxmin(prob);
  return BestResponse{MixedStrategy(std::move(sol.x)), sol.value};
}

/**
 * Per-player tolerance gaps: best-response value minus current payoff.
 * A play is an epsilon-equilibrium exactly when max_gap <= epsilon. Gaps
 * are never below -1e-9 (LP slack only); the best responses are included
 * as deviation witnesses.
 */
struct GapReport {
  std::vector<PlayerId> players;
  std::vector<double> per_player_gap;
  double max_gap = 0.0;
  std::vector<MixedStrategy> best_responses;

  int worst_player() const {
    int w = 0;
    for (std::size_t p = 1; p < per_player_gap.size(); ++p)
      if (per_player_gap[p] > per_player_gap[static_cast<std::size_t>(w)]) w = static_cast<int>(p);
    return w;
  }
};

inline GapReport gap_report(const MinGame& game, const Play& sigma) {
  detail::require_play_shape(game.strategy_counts(), sigma, "gap_report");
  GapReport out;
  out.players = game.players;
  out.max_gap = -std::numeric_limits<double>::infinity();
  for (const PlayerId& p : game.players) {
    BestResponse br = best_response(game, sigma, p);
    const double current = min_game_payoff(game, sigma, p);
    const double gap = br.value - current;
    out.per_player_gap.push_back(gap);
    out.best_responses.push_back(std::move(br.strategy));
    out.max_gap = std::max(out.max_gap, gap);
  }
  return out;
}

struct VerifyResult {
  bool accepted = false;
  GapReport report;
};

/// Accepts iff no player can improve by more than epsilon.
inline VerifyResult verify_equilibrium(const MinGame& game, const Play& sigma, double epsilon) {
  VerifyResult out;
  out.report = gap_report(game, sigma);
  out.accepted = out.report.max_gap <= epsilon;
  return out;
}

/**
 * Kripke-game verification goes through the class-player splitting: the
 * behavioral play is flattened onto the reduced min-game and certified
 * there. The reduction's payoff identity makes a min-game certificate a
 * certificate for every world and every unilateral deviation at once; the
 * returned report is keyed by class players ("player@worlds").
 */
inline VerifyResult verify_equilibrium(const KripkeGame& game, const KripkePlay& kplay,
                                       double epsilon) {
  detail::require_kripke_play_shape(game, kplay, "verify_equilibrium");
  const KripkeToMinMap map = kripke_to_min(game);
  return verify_equilibrium(map.min_game, flatten_play(map, kplay), epsilon);
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

struct SolveConfig {
  std::int64_t max_iterations = 20000;  // best-response dynamics budget per restart
  int restarts = 32;
  double epsilon_target = 1e-6;
  std::uint64_t seed = 0;
  double grid_step = 0.05;  // fallback grid resolution

  void check() const {
    if (max_iterations < 1) throw std::invalid_argument("SolveConfig: max_iterations must be >= 1");
    if (restarts < 1) throw std::invalid_argument("SolveConfig: restarts must be >= 1");
    if (!(epsilon_target > 0.0)) throw std::invalid_argument("SolveConfig: epsilon_target must be > 0");
    if (!(grid_step > 0.0 && grid_step <= 1.0))
      throw std::invalid_argument("SolveConfig: grid_step must be in (0, 1]");
  }
};

/**
 * Solver outcome. `converged` is true exactly when the certified max_gap is
 * within the configured target; a non-converged result still carries the
 * best play found and a truthful gap report, never a silent failure.
 */
struct SolveResult {
  Play play;
  GapReport report;
  bool converged = false;
  std::int64_t iterations_used = 0;
  int restarts_used = 0;
  std::string method;  // "fictitious-play" | "gap-grid-polish" | "exact-zero-sum"
};

namespace detail {

inline MixedStrategy mix_toward(const MixedStrategy& from, const MixedStrategy& to, double eta) {
  std::vector<double> v(static_cast<std::size_t>(from.size()));
  for (int i = 0; i < from.size(); ++i) v[static_cast<std::size_t>(i)] = (1.0 - eta) * from[i] + eta * to[i];
  return MixedStrategy(std::move(v));
}

// Euclidean projection onto the probability simplex.
inline std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  double sum = 0.0;
  for (double& x : v) {
    x = std::max(0.0, x - theta);
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

// All compositions of `total` into `parts` nonnegative integers, divided by
// `total`: the regular grid on the simplex, in lexicographic order.
inline void simplex_grid_points(int parts, int total, std::vector<std::vector<double>>& out) {
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  const auto emit = [&]() {
    std::vector<double> x(static_cast<std::size_t>(parts));
    for (int i = 0; i < parts; ++i) x[static_cast<std::size_t>(i)] = static_cast<double>(cur[static_cast<std::size_t>(i)]) / total;
    out.push_back(std::move(x));
  };
  // recursive enumeration without recursion: odometer over the first
  // parts-1 coordinates, last coordinate takes the remainder
  std::vector<int> head(static_cast<std::size_t>(parts > 0 ? parts - 1 : 0), 0);
  while (true) {
    int used = 0;
    for (int v : head) used += v;
    if (used <= total) {
      for (int i = 0; i + 1 < parts; ++i) cur[static_cast<std::size_t>(i)] = head[static_cast<std::size_t>(i)];
      cur[static_cast<std::size_t>(parts - 1)] = total - used;
      emit();
    }
    int a = parts - 2;
    while (a >= 0) {
      int below = 0;
      for (int i = 0; i < a; ++i) below += head[static_cast<std::size_t>(i)];
      if (head[static_cast<std::size_t>(a)] < total - below) {
        ++head[static_cast<std::size_t>(a)];
        for (int i = a + 1; i + 1 < parts; ++i) head[static_cast<std::size_t>(i)] = 0;
        break;
      }
      --a;
    }
    if (a < 0 || parts == 1) break;
  }
}

inline std::int64_t simplex_grid_size(int parts, int total) {
  // C(total + parts - 1, parts - 1), capped to avoid overflow
  std::int64_t n = 1;
  for (int i = 1; i <= parts - 1; ++i) {
    n = n * (total + i) / i;
    if (n > (std::int64_t{1} << 40)) return n;
  }
  return n;
}

}  // namespace detail

struct GridSearchResult {
  Play play;
  double max_gap = 0.0;
};

/**
 * Exhaustive gap minimization over the product of simplex grids with the
 * given step (test oracle; independent of the iterative search path).
 * Throws if the grid would exceed 10^7 points.
 */
inline GridSearchResult brute_force_gap_min(const MinGame& game, double step) {
  {
    const auto violations = validate(game);
    if (!violations.empty())
      throw std::invalid_argument("brute_force_gap_min: invalid game: " + violations.front());
  }
  if (!(step > 0.0 && step <= 1.0))
    throw std::invalid_argument("brute_force_gap_min: step must be in (0, 1]");
  const int total = std::max(1, static_cast<int>(std::lround(1.0 / step)));
  const std::vector<int> dims = game.strategy_counts();

  std::int64_t points = 1;
  for (int d : dims) {
    points *= detail::simplex_grid_size(d, total);
    if (points > 10'000'000)
      throw std::invalid_argument("brute_force_gap_min: grid budget exceeded (over 10^7 points)");
  }

  std::vector<std::vector<std::vector<double>>> axes(dims.size());
  for (std::size_t p = 0; p < dims.size(); ++p)
    detail::simplex_grid_points(dims[p], total, axes[p]);

  std::optional<GridSearchResult> best;
  std::vector<std::size_t> pick(dims.size(), 0);
  while (true) {
    Play play;
    play.by_player.reserve(dims.size());
    for (std::size_t p = 0; p < dims.size(); ++p)
      play.by_player.push_back(MixedStrategy(axes[p][pick[p]]));
    const GapReport rep = gap_report(game, play);
    if (!best || rep.max_gap < best->max_gap) best = GridSearchResult{std::move(play), rep.max_gap};

    std::size_t a = dims.size();
    while (a > 0) {
      --a;
      if (++pick[a] < axes[a].size()) break;
      pick[a] = 0;
      if (a == 0) return *best;
    }
  }
}

/**
 * Equilibrium search for a min-game.
 *
 * Two-player zero-sum single-component games declared as such dispatch to
 * the exact LP. Otherwise each restart (uniform first, then seeded random
 * points with streams derived from (seed, restart index)) runs averaged
 * simultaneous best-response dynamics, sigma <- (1-eta) sigma + eta BR with
 * eta = 1/(n+2), certifying the gap every 250 steps. When the dynamics
 * plateau, two finishing stages take over: simultaneous damped best-response
 * with a halving step, then a direct descent on the gap function itself.
 * If every restart falls short, a coarse grid search (grid_step) followed
 * by the same finishers is the last resort. The result always carries a
 * fresh gap report for the returned play; `converged` reflects it
 * truthfully.
 */
inline SolveResult solve_min_game(const MinGame& game, const SolveConfig& cfg = {}) {
  {
    const auto violations = validate(game);
    if (!violations.empty())
      throw std::invalid_argument("solve_min_game: invalid game: " + violations.front());
  }
  cfg.check();

  const int np = game.num_players();
  const std::vector<int> dims = game.strategy_counts();
  const double target = cfg.epsilon_target;

  struct Candidate {
    Play play;
    GapReport report;
    std::string method;
  };
  std::optional<Candidate> best;
  const auto consider = [&](const Play& play, const GapReport& rep, const char* method) {
    if (!best || rep.max_gap < best->report.max_gap) best = Candidate{play, rep, method};
    return best->report.max_gap <= target;
  };

  std::int64_t iterations = 0;
  int restarts_used = 0;

  // exact LP route for declared two-player zero-sum games
  if (game.k == 1 && np == 2 && game.declared_zero_sum) {
    const Tensor& t = game.payoffs[0][0];
    std::vector<std::vector<double>> matrix(static_cast<std::size_t>(dims[0]),
                                            std::vector<double>(static_cast<std::size_t>(dims[1])));
    for (int i = 0; i < dims[0]; ++i)
      for (int j = 0; j < dims[1]; ++j) {
        const int idx[2] = {i, j};
        matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t.at(idx);
      }
    const ZeroSumSolution zs = solve_zero_sum(matrix);
    Play play;
    play.by_player.push_back(MixedStrategy(zs.row_strategy));
    play.by_player.push_back(MixedStrategy(zs.col_strategy));
    const GapReport rep = gap_report(game, play);
    consider(play, rep, "exact-zero-sum");
    return SolveResult{best->play, best->report, best->report.max_gap <= target, 0, 0,
                       best->method};
  }

  // Simultaneous damped best-response with a halving step: at a fixed step
  // size the orbit contracts into an O(eta) neighborhood of an equilibrium
  // (rotational components settle on an O(eta) cycle), so halving eta and
  // re-anchoring at the best known play shrinks the certified gap
  // geometrically. Returns true once the target gap is certified.
  const auto polish = [&](Play sigma, const char* method) {
    double eta = 0.5;
    constexpr int kPhases = 52;
    constexpr int kStepsPerPhase = 40;
    for (int phase = 0; phase < kPhases; ++phase) {
      for (int step = 0; step < kStepsPerPhase; ++step) {
        const GapReport rep = gap_report(game, sigma);
        ++iterations;
        if (consider(sigma, rep, method)) return true;
        for (int p = 0; p < np; ++p)
          sigma.by_player[static_cast<std::size_t>(p)] = detail::mix_toward(
              sigma.by_player[static_cast<std::size_t>(p)],
              rep.best_responses[static_cast<std::size_t>(p)], eta);
      }
      sigma = best->play;
      eta *= 0.5;
    }
    return false;
  };

  // Direct Nelder-Mead descent on max_gap over simplex-projected strategy
  // coordinates. Damped best-response handles strict (vertex) structure but
  // cannot settle interior mixed equilibria of general-sum games, where its
  // orbit circles the fixed point; minimizing the gap function itself has no
  // such blind spot. Deterministic given the starting play.
  const auto gap_descent = [&](const Play& start, const char* method) {
    const int dim = [&] {
      int d = 0;
      for (int v : dims) d += v;
      return d;
    }();
    const auto pack = [&](const Play& play) {
      std::vector<double> z;
      z.reserve(static_cast<std::size_t>(dim));
      for (const MixedStrategy& ms : play.by_player)
        for (int i = 0; i < ms.size(); ++i) z.push_back(ms[i]);
      return z;
    };
    const auto unpack = [&](const std::vector<double>& z) {
      Play play;
      std::size_t off = 0;
      for (int d : dims) {
        std::vector<double> block(z.begin() + static_cast<std::ptrdiff_t>(off),
                                  z.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(d)));
        play.by_player.push_back(MixedStrategy(detail::project_to_simplex(std::move(block))));
        off += static_cast<std::size_t>(d);
      }
      return play;
    };
    bool done = false;
    const auto objective = [&](const std::vector<double>& z) {
      const Play play = unpack(z);
      const GapReport rep = gap_report(game, play);
      ++iterations;
      if (consider(play, rep, method)) done = true;
      return rep.max_gap;
    };

    struct Vertex {
      std::vector<double> z;
      double f;
    };
    std::vector<Vertex> simplex;
    simplex.push_back({pack(start), objective(pack(start))});
    for (int i = 0; i < dim && !done; ++i) {
      std::vector<double> z = simplex.front().z;
      z[static_cast<std::size_t>(i)] += 0.05;
      simplex.push_back({z, objective(z)});
    }
    if (done) return true;

    const int max_evals = 500 * dim;
    for (int eval = 0; eval < max_evals && !done; ++eval) {
      std::sort(simplex.begin(), simplex.end(),
                [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      const Vertex& best_v = simplex.front();
      const Vertex& worst_v = simplex.back();
      const Vertex& second_worst = simplex[simplex.size() - 2];

      double spread = 0.0;
      for (const Vertex& v : simplex)
        for (std::size_t i = 0; i < v.z.size(); ++i)
          spread = std::max(spread, std::abs(v.z[i] - best_v.z[i]));
      if (spread < 1e-13) break;

      std::vector<double> centroid(static_cast<std::size_t>(dim), 0.0);
      for (std::size_t s = 0; s + 1 < simplex.size(); ++s)
        for (std::size_t i = 0; i < centroid.size(); ++i)
          centroid[i] += simplex[s].z[i] / static_cast<double>(simplex.size() - 1);

      const auto along = [&](double t) {
        std::vector<double> z(centroid.size());
        for (std::size_t i = 0; i < z.size(); ++i)
          z[i] = centroid[i] + t * (centroid[i] - worst_v.z[i]);
        return z;
      };

      const std::vector<double> reflected = along(1.0);
      const double fr = objective(reflected);
      if (done) break;
      if (fr < best_v.f) {
        const std::vector<double> expanded = along(2.0);
        const double fe = objective(expanded);
        if (done) break;
        simplex.back() = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
      } else if (fr < second_worst.f) {
        simplex.back() = Vertex{reflected, fr};
      } else {
        const std::vector<double> contracted = along(fr < worst_v.f ? 0.5 : -0.5);
        const double fc = objective(contracted);
        if (done) break;
        if (fc < std::min(fr, worst_v.f)) {
          simplex.back() = Vertex{contracted, fc};
        } else {
          for (std::size_t s = 1; s < simplex.size(); ++s) {
            for (std::size_t i = 0; i < simplex[s].z.size(); ++i)
              simplex[s].z[i] = best_v.z[i] + 0.5 * (simplex[s].z[i] - best_v.z[i]);
            simplex[s].f = objective(simplex[s].z);
            if (done) break;
          }
        }
      }
    }
    return done;
  };

  bool converged = false;
  for (int r = 0; r < cfg.restarts && !converged; ++r) {
    restarts_used = r + 1;
    Play sigma;
    if (r == 0) {
      sigma = uniform_play(dims);
    } else {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(r));
      for (int d : dims) sigma.by_player.push_back(MixedStrategy(rng.next_simplex(d)));
    }

    {
      const GapReport rep = gap_report(game, sigma);
      if (consider(sigma, rep, "fictitious-play")) {
        converged = true;
        break;
      }
    }

    double restart_best = std::numeric_limits<double>::infinity();
    int stale_checkpoints = 0;
    for (std::int64_t n = 0; n < cfg.max_iterations; ++n) {
      std::vector<BestResponse> brs;
      brs.reserve(static_cast<std::size_t>(np));
      for (const PlayerId& p : game.players) brs.push_back(best_response(game, sigma, p));
      ++iterations;

      if ((n + 1) % 250 == 0) {
        GapReport rep;
        rep.players = game.players;
        rep.max_gap = -std::numeric_limits<double>::infinity();
        for (int p = 0; p < np; ++p) {
          const double gap = brs[static_cast<std::size_t>(p)].value -
                             min_game_payoff(game, sigma, game.players[static_cast<std::size_t>(p)]);
          rep.per_player_gap.push_back(gap);
          rep.best_responses.push_back(brs[static_cast<std::size_t>(p)].strategy);
          rep.max_gap = std::max(rep.max_gap, gap);
        }
        if (consider(sigma, rep, "fictitious-play")) {
          converged = true;
          break;
        }
        // plateau cut: the 1/n averaging has stopped making headway, hand
        // over to the polish instead of burning the full budget
        if (rep.max_gap > 0.9 * restart_best) {
          if (++stale_checkpoints >= 4) break;
        } else {
          stale_checkpoints = 0;
        }
        restart_best = std::min(restart_best, rep.max_gap);
      }

      const double eta = 1.0 / static_cast<double>(n + 2);
      for (int p = 0; p < np; ++p)
        sigma.by_player[static_cast<std::size_t>(p)] = detail::mix_toward(
            sigma.by_player[static_cast<std::size_t>(p)], brs[static_cast<std::size_t>(p)].strategy,
            eta);
    }
    if (converged) break;

    {
      const GapReport rep = gap_report(game, sigma);
      if (consider(sigma, rep, "fictitious-play")) {
        converged = true;
        break;
      }
    }
    converged = polish(best->play, "fictitious-play") || gap_descent(best->play, "fictitious-play");
  }

  if (!converged) {
    // last resort: coarse grid scan, then polish the overall best
    const int total = std::max(1, static_cast<int>(std::lround(1.0 / cfg.grid_step)));
    std::int64_t points = 1;
    for (int d : dims) points *= detail::simplex_grid_size(d, total);
    if (points <= 200'000) {
      const GridSearchResult grid = brute_force_gap_min(game, cfg.grid_step);
      const GapReport rep = gap_report(game, grid.play);
      iterations += points;
      consider(grid.play, rep, "gap-grid-polish");
    }
    converged = polish(best->play, "gap-grid-polish") || gap_descent(best->play, "gap-grid-polish");
  }

  return SolveResult{best->play, best->report, best->report.max_gap <= target, iterations,
                     restarts_used, best->method};
}

/**
 * Kripke-game solver: split into class players, solve the min-game, and
 * read the class strategies back as a behavioral play. The gap report is
 * the min-game certificate (keyed "player@worlds", one entry per knowledge
 * class); world_payoffs[p][w] attaches the per-world worst-case payoffs of
 * the returned play for reporting.
 */
struct KripkeSolveResult {
  KripkePlay play;
  GapReport report;
  bool converged = false;
  std::int64_t iterations_used = 0;
  int restarts_used = 0;
  std::string method;
  std::vector<std::vector<double>> world_payoffs;  // [player][world]
};

inline KripkeSolveResult solve_kripke(const KripkeGame& game, const SolveConfig& cfg = {}) {
  {
    const auto violations = validate(game);
    if (!violations.empty())
      throw std::invalid_argument("solve_kripke: invalid game: " + violations.front());
  }
  const KripkeToMinMap map = kripke_to_min(game);
  SolveResult inner = solve_min_game(map.min_game, cfg);

  KripkeSolveResult out;
  out.play = lift_play(map, inner.play);
  out.report = std::move(inner.report);
  out.converged = inner.converged;
  out.iterations_used = inner.iterations_used;
  out.restarts_used = inner.restarts_used;
  out.method = std::move(inner.method);
  out.world_payoffs.assign(static_cast<std::size_t>(game.num_players()), {});
  for (int p = 0; p < game.num_players(); ++p)
    for (const WorldId& w : game.worlds)
      out.world_payoffs[static_cast<std::size_t>(p)].push_back(
          kripke_payoff(game, out.play, game.players[static_cast<std::size_t>(p)], w));
  return out;
}

}  // namespace epigame

#endif  // EPIGAME_EQUILIBRIUM_HPP
