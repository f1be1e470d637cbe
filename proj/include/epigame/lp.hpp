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

#ifndef EPIGAME_LP_HPP
#define EPIGAME_LP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace epigame {

/**
 * Best-response shaped problem: maximize min_j g_j . x over the probability
 * simplex, where g_j[i] is the expected payoff of pure strategy i under
 * component game j with all opponents fixed. The objective is the minimum
 * of finitely many linear functions, hence piecewise-linear concave, and
 * the maximum is always attained.
 */
struct SimplexMaxMinProblem {
  std::vector<std::vector<double>> gains;  // k vectors of dimension m
};

struct LpSolution {
  std::vector<double> x;        // point on the m-simplex
  double value = 0.0;           // min_j gains[j] . x at x
  std::vector<int> active_set;  // components attaining the min at x
};

namespace lp_detail {

inline constexpr double kPivotTol = 1e-10;

/**
 * Dense primal simplex for: maximize c.v subject to A v <= b, v >= 0,
 * with b >= 0 entrywise (slack basis start, no phase 1). Bland's rule
 * everywhere: entering column is the smallest improving index, leaving row
 * breaks ratio ties by the smallest basic variable index, so runs are
 * deterministic and cycling-free.
 */
struct SlackFormResult {
  std::vector<double> primal;      // structural variables
  std::vector<double> dual_slack;  // dual value per row (from slack reduced costs)
  double objective = 0.0;
};

inline SlackFormResult maximize_slack_form(const std::vector<std::vector<double>>& A,
                                           const std::vector<double>& b,
                                           const std::vector<double>& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  const int cols = n + m;

  std::vector<std::vector<double>> T(static_cast<std::size_t>(m),
                                     std::vector<double>(static_cast<std::size_t>(cols), 0.0));
  std::vector<double> rhs(static_cast<std::size_t>(m));
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][static_cast<std::size_t>(j)] = A[i][static_cast<std::size_t>(j)];
    T[i][static_cast<std::size_t>(n + i)] = 1.0;
    rhs[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)];
    basis[static_cast<std::size_t>(i)] = n + i;
  }
  std::vector<double> reduced(static_cast<std::size_t>(cols), 0.0);
  for (int j = 0; j < n; ++j) reduced[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)];
  double objective = 0.0;

  // Bland terminates; the bound is a safety net against broken input.
  const long max_pivots = 2000L * (m + n + 4);
  for (long pivots = 0; pivots < max_pivots; ++pivots) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (reduced[static_cast<std::size_t>(j)] > kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {  // optimal
      SlackFormResult out;
      out.primal.assign(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] < n)
          out.primal[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] =
              rhs[static_cast<std::size_t>(i)];
      out.dual_slack.assign(static_cast<std::size_t>(m), 0.0);
      for (int i = 0; i < m; ++i) {
        const double y = -reduced[static_cast<std::size_t>(n + i)];
        out.dual_slack[static_cast<std::size_t>(i)] = y > 0.0 ? y : 0.0;
      }
      out.objective = objective;
      return out;
    }

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double a = T[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
      if (a > kPivotTol) {
        const double ratio = rhs[static_cast<std::size_t>(i)] / a;
        if (ratio < best_ratio ||
            (ratio == best_ratio && leave >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw std::logic_error("simplex: objective unbounded");

    auto& prow = T[static_cast<std::size_t>(leave)];
    const double piv = prow[static_cast<std::size_t>(enter)];
    for (double& v : prow) v /= piv;
    rhs[static_cast<std::size_t>(leave)] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      auto& row = T[static_cast<std::size_t>(i)];
      const double f = row[static_cast<std::size_t>(enter)];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
      row[static_cast<std::size_t>(enter)] = 0.0;
      rhs[static_cast<std::size_t>(i)] -= f * rhs[static_cast<std::size_t>(leave)];
    }
    const double rf = reduced[static_cast<std::size_t>(enter)];
    for (int j = 0; j < cols; ++j) reduced[static_cast<std::size_t>(j)] -= rf * prow[static_cast<std::size_t>(j)];
    reduced[static_cast<std::size_t>(enter)] = 0.0;
    objective += rf * rhs[static_cast<std::size_t>(leave)];
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  throw std::logic_error("simplex: pivot limit exceeded");
}

inline double min_gain_at(const std::vector<std::vector<double>>& gains,
                          const std::vector<double>& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : gains) {
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += g[i] * x[i];
    best = std::min(best, dot);
  }
  return best;
}

}  // namespace lp_detail

/**
 * Global maximizer of min_j g_j . x over the simplex.
 *
 * Solved as the classic game LP: gains are shifted by 1 + max|entry| to
 * make every entry positive, the bounded dual (maximize sum z subject to
 * G^T z <= 1, z >= 0) starts from the all-slack basis, and the primal point
 * is read off the optimal slack reduced costs. When a pure strategy is
 * optimal the smallest-index one is returned, so ties resolve to the
 * earliest vertex ((1,0,...) for a constant objective) and runs are
 * reproducible.
 */
inline LpSolution solve_simplex_maxmin(const SimplexMaxMinProblem& prob) {
  const int k = static_cast<int>(prob.gains.size());
  if (k < 1) throw std::invalid_argument("solve_simplex_maxmin: need at least one gain vector");
  const int m = static_cast<int>(prob.gains[0].size());
  if (m < 1) throw std::invalid_argument("solve_simplex_maxmin: need at least one strategy");
  double max_abs = 0.0;
  for (const auto& g : prob.gains) {
    if (static_cast<int>(g.size()) != m)
      throw std::invalid_argument("solve_simplex_maxmin: gain vectors differ in dimension");
    for (double v : g) {
      if (!std::isfinite(v)) throw std::invalid_argument("solve_simplex_maxmin: non-finite gain entry");
      max_abs = std::max(max_abs, std::abs(v));
    }
  }
  const double shift = 1.0 + max_abs;  // every shifted entry is >= 1

  // Constraint row per pure strategy i, column per component j.
  std::vector<std::vector<double>> A(static_cast<std::size_t>(m),
                                     std::vector<double>(static_cast<std::size_t>(k)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < k; ++j)
      A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          prob.gains[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] + shift;
  const std::vector<double> b(static_cast<std::size_t>(m), 1.0);
  const std::vector<double> c(static_cast<std::size_t>(k), 1.0);

  const auto res = lp_detail::maximize_slack_form(A, b, c);

  std::vector<double> x = res.dual_slack;
  double sum = 0.0;
  for (double v : x) sum += v;
  if (sum <= 0.0) throw std::logic_error("solve_simplex_maxmin: degenerate dual solution");
  for (double& v : x) v /= sum;

  LpSolution out;
  out.x = std::move(x);
  out.value = lp_detail::min_gain_at(prob.gains, out.x);

  // Earliest-vertex canonicalization: a pure strategy matching the optimum
  // (within 1e-12) replaces the solver's point.
  for (int i = 0; i < m; ++i) {
    double pure_value = std::numeric_limits<double>::infinity();
    for (const auto& g : prob.gains)
      pure_value = std::min(pure_value, g[static_cast<std::size_t>(i)]);
    if (pure_value >= out.value - 1e-12) {
      std::fill(out.x.begin(), out.x.end(), 0.0);
      out.x[static_cast<std::size_t>(i)] = 1.0;
      out.value = pure_value;
      break;
    }
  }

  for (int j = 0; j < k; ++j) {
    double dot = 0.0;
    for (int i = 0; i < m; ++i)
      dot += prob.gains[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
             out.x[static_cast<std::size_t>(i)];
    if (dot <= out.value + 1e-9) out.active_set.push_back(j);
  }
  return out;
}

struct ZeroSumSolution {
  double value = 0.0;  // to the row player
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
};

/**
 * Value and optimal mixed strategies of a two-player zero-sum matrix game
 * (row maximizes matrix[i][j], column minimizes). Both sides are solved as
 * simplex max-min problems; the reported value is the row guarantee.
 */
inline ZeroSumSolution solve_zero_sum(const std::vector<std::vector<double>>& matrix) {
  const int m = static_cast<int>(matrix.size());
  if (m < 1) throw std::invalid_argument("solve_zero_sum: empty matrix");
  const int n = static_cast<int>(matrix[0].size());
  if (n < 1) throw std::invalid_argument("solve_zero_sum: empty matrix row");
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("solve_zero_sum: ragged matrix");
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("solve_zero_sum: non-finite entry");
  }

  SimplexMaxMinProblem row_prob;  // row guarantees against each pure column
  row_prob.gains.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m)));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      row_prob.gains[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  SimplexMaxMinProblem col_prob;  // column maximizes her own (negated) payoff
  col_prob.gains.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      col_prob.gains[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          -matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  const LpSolution row_sol = solve_simplex_maxmin(row_prob);
  const LpSolution col_sol = solve_simplex_maxmin(col_prob);

  ZeroSumSolution out;
  out.value = row_sol.value;
  out.row_strategy = row_sol.x;
  out.col_strategy = col_sol.x;
  return out;
}

}  // namespace epigame

#endif  // EPIGAME_LP_HPP
