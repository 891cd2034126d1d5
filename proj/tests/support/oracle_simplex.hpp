#pragma once

// Reference LP solver for cross-checking the library's bounded-variable
// simplex. Deliberately different construction: general bounds are compiled
// away into shifts, mirrors, and variable splits, the tableau is the classic
// dense standard form with explicit slack/artificial columns, and pivoting is
// Bland's rule throughout.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "saginet/lp.hpp"

namespace testsupport {

struct OracleResult {
  saginet::LpStatus status = saginet::LpStatus::Optimal;
  double objective = 0.0;
};

namespace detail {

enum class ColKind { Shift, Mirror, SplitPos, Constant };

struct ColMap {
  ColKind kind = ColKind::Shift;
  double offset = 0.0;
  int col = -1;
  int neg_col = -1;
};

}  // namespace detail

inline OracleResult oracle_lp_solve(const saginet::LpProblem& p) {
  using saginet::kLpInfinity;
  const std::size_t n0 = p.objective.size();
  std::vector<detail::ColMap> map(n0);
  int ncols = 0;
  std::vector<std::pair<int, double>> upper_rows;  // (col, cap) as extra <= rows
  for (std::size_t j = 0; j < n0; ++j) {
    const double lo = p.lower[j];
    const double up = p.upper[j];
    if (lo > up) return {saginet::LpStatus::Infeasible, 0.0};
    if (lo == up) {
      map[j] = {detail::ColKind::Constant, lo, -1, -1};
    } else if (lo > -kLpInfinity) {
      map[j] = {detail::ColKind::Shift, lo, ncols++, -1};
      if (up < kLpInfinity) upper_rows.push_back({map[j].col, up - lo});
    } else if (up < kLpInfinity) {
      map[j] = {detail::ColKind::Mirror, up, ncols++, -1};
    } else {
      map[j] = {detail::ColKind::SplitPos, 0.0, ncols, ncols + 1};
      ncols += 2;
    }
  }

  struct StdRow {
    std::vector<double> a;
    saginet::Rel rel;
    double rhs;
  };
  std::vector<StdRow> rows;
  double obj_const = 0.0;
  std::vector<double> cost(ncols, 0.0);
  const double sign = p.maximize ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n0; ++j) {
    const double c = sign * p.objective[j];
    switch (map[j].kind) {
      case detail::ColKind::Constant:
        obj_const += c * map[j].offset;
        break;
      case detail::ColKind::Shift:
        obj_const += c * map[j].offset;
        cost[map[j].col] += c;
        break;
      case detail::ColKind::Mirror:
        obj_const += c * map[j].offset;
        cost[map[j].col] -= c;
        break;
      case detail::ColKind::SplitPos:
        cost[map[j].col] += c;
        cost[map[j].neg_col] -= c;
        break;
    }
  }
  for (const auto& row : p.rows) {
    StdRow r;
    r.a.assign(ncols, 0.0);
    r.rel = row.rel;
    r.rhs = row.rhs;
    for (const auto& [j, a] : row.terms) {
      switch (map[j].kind) {
        case detail::ColKind::Constant:
          r.rhs -= a * map[j].offset;
          break;
        case detail::ColKind::Shift:
          r.a[map[j].col] += a;
          r.rhs -= a * map[j].offset;
          break;
        case detail::ColKind::Mirror:
          r.a[map[j].col] -= a;
          r.rhs -= a * map[j].offset;
          break;
        case detail::ColKind::SplitPos:
          r.a[map[j].col] += a;
          r.a[map[j].neg_col] -= a;
          break;
      }
    }
    rows.push_back(std::move(r));
  }
  for (const auto& [col, cap] : upper_rows) {
    StdRow r;
    r.a.assign(ncols, 0.0);
    r.a[col] = 1.0;
    r.rel = saginet::Rel::LessEq;
    r.rhs = cap;
    rows.push_back(std::move(r));
  }
  for (auto& r : rows) {
    if (r.rhs < 0.0) {
      for (double& a : r.a) a = -a;
      r.rhs = -r.rhs;
      if (r.rel == saginet::Rel::LessEq) {
        r.rel = saginet::Rel::GreaterEq;
      } else if (r.rel == saginet::Rel::GreaterEq) {
        r.rel = saginet::Rel::LessEq;
      }
    }
  }

  const int m = static_cast<int>(rows.size());
  int total = ncols;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (rows[i].rel == saginet::Rel::LessEq) {
      slack_col[i] = total++;
    } else if (rows[i].rel == saginet::Rel::GreaterEq) {
      slack_col[i] = total++;
      art_col[i] = total++;
    } else {
      art_col[i] = total++;
    }
  }
  std::vector<std::vector<double>> tab(m, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(m, -1);
  const int art_begin = ncols;
  std::vector<bool> is_art(total, false);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < ncols; ++j) tab[i][j] = rows[i].a[j];
    tab[i][total] = rows[i].rhs;
    if (slack_col[i] >= 0) {
      tab[i][slack_col[i]] = rows[i].rel == saginet::Rel::GreaterEq ? -1.0 : 1.0;
    }
    if (art_col[i] >= 0) {
      tab[i][art_col[i]] = 1.0;
      is_art[art_col[i]] = true;
      basis[i] = art_col[i];
    } else {
      basis[i] = slack_col[i];
    }
  }
  (void)art_begin;

  const double kTol = 1e-9;
  auto pivot = [&](int r, int c) {
    const double piv = tab[r][c];
    for (int j = 0; j <= total; ++j) tab[r][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = tab[i][c];
      if (f == 0.0) continue;
      for (int j = 0; j <= total; ++j) tab[i][j] -= f * tab[r][j];
    }
    basis[r] = c;
  };
  auto reduced_cost = [&](const std::vector<double>& c, int j) {
    double d = c[j];
    for (int i = 0; i < m; ++i) d -= c[basis[i]] * tab[i][j];
    return d;
  };
  // Bland's rule: lowest improving column, lowest-index basic variable on ties.
  auto run_phase = [&](const std::vector<double>& c, bool allow_art) -> bool {
    const long iter_cap = 20000L * (m + total + 1);
    for (long it = 0; it < iter_cap; ++it) {
      int enter = -1;
      for (int j = 0; j < total; ++j) {
        if (!allow_art && is_art[j]) continue;
        if (reduced_cost(c, j) > kTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        if (tab[i][enter] > kTol) {
          const double ratio = tab[i][total] / tab[i][enter];
          if (leave < 0 || ratio < best - 1e-12 ||
              (ratio < best + 1e-12 && basis[i] < basis[leave])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return false;  // unbounded direction
      pivot(leave, enter);
    }
    throw std::runtime_error("oracle simplex exceeded its iteration cap");
  };

  std::vector<double> phase1(total, 0.0);
  bool need_phase1 = false;
  for (int j = 0; j < total; ++j) {
    if (is_art[j]) {
      phase1[j] = -1.0;
      need_phase1 = true;
    }
  }
  if (need_phase1) {
    if (!run_phase(phase1, true)) {
      throw std::runtime_error("oracle phase 1 reported unbounded");
    }
    double art_level = 0.0;
    for (int i = 0; i < m; ++i) {
      if (is_art[basis[i]]) art_level += tab[i][total];
    }
    if (art_level > 1e-7) return {saginet::LpStatus::Infeasible, 0.0};
  }
  std::vector<double> phase2(total, 0.0);
  for (int j = 0; j < ncols; ++j) phase2[j] = cost[j];
  if (!run_phase(phase2, false)) return {saginet::LpStatus::Unbounded, 0.0};

  std::vector<double> y(total, 0.0);
  for (int i = 0; i < m; ++i) y[basis[i]] = tab[i][total];
  double obj = obj_const;
  for (int j = 0; j < ncols; ++j) obj += cost[j] * y[j];
  return {saginet::LpStatus::Optimal, sign * obj};
}

}  // namespace testsupport
