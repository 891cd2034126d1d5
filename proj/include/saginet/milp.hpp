#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "saginet/errors.hpp"
#include "saginet/lp.hpp"

namespace saginet {

enum class VarKind { Continuous, Binary, Integer };

struct MilpVariable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = kLpInfinity;
};

struct MilpConstraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;
  Rel rel = Rel::LessEq;
  double rhs = 0.0;
};

struct MilpModel {
  std::string name = "model";
  bool maximize = true;
  /// Every integral-feasible point has an integer objective value, which
  /// sharpens the bound-based prune to the next integer.
  bool objective_is_integral = false;
  std::vector<MilpVariable> variables;
  std::vector<double> objective;
  std::vector<MilpConstraint> constraints;

  int num_vars() const { return static_cast<int>(variables.size()); }

  int add_variable(std::string name, VarKind kind, double lower, double upper,
                   double obj_coeff = 0.0) {
    variables.push_back({std::move(name), kind, lower, upper});
    objective.push_back(obj_coeff);
    return num_vars() - 1;
  }
  void add_constraint(std::string name, std::vector<std::pair<int, double>> terms, Rel rel,
                      double rhs) {
    constraints.push_back({std::move(name), std::move(terms), rel, rhs});
  }
};

enum class MilpStatus { Optimal, Infeasible, NodeLimit, Unbounded };

inline const char* to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::Optimal:
      return "optimal";
    case MilpStatus::Infeasible:
      return "infeasible";
    case MilpStatus::NodeLimit:
      return "node_limit";
    default:
      return "unbounded";
  }
}

struct MilpSolution {
  MilpStatus status = MilpStatus::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
  long nodes = 0;
};

inline constexpr double kIntegralityTol = 1e-6;
inline constexpr double kPruneTol = 1e-6;

namespace detail {

inline LpProblem to_lp(const MilpModel& model) {
  if (model.objective.size() != model.variables.size()) {
    throw DimensionMismatchError("milp: objective length does not match variable count");
  }
  LpProblem lp;
  lp.maximize = model.maximize;
  lp.objective = model.objective;
  lp.lower.reserve(model.variables.size());
  lp.upper.reserve(model.variables.size());
  for (const auto& v : model.variables) {
    double lo = v.lower, up = v.upper;
    if (v.kind == VarKind::Binary) {
      lo = std::max(lo, 0.0);
      up = std::min(up, 1.0);
    }
    lp.lower.push_back(lo);
    lp.upper.push_back(up);
  }
  for (const auto& c : model.constraints) lp.rows.push_back({c.terms, c.rel, c.rhs});
  return lp;
}

/// Shrink deactivation-style constants on binary columns of inequality
/// rows.  For a [0,1] integer y in a <= row, any slack beyond the box roof
/// of the remaining terms is dead weight: subtracting it from both the
/// coefficient and the rhs reproduces the same pair of rows at y = 0 and
/// y = 1 (the roof makes the y = 0 case equally vacuous) while closing the
/// fractional corridor a big constant opens up.  The mirror rule caps how
/// much relief a negatively-signed binary can buy.  Both rewrites are only
/// set-preserving for two-valued columns, so wider boxes are left alone.
inline void tighten_inequalities(LpProblem& lp, const MilpModel& model) {
  const int n = lp.num_vars();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (auto& row : lp.rows) {
    if (row.rel == Rel::Eq || row.terms.empty()) continue;
    bool dup = false;
    for (const auto& [j, c] : row.terms) {
      if (seen[j]) dup = true;
      seen[j] = 1;
    }
    for (const auto& [j, c] : row.terms) seen[j] = 0;
    if (dup) continue;

    const double sgn = row.rel == Rel::GreaterEq ? -1.0 : 1.0;
    double b = sgn * row.rhs;
    bool changed = true;
    for (int pass = 0; pass < 64 && changed; ++pass) {
      changed = false;
      double roof = 0.0;
      bool bounded = true;
      for (const auto& [j, c0] : row.terms) {
        const double c = sgn * c0;
        const double top = c >= 0.0 ? c * lp.upper[j] : c * lp.lower[j];
        if (!std::isfinite(top)) {
          bounded = false;
          break;
        }
        roof += top;
      }
      if (!bounded) break;
      for (auto& term : row.terms) {
        const int j = term.first;
        if (model.variables[j].kind == VarKind::Continuous) continue;
        if (lp.lower[j] != 0.0) continue;
        const double up = lp.upper[j];
        if (up != 1.0) continue;
        const double c = sgn * term.second;
        if (c > 0.0) {
          const double slack = b - (roof - c * up);
          if (slack > 1e-7 * std::max(1.0, std::abs(b))) {
            term.second = sgn * (c - slack);
            b -= slack;
            row.rhs = sgn * b;
            changed = true;
            break;
          }
        } else if (c < 0.0) {
          const double cap = b - roof;
          if (cap > c + 1e-7 * std::max(1.0, std::abs(c))) {
            term.second = sgn * cap;
            changed = true;
            break;
          }
        }
      }
    }
  }
}

/// Probe inequality rows for small sets of binaries that cannot all be on:
/// when two or three positive coefficients plus the floor of the remaining
/// terms already overflow the rhs, the corresponding clique row (sum <= 1
/// or <= 2) is valid for every integer point yet cuts off the fractional
/// corridor a big-M row leaves open.  Pairs subsume the triples they sit
/// inside; everything is deduplicated across rows.
inline void probe_conflicts(LpProblem& lp, const MilpModel& model) {
  const int n = lp.num_vars();
  const std::size_t orig_rows = lp.rows.size();
  std::set<std::array<int, 3>> cuts;
  std::vector<std::pair<double, int>> cand;
  for (std::size_t ri = 0; ri < orig_rows; ++ri) {
    const LpRow& row = lp.rows[ri];
    if (row.rel == Rel::Eq || row.terms.size() < 2) continue;
    const double sgn = row.rel == Rel::GreaterEq ? -1.0 : 1.0;
    const double b = sgn * row.rhs;
    double floor_sum = 0.0;
    bool usable = true;
    cand.clear();
    for (const auto& [j, c0] : row.terms) {
      const double c = sgn * c0;
      const double bottom = c >= 0.0 ? c * lp.lower[j] : c * lp.upper[j];
      if (!std::isfinite(bottom)) {
        usable = false;
        break;
      }
      floor_sum += bottom;
      if (model.variables[j].kind != VarKind::Continuous && lp.lower[j] == 0.0 &&
          lp.upper[j] == 1.0 && c > 0.0) {
        cand.emplace_back(c, j);
      }
    }
    if (!usable || cand.size() < 2) continue;
    std::sort(cand.begin(), cand.end(), std::greater<>());
    const double need = b - floor_sum + 1e-7 * std::max(1.0, std::abs(b));
    for (std::size_t a = 0; a + 1 < cand.size(); ++a) {
      if (cand[a].first + cand[a + 1].first <= need) break;
      for (std::size_t bb = a + 1; bb < cand.size(); ++bb) {
        if (cand[a].first + cand[bb].first <= need) break;
        int u = cand[a].second, v = cand[bb].second;
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        cuts.insert({u, v, -1});
      }
    }
    for (std::size_t a = 0; a + 2 < cand.size(); ++a) {
      for (std::size_t bb = a + 1; bb + 1 < cand.size(); ++bb) {
        if (cand[a].first + cand[bb].first + cand[bb + 1].first <= need) break;
        for (std::size_t cc = bb + 1; cc < cand.size(); ++cc) {
          if (cand[a].first + cand[bb].first + cand[cc].first <= need) break;
          std::array<int, 3> t{cand[a].second, cand[bb].second, cand[cc].second};
          std::sort(t.begin(), t.end());
          if (t[0] == t[1] || t[1] == t[2]) continue;
          if (cuts.count({t[0], t[1], -1}) || cuts.count({t[0], t[2], -1}) ||
              cuts.count({t[1], t[2], -1})) {
            continue;
          }
          cuts.insert(t);
        }
      }
    }
  }
  for (const auto& t : cuts) {
    LpRow cut;
    cut.rel = Rel::LessEq;
    if (t[2] < 0) {
      cut.terms = {{t[0], 1.0}, {t[1], 1.0}};
      cut.rhs = 1.0;
    } else {
      cut.terms = {{t[0], 1.0}, {t[1], 1.0}, {t[2], 1.0}};
      cut.rhs = 2.0;
    }
    lp.rows.push_back(std::move(cut));
  }
  (void)n;
}

}  // namespace detail

inline LpResult solve_lp_relaxation(const MilpModel& model) {
  return lp_solve(detail::to_lp(model));
}

/// Branch and bound: best-first over the open list, depth-first dives from
/// each popped node.  A single simplex instance survives the whole search;
/// moving between nodes only rewrites variable boxes and the dual phase
/// repairs feasibility, so most relaxations cost a few pivots.  Inequality
/// rows are coefficient-tightened and probed for conflict cliques up
/// front to shrink the root gap, and a fix-and-dive pass on the root
/// relaxation seeds the incumbent before the search starts.  Branching
/// picks the most fractional integer variable (ties by lowest index) and
/// dives toward the nearer integer, so runs are fully deterministic.
inline MilpSolution solve_bnb(const MilpModel& model, long node_limit = 1000000) {
  if (node_limit < 1) throw InvalidSpecError("milp: node limit must be >= 1");
  LpProblem base = detail::to_lp(model);
  detail::tighten_inequalities(base, model);
  detail::probe_conflicts(base, model);
  const int n = model.num_vars();
  const double sense = model.maximize ? 1.0 : -1.0;

  struct BoundChange {
    int var;
    double lo, up;
  };
  struct Node {
    long id;
    double bound;                   // parent relaxation value, in max terms
    std::vector<BoundChange> path;  // box overrides relative to the root
  };
  struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound < b.bound;
      return a.id < b.id;
    }
  };
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  open.push({0, kLpInfinity, {}});
  long next_id = 1;

  MilpSolution sol;
  sol.status = MilpStatus::Infeasible;
  bool have_incumbent = false;
  double inc_value = -kLpInfinity;  // in max terms

  auto prune_threshold = [&]() {
    if (!have_incumbent) return -kLpInfinity;
    return model.objective_is_integral ? std::round(inc_value) + 1.0 - kPruneTol
                                       : inc_value + kPruneTol;
  };

  LpProblem work = base;
  std::optional<detail::BoundedSimplex> solver(std::in_place, work);
  bool solver_started = false;
  bool warm_ready = false;
  long warm_streak = 0;
  std::vector<double> cur_lo = base.lower, cur_up = base.upper;

  auto cold_solve = [&]() {
    work.lower = cur_lo;
    work.upper = cur_up;
    solver.emplace(work);
    LpResult r = solver->run();
    warm_ready = r.status == LpStatus::Optimal;
    warm_streak = 0;
    return r;
  };
  auto node_lp = [&]() {
    if (!solver_started) {
      solver_started = true;
      LpResult r = solver->run();
      warm_ready = r.status == LpStatus::Optimal;
      return r;
    }
    // rerun() certifies its own answers and reports IterationLimit when
    // the tableau has decayed, so cold rebuilds are mostly on demand; the
    // streak cap is a backstop against slow undetected drift.
    if (warm_ready && ++warm_streak < 8192) {
      LpResult r = solver->rerun();
      if (r.status == LpStatus::Optimal || r.status == LpStatus::Infeasible) return r;
    }
    return cold_solve();
  };

  // Fix-and-dive on the root relaxation: snap every nearly integral
  // variable at once, pin the closest remaining one, and repeat until the
  // relaxation lands integral or dies.  An incumbent this early lets
  // best-first pruning bite from the first pop.
  bool has_integers = false;
  for (const auto& v : model.variables) {
    if (v.kind != VarKind::Continuous) has_integers = true;
  }
  if (has_integers) {
    solver_started = true;
    LpResult r = solver->run();
    warm_ready = r.status == LpStatus::Optimal;
    for (int step = 0; r.status == LpStatus::Optimal && step < 4 * n + 8; ++step) {
      bool moved = false;
      int pin = -1;
      double pin_frac = 2.0;
      for (int j = 0; j < n; ++j) {
        if (model.variables[j].kind == VarKind::Continuous) continue;
        const double x = r.x[j];
        const double frac = std::abs(x - std::round(x));
        if (frac <= kIntegralityTol) continue;
        if (frac <= 0.1) {
          const double rx = std::min(cur_up[j], std::max(cur_lo[j], std::round(x)));
          cur_lo[j] = cur_up[j] = rx;
          solver->set_var_bounds(j, rx, rx);
          moved = true;
        } else if (frac < pin_frac) {
          pin_frac = frac;
          pin = j;
        }
      }
      if (!moved && pin >= 0) {
        const double rx =
            std::min(cur_up[pin], std::max(cur_lo[pin], std::round(r.x[pin])));
        cur_lo[pin] = cur_up[pin] = rx;
        solver->set_var_bounds(pin, rx, rx);
        moved = true;
      }
      if (!moved) {
        std::vector<double> snapped = r.x;
        for (int j = 0; j < n; ++j) {
          if (model.variables[j].kind != VarKind::Continuous) snapped[j] = std::round(snapped[j]);
        }
        bool ok = true;
        for (const auto& c : model.constraints) {
          double act = 0.0;
          for (const auto& [j, cc] : c.terms) act += cc * snapped[j];
          const double tol = 1e-6 * std::max(1.0, std::abs(c.rhs));
          if ((c.rel == Rel::LessEq && act > c.rhs + tol) ||
              (c.rel == Rel::GreaterEq && act < c.rhs - tol) ||
              (c.rel == Rel::Eq && std::abs(act - c.rhs) > tol)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          double obj = 0.0;
          for (int j = 0; j < n; ++j) obj += model.objective[j] * snapped[j];
          have_incumbent = true;
          inc_value = sense * obj;
          sol.values = std::move(snapped);
          sol.objective = obj;
          sol.status = MilpStatus::Optimal;
        }
        break;
      }
      r = node_lp();
    }
    for (int j = 0; j < n; ++j) {
      if (cur_lo[j] != base.lower[j] || cur_up[j] != base.upper[j]) {
        cur_lo[j] = base.lower[j];
        cur_up[j] = base.upper[j];
        solver->set_var_bounds(j, cur_lo[j], cur_up[j]);
      }
    }
  }

  std::vector<double> tgt_lo, tgt_up;
  while (!open.empty()) {
    if (open.top().bound <= prune_threshold()) break;
    Node node = open.top();
    open.pop();

    // Rebuild this node's box and sync the solver to it.
    tgt_lo = base.lower;
    tgt_up = base.upper;
    for (const BoundChange& ch : node.path) {
      tgt_lo[ch.var] = ch.lo;
      tgt_up[ch.var] = ch.up;
    }
    bool crossed = false;
    for (int j = 0; j < n && !crossed; ++j) crossed = tgt_lo[j] > tgt_up[j];
    if (crossed) continue;
    for (int j = 0; j < n; ++j) {
      if (tgt_lo[j] != cur_lo[j] || tgt_up[j] != cur_up[j]) {
        cur_lo[j] = tgt_lo[j];
        cur_up[j] = tgt_up[j];
        if (solver_started) solver->set_var_bounds(j, tgt_lo[j], tgt_up[j]);
      }
    }

    while (true) {  // dive until this subtree is settled
      if (sol.nodes >= node_limit) {
        sol.status = MilpStatus::NodeLimit;
        return sol;
      }
      ++sol.nodes;
      const LpResult rel = node_lp();
      if (rel.status == LpStatus::Infeasible) break;
      if (rel.status == LpStatus::Unbounded) {
        sol.status = MilpStatus::Unbounded;
        return sol;
      }
      if (rel.status == LpStatus::IterationLimit) {
        throw Error("milp: relaxation hit the simplex iteration limit");
      }
      const double bound = sense * rel.objective;
      if (bound <= prune_threshold()) break;

      int branch_var = -1;
      double best_frac = kIntegralityTol;
      for (int j = 0; j < n; ++j) {
        if (model.variables[j].kind == VarKind::Continuous) continue;
        const double x = rel.x[j];
        const double frac = std::abs(x - std::round(x));
        if (frac > best_frac) {
          best_frac = frac;
          branch_var = j;
        }
      }
      if (branch_var < 0) {
        std::vector<double> snapped = rel.x;
        for (int j = 0; j < n; ++j) {
          if (model.variables[j].kind != VarKind::Continuous) snapped[j] = std::round(snapped[j]);
        }
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += model.objective[j] * snapped[j];
        if (!have_incumbent || sense * obj > inc_value) {
          have_incumbent = true;
          inc_value = sense * obj;
          sol.values = std::move(snapped);
          sol.objective = obj;
          sol.status = MilpStatus::Optimal;
        }
        break;
      }

      const double x = rel.x[branch_var];
      const double fl = std::floor(x), ce = std::ceil(x);
      const bool dive_up = x - fl >= 0.5;
      Node sibling{next_id++, bound, node.path};
      sibling.path.push_back(dive_up ? BoundChange{branch_var, cur_lo[branch_var], fl}
                                     : BoundChange{branch_var, ce, cur_up[branch_var]});
      open.push(std::move(sibling));

      const double new_lo = dive_up ? ce : cur_lo[branch_var];
      const double new_up = dive_up ? cur_up[branch_var] : fl;
      node.path.push_back({branch_var, new_lo, new_up});
      if (new_lo > new_up) break;  // no integer left on the dive side
      cur_lo[branch_var] = new_lo;
      cur_up[branch_var] = new_up;
      solver->set_var_bounds(branch_var, new_lo, new_up);
    }
  }
  return sol;
}

}  // namespace saginet
