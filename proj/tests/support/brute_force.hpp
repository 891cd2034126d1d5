#pragma once

// Exhaustive reference for the selection MILP. Enumerates every binary
// (u, v, v_s) pattern, checks the threshold constraints in their logical
// (pre-big-M) form on the raw weights, and scores feasible patterns with a
// Kuhn augmenting-path matching. Only viable for tiny instances.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "saginet/optimizer.hpp"
#include "saginet/topology.hpp"

namespace testsupport {

struct BruteForceResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<int> u, v, v_s;
};

namespace detail {

inline int kuhn_matching(const saginet::TopologyGraph& g, const std::vector<int>& u,
                         const std::vector<int>& v) {
  const int big_m = g.num_aps;
  const int big_k = g.num_comm;
  std::vector<int> match_of_comm(big_k, -1);
  std::vector<char> seen(big_k, 0);
  std::function<bool(int)> augment = [&](int m) -> bool {
    for (int k = 0; k < big_k; ++k) {
      if (!u[k] || seen[k] || !g.adj(m, k)) continue;
      seen[k] = 1;
      if (match_of_comm[k] < 0 || augment(match_of_comm[k])) {
        match_of_comm[k] = m;
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (int m = 0; m < big_m; ++m) {
    if (!v[m]) continue;
    std::fill(seen.begin(), seen.end(), 0);
    if (augment(m)) ++size;
  }
  return size;
}

inline bool loose_ge(double lhs, double rhs) {
  return lhs >= rhs - 1e-9 * (1.0 + std::abs(rhs));
}

}  // namespace detail

inline BruteForceResult brute_force_p2(const saginet::TopologyGraph& g,
                                       const saginet::IscptThresholds& thr) {
  const int big_m = g.num_aps;
  const int big_k = g.num_comm;
  const int sen = g.sensing_col();
  BruteForceResult best;

  auto w_sen = [&](int m) { return g.has_sensing ? g.w(m, sen) : 0.0; };

  // The charge row depends only on v; precompute per-AP charge weight sums.
  std::vector<double> charge_row(big_m, 0.0);
  double charge_total = 0.0;
  for (int m = 0; m < big_m; ++m) {
    for (int c = 0; c < g.num_charge; ++c) {
      const double w = g.w(m, g.charge_col0() + c);
      charge_row[m] += thr.power_constraint_squared ? w * w : w;
    }
    charge_total += charge_row[m];
  }

  std::vector<int> u(big_k), v(big_m), v_s(big_m);
  for (unsigned long um = 0; um < (1UL << big_k); ++um) {
    for (int k = 0; k < big_k; ++k) u[k] = (um >> k) & 1U;
    for (unsigned long vm = 0; vm < (1UL << big_m); ++vm) {
      for (int m = 0; m < big_m; ++m) v[m] = (vm >> m) & 1U;

      bool ok = true;
      for (int k = 0; k < big_k && ok; ++k) {
        int reach = 0;
        for (int m = 0; m < big_m; ++m) reach += v[m] && g.adj(m, k);
        if (u[k] > reach) ok = false;
      }
      for (int m = 0; m < big_m && ok; ++m) {
        int reach = (g.has_sensing && g.adj(m, sen)) ? 1 : 0;
        for (int c = 0; c < g.num_charge; ++c) reach += g.adj(m, g.charge_col0() + c);
        for (int k = 0; k < big_k; ++k) reach += u[k] && g.adj(m, k);
        if (v[m] > reach) ok = false;
      }
      if (!ok) continue;
      if (g.num_charge > 0) {
        double lhs = 0.0;
        for (int m = 0; m < big_m; ++m) lhs += v[m] * charge_row[m];
        if (!detail::loose_ge(lhs, thr.tau_hat_p * charge_total)) continue;
      }

      // Candidate sensing assignments: one active AP that can see the target.
      std::vector<int> sensing_choices;
      if (g.has_sensing) {
        for (int m = 0; m < big_m; ++m) {
          if (v[m] && g.adj(m, sen)) sensing_choices.push_back(m);
        }
        if (sensing_choices.empty()) continue;
      } else {
        sensing_choices.push_back(-1);
      }

      for (int ms : sensing_choices) {
        std::fill(v_s.begin(), v_s.end(), 0);
        if (ms >= 0) v_s[ms] = 1;

        bool feas = true;
        for (int m = 0; m < big_m && feas; ++m) {
          if (!v[m]) continue;
          for (int k = 0; k < big_k && feas; ++k) {
            if (!u[k] || !g.adj(m, k)) continue;
            const double wmk = g.w(m, k);
            double rhs = v_s[m] * wmk * w_sen(m);
            for (int kp = 0; kp < big_k; ++kp) {
              if (thr.exclude_self && kp == k) continue;
              rhs += u[kp] * wmk * g.w(m, kp);
            }
            if (!detail::loose_ge(wmk * wmk, thr.tau_hat_c * rhs)) feas = false;
          }
        }
        if (feas && g.has_sensing) {
          double s_own = 0.0;
          for (int m = 0; m < big_m; ++m) s_own += v_s[m] * w_sen(m) * w_sen(m);
          for (int k = 0; k < big_k && feas; ++k) {
            if (!u[k]) continue;
            double cross = 0.0;
            for (int m = 0; m < big_m; ++m) cross += v[m] * g.w(m, k) * w_sen(m);
            if (!detail::loose_ge(s_own, thr.tau_hat_s * (s_own + cross))) feas = false;
          }
        }
        if (!feas) continue;

        const int value = detail::kuhn_matching(g, u, v);
        if (!best.feasible || value > best.objective) {
          best.feasible = true;
          best.objective = value;
          best.u = u;
          best.v = v;
          best.v_s = v_s;
        }
      }
    }
  }
  return best;
}

}  // namespace testsupport
