#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "saginet/errors.hpp"
#include "saginet/matching.hpp"
#include "saginet/optimizer.hpp"
#include "saginet/topology.hpp"

namespace saginet {

namespace detail {

inline int strongest_sensing_ap(const TopologyGraph& g) {
  const int sen = g.sensing_col();
  int best = -1;
  double best_w = 0.0;
  for (int m = 0; m < g.num_aps; ++m) {
    const double w = g.w(m, sen);
    if (w > best_w) {
      best_w = w;
      best = m;
    }
  }
  return best;
}

inline void fill_matching(const TopologyGraph& g, IscptDecision& d) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.num_aps));
  for (int m = 0; m < g.num_aps; ++m) {
    for (int k = 0; k < g.num_comm; ++k) {
      if (g.adj(m, k) && d.u[k]) adj[m].push_back(k);
    }
  }
  const MatchingResult match = max_bipartite_matching(g.num_aps, g.num_comm, adj);
  d.z.assign(static_cast<std::size_t>(g.num_aps) * g.num_comm, 0.0);
  for (int m = 0; m < g.num_aps; ++m) {
    if (match.match_left[m] >= 0) {
      d.z[static_cast<std::size_t>(m) * g.num_comm + match.match_left[m]] = 1.0;
    }
  }
  d.matching_value = match.size;
}

}  // namespace detail

/// Keep everything on; only the sensing AP is chosen (strongest dominant
/// link, ties to the lowest index).
inline IscptDecision no_selection(const TopologyGraph& g) {
  detail::check_graph(g);
  IscptDecision d;
  d.u.assign(static_cast<std::size_t>(g.num_comm), 1);
  d.v.assign(static_cast<std::size_t>(g.num_aps), 1);
  d.v_s.assign(static_cast<std::size_t>(g.num_aps), 0);
  if (g.has_sensing) {
    const int ms = detail::strongest_sensing_ap(g);
    if (ms < 0) throw NoSensingLinkError("sensing target has no dominant link to any AP");
    d.v_s[ms] = 1;
  }
  detail::fill_matching(g, d);
  return d;
}

/// Semi-orthogonal greedy admission over dominant weight columns: walk
/// users by descending column norm and admit each whose normalized inner
/// product with every admitted column stays at or below the threshold.
/// APs are never deactivated; the sensing pick matches no_selection except
/// that an isolated target yields an empty selector instead of an error.
inline IscptDecision greedy_user_selection(const TopologyGraph& g, double corr_threshold = 0.5) {
  detail::check_graph(g);
  if (corr_threshold < 0.0 || corr_threshold > 1.0) {
    throw InvalidSpecError("correlation threshold must lie in [0,1]");
  }
  const int m_total = g.num_aps;
  auto col_dot = [&](int a, int b) {
    double s = 0.0;
    for (int m = 0; m < m_total; ++m) s += g.w(m, a) * g.w(m, b);
    return s;
  };
  std::vector<double> norm(static_cast<std::size_t>(g.num_comm));
  for (int k = 0; k < g.num_comm; ++k) norm[k] = std::sqrt(col_dot(k, k));
  std::vector<int> order(static_cast<std::size_t>(g.num_comm));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return norm[a] > norm[b]; });

  IscptDecision d;
  d.u.assign(static_cast<std::size_t>(g.num_comm), 0);
  d.v.assign(static_cast<std::size_t>(m_total), 1);
  d.v_s.assign(static_cast<std::size_t>(m_total), 0);
  std::vector<int> admitted;
  for (int k : order) {
    if (norm[k] <= 0.0) continue;
    bool ok = true;
    for (int j : admitted) {
      if (std::abs(col_dot(k, j)) / (norm[k] * norm[j]) > corr_threshold) {
        ok = false;
        break;
      }
    }
    if (ok) {
      admitted.push_back(k);
      d.u[k] = 1;
    }
  }
  if (g.has_sensing) {
    const int ms = detail::strongest_sensing_ap(g);
    if (ms >= 0) d.v_s[ms] = 1;
  }
  detail::fill_matching(g, d);
  return d;
}

}  // namespace saginet
