#pragma once

#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace saginet {

struct MatchingResult {
  int size = 0;
  std::vector<int> match_left;   // per left vertex: matched right vertex or -1
  std::vector<int> match_right;  // per right vertex: matched left vertex or -1
};

/// Hopcroft-Karp maximum cardinality matching.  `adj[l]` lists the right
/// vertices reachable from left vertex l; neighbor order fixes which optimal
/// matching is returned, so the result is deterministic.
inline MatchingResult max_bipartite_matching(int num_left, int num_right,
                                             const std::vector<std::vector<int>>& adj) {
  constexpr int kInf = std::numeric_limits<int>::max();
  MatchingResult res;
  res.match_left.assign(num_left, -1);
  res.match_right.assign(num_right, -1);
  std::vector<int> dist(num_left, kInf);

  auto bfs = [&]() {
    std::queue<int> q;
    bool reachable_free = false;
    for (int l = 0; l < num_left; ++l) {
      if (res.match_left[l] == -1) {
        dist[l] = 0;
        q.push(l);
      } else {
        dist[l] = kInf;
      }
    }
    while (!q.empty()) {
      const int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        const int l2 = res.match_right[r];
        if (l2 == -1) {
          reachable_free = true;
        } else if (dist[l2] == kInf) {
          dist[l2] = dist[l] + 1;
          q.push(l2);
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(int)> dfs = [&](int l) {
    for (int r : adj[l]) {
      const int l2 = res.match_right[r];
      if (l2 == -1 || (dist[l2] == dist[l] + 1 && dfs(l2))) {
        res.match_left[l] = r;
        res.match_right[r] = l;
        return true;
      }
    }
    dist[l] = kInf;
    return false;
  };

  while (bfs()) {
    for (int l = 0; l < num_left; ++l) {
      if (res.match_left[l] == -1 && dfs(l)) ++res.size;
    }
  }
  return res;
}

}  // namespace saginet
