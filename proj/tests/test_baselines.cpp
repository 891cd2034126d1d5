#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "saginet/baselines.hpp"
#include "saginet/errors.hpp"
#include "saginet/matching.hpp"
#include "saginet/topology.hpp"
#include "support/random_graph.hpp"

using namespace saginet;
using testsupport::make_random_graph;

namespace {

TopologyGraph graph_from_columns(const std::vector<std::vector<double>>& cols, int num_comm,
                                 bool sensing, int num_charge) {
  TopologyGraph g;
  g.num_aps = static_cast<int>(cols[0].size());
  g.num_comm = num_comm;
  g.has_sensing = sensing;
  g.num_charge = num_charge;
  g.adjacency.assign(static_cast<std::size_t>(g.num_aps) * g.num_users(), 0);
  g.weights.assign(g.adjacency.size(), 0.0);
  for (int k = 0; k < g.num_users(); ++k) {
    for (int m = 0; m < g.num_aps; ++m) {
      const double w = cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
      if (w != 0.0) {
        g.adjacency[g.at(m, k)] = 1;
        g.weights[g.at(m, k)] = w;
      }
    }
  }
  g.full_weights = g.weights;
  return g;
}

}  // namespace

TEST_CASE("no selection keeps everything on", "[baselines]") {
  std::mt19937_64 rng(41);
  const TopologyGraph g = make_random_graph(rng, 5, 4, true, 1);
  const IscptDecision d = no_selection(g);
  CHECK(d.u == std::vector<int>(4, 1));
  CHECK(d.v == std::vector<int>(5, 1));

  int picks = 0;
  double best = 0.0;
  int best_m = -1;
  for (int m = 0; m < g.num_aps; ++m) {
    picks += d.v_s[m];
    if (g.w(m, g.sensing_col()) > best) {
      best = g.w(m, g.sensing_col());
      best_m = m;
    }
  }
  CHECK(picks == 1);
  CHECK(d.v_s[best_m] == 1);

  std::vector<std::vector<int>> adj(g.num_aps);
  for (int m = 0; m < g.num_aps; ++m) {
    for (int k = 0; k < g.num_comm; ++k) {
      if (g.adj(m, k)) adj[m].push_back(k);
    }
  }
  CHECK(d.matching_value == max_bipartite_matching(g.num_aps, g.num_comm, adj).size);
}

TEST_CASE("no selection breaks sensing ties to the lowest index", "[baselines]") {
  const TopologyGraph g =
      graph_from_columns({{1.0, 1.0, 1.0}, {0.0, 0.7, 0.7}}, 1, true, 0);
  const IscptDecision d = no_selection(g);
  CHECK(d.v_s == std::vector<int>{0, 1, 0});
}

TEST_CASE("no selection fails without a sensing link", "[baselines]") {
  const TopologyGraph g = graph_from_columns({{1.0, 0.5}, {0.0, 0.0}}, 1, true, 0);
  CHECK_THROWS_AS(no_selection(g), NoSensingLinkError);
}

TEST_CASE("greedy admits orthogonal columns and prunes clones", "[baselines]") {
  {
    // Disjoint support: every user admitted no matter the threshold.
    const TopologyGraph g = graph_from_columns(
        {{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 0.5}}, 3, false, 0);
    const IscptDecision d = greedy_user_selection(g, 0.0);
    CHECK(d.u == std::vector<int>{1, 1, 1});
    CHECK(d.matching_value == 3);
  }
  {
    // Identical columns: only the first survives (stable sort keeps index
    // order among equal norms).
    const TopologyGraph g = graph_from_columns(
        {{1.0, 1.0, 0.0}, {1.0, 1.0, 0.0}, {1.0, 1.0, 0.0}}, 3, false, 0);
    const IscptDecision d = greedy_user_selection(g, 0.5);
    CHECK(d.u == std::vector<int>{1, 0, 0});
    CHECK(d.matching_value == 1);
  }
  {
    // Threshold one tolerates full collinearity.
    const TopologyGraph g = graph_from_columns(
        {{1.0, 1.0, 0.0}, {1.0, 1.0, 0.0}}, 2, false, 0);
    const IscptDecision d = greedy_user_selection(g, 1.0);
    CHECK(d.u == std::vector<int>{1, 1});
  }
  {
    // Threshold zero rejects any overlap.
    const TopologyGraph g = graph_from_columns(
        {{1.0, 0.4, 0.0}, {0.0, 0.4, 1.0}}, 2, false, 0);
    const IscptDecision d = greedy_user_selection(g, 0.0);
    CHECK(d.u[0] + d.u[1] == 1);
  }
}

TEST_CASE("greedy walks users by descending column norm", "[baselines]") {
  // User 1 has the largest norm and gets admitted first; user 0 correlates
  // with it and is dropped, user 2 is orthogonal and stays.
  const TopologyGraph g = graph_from_columns(
      {{1.0, 1.0, 0.0}, {2.0, 2.0, 0.0}, {0.0, 0.0, 1.0}}, 3, false, 0);
  const IscptDecision d = greedy_user_selection(g, 0.5);
  CHECK(d.u == std::vector<int>{0, 1, 1});
}

TEST_CASE("greedy leaves zero-norm users and isolated targets out", "[baselines]") {
  // User 1 has no links at all; the sensing target is isolated too.
  const TopologyGraph g = graph_from_columns(
      {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}, 2, true, 0);
  const IscptDecision d = greedy_user_selection(g, 1.0);
  CHECK(d.u == std::vector<int>{1, 0});
  CHECK(d.v_s == std::vector<int>{0, 0});
  CHECK(d.matching_value == 1);
}

TEST_CASE("greedy validates the threshold", "[baselines]") {
  std::mt19937_64 rng(9);
  const TopologyGraph g = make_random_graph(rng, 3, 2, false, 0);
  CHECK_THROWS_AS(greedy_user_selection(g, -0.01), InvalidSpecError);
  CHECK_THROWS_AS(greedy_user_selection(g, 1.01), InvalidSpecError);
}

TEST_CASE("baseline matchings agree with the library matcher", "[baselines]") {
  std::mt19937_64 rng(1234);
  for (int t = 0; t < 40; ++t) {
    const TopologyGraph g = make_random_graph(rng, 2 + t % 5, 1 + t % 4, t % 2 == 0, t % 2);
    const IscptDecision d = greedy_user_selection(g, 0.3 + 0.1 * (t % 7));
    std::vector<std::vector<int>> adj(g.num_aps);
    for (int m = 0; m < g.num_aps; ++m) {
      for (int k = 0; k < g.num_comm; ++k) {
        if (g.adj(m, k) && d.u[k]) adj[m].push_back(k);
      }
    }
    CHECK(d.matching_value == max_bipartite_matching(g.num_aps, g.num_comm, adj).size);
    double zsum = 0.0;
    for (double z : d.z) zsum += z;
    CHECK(zsum == static_cast<double>(d.matching_value));
    for (int m = 0; m < g.num_aps; ++m) {
      for (int k = 0; k < g.num_comm; ++k) {
        if (d.z_at(m, k) != 0.0) {
          CHECK(g.adj(m, k));
          CHECK(d.u[k] == 1);
        }
      }
    }
  }
}
