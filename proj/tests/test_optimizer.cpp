#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "saginet/errors.hpp"
#include "saginet/matching.hpp"
#include "saginet/optimizer.hpp"
#include "saginet/topology.hpp"
#include "support/brute_force.hpp"
#include "support/random_graph.hpp"

using namespace saginet;
using Catch::Approx;
using testsupport::brute_force_p2;
using testsupport::make_random_graph;

namespace {

TopologyGraph empty_graph(int num_aps, int num_comm, bool sensing, int num_charge) {
  TopologyGraph g;
  g.num_aps = num_aps;
  g.num_comm = num_comm;
  g.has_sensing = sensing;
  g.num_charge = num_charge;
  g.adjacency.assign(static_cast<std::size_t>(num_aps) * g.num_users(), 0);
  g.weights.assign(g.adjacency.size(), 0.0);
  g.full_weights = g.weights;
  return g;
}

void link(TopologyGraph& g, int m, int k, double w) {
  g.adjacency[g.at(m, k)] = 1;
  g.weights[g.at(m, k)] = w;
  g.full_weights[g.at(m, k)] = w;
}

double z_total(const IscptDecision& d) {
  double s = 0.0;
  for (double x : d.z) s += x;
  return s;
}

}  // namespace

TEST_CASE("identity adjacency activates everything", "[optimizer]") {
  // Two APs, two users, one sensing target; AP m sees only user m plus the
  // target, so the only optimum is the full activation with matching 2.
  TopologyGraph g = empty_graph(2, 2, true, 0);
  link(g, 0, 0, 1.0);
  link(g, 1, 1, 1.0);
  link(g, 0, g.sensing_col(), 0.4);
  IscptThresholds thr;
  thr.tau_hat_c = 0.4;
  thr.tau_hat_p = 0.5;
  thr.tau_hat_s = 0.1;
  const IscptResult res = solve_iscpt_full(g, thr);
  REQUIRE(res.status == MilpStatus::Optimal);
  CHECK(res.objective == Approx(2.0).margin(1e-9));
  CHECK(res.decision.matching_value == 2);
  CHECK(res.decision.u == std::vector<int>{1, 1});
  CHECK(res.decision.v == std::vector<int>{1, 1});
  CHECK(res.decision.v_s == std::vector<int>{1, 0});
  CHECK(res.decision.z_at(0, 0) == Approx(1.0).margin(1e-9));
  CHECK(res.decision.z_at(1, 1) == Approx(1.0).margin(1e-9));
  CHECK(res.decision.z_at(0, 1) == 0.0);
}

TEST_CASE("zero thresholds reduce to maximum matching", "[optimizer]") {
  std::mt19937_64 rng(5150);
  IscptThresholds thr;
  thr.tau_hat_c = thr.tau_hat_p = thr.tau_hat_s = 0.0;
  for (int t = 0; t < 25; ++t) {
    const TopologyGraph g = make_random_graph(rng, 2 + t % 6, 1 + t % 5, true, t % 3);
    std::vector<std::vector<int>> adj(g.num_aps);
    for (int m = 0; m < g.num_aps; ++m) {
      for (int k = 0; k < g.num_comm; ++k) {
        if (g.adj(m, k)) adj[m].push_back(k);
      }
    }
    const int want = max_bipartite_matching(g.num_aps, g.num_comm, adj).size;
    const IscptResult res = solve_iscpt_full(g, thr);
    REQUIRE(res.status == MilpStatus::Optimal);
    CHECK(res.decision.matching_value == want);
  }
}

TEST_CASE("solver agrees with exhaustive enumeration", "[optimizer]") {
  std::mt19937_64 rng(7321);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int feasible_seen = 0;
  for (int t = 0; t < 60; ++t) {
    const TopologyGraph g = make_random_graph(rng, 2 + t % 4, 1 + t % 3, t % 2 == 0, t % 3);
    IscptThresholds thr;
    thr.tau_hat_c = u01(rng);
    thr.tau_hat_p = u01(rng);
    thr.tau_hat_s = u01(rng);
    thr.exclude_self = t % 5 == 0;
    thr.power_constraint_squared = t % 7 == 0;
    const testsupport::BruteForceResult want = brute_force_p2(g, thr);
    // Any graph whose sensing row is satisfiable admits the all-off fallback,
    // so the enumeration must agree that these instances are feasible.
    REQUIRE(want.feasible);
    ++feasible_seen;
    const IscptResult res = solve_iscpt_full(g, thr);
    REQUIRE(res.status == MilpStatus::Optimal);
    CHECK(res.objective == Approx(want.objective).margin(1e-6));
    CHECK(res.decision.matching_value ==
          static_cast<int>(std::lround(want.objective)));
    CHECK(z_total(res.decision) == Approx(res.objective).margin(1e-6));
    for (int m = 0; m < g.num_aps; ++m) {
      CHECK(res.decision.v_s[m] <= res.decision.v[m]);
      for (int k = 0; k < g.num_comm; ++k) {
        if (!g.adj(m, k)) CHECK(res.decision.z_at(m, k) == 0.0);
      }
    }
  }
  CHECK(feasible_seen == 60);

  // Severing every sensing link is the one way to make the model infeasible;
  // the enumeration and the solver must agree on that too.
  for (int t = 0; t < 5; ++t) {
    TopologyGraph g = make_random_graph(rng, 3, 2, true, 1);
    for (int m = 0; m < g.num_aps; ++m) {
      g.adjacency[g.at(m, g.sensing_col())] = 0;
      g.weights[g.at(m, g.sensing_col())] = 0.0;
      g.full_weights[g.at(m, g.sensing_col())] = 0.0;
    }
    IscptThresholds thr;
    thr.tau_hat_s = u01(rng);
    CHECK_FALSE(brute_force_p2(g, thr).feasible);
    CHECK_THROWS_AS(solve_iscpt_full(g, thr), InfeasibleError);
  }
}

TEST_CASE("self interference flag splits a crafted instance", "[optimizer]") {
  // Complete 2x2 graph with unit weights: counting the served user itself
  // makes tau 0.6 unreachable for two active users, dropping it admits both.
  TopologyGraph g = empty_graph(2, 2, false, 0);
  for (int m = 0; m < 2; ++m) {
    for (int k = 0; k < 2; ++k) link(g, m, k, 1.0);
  }
  IscptThresholds thr;
  thr.tau_hat_c = 0.6;
  thr.tau_hat_p = 0.0;
  thr.tau_hat_s = 0.0;

  thr.exclude_self = false;
  const IscptResult with_self = solve_iscpt_full(g, thr);
  CHECK(with_self.decision.matching_value == 1);
  CHECK(brute_force_p2(g, thr).objective == Approx(1.0));

  thr.exclude_self = true;
  const IscptResult cross_only = solve_iscpt_full(g, thr);
  CHECK(cross_only.decision.matching_value == 2);
  CHECK(brute_force_p2(g, thr).objective == Approx(2.0));
}

TEST_CASE("charge row pins charge-visible access points", "[optimizer]") {
  std::mt19937_64 rng(332);
  const TopologyGraph g = make_random_graph(rng, 5, 3, false, 2, 0.7);
  IscptThresholds thr;
  thr.tau_hat_c = 0.0;
  thr.tau_hat_s = 0.0;

  thr.tau_hat_p = 1.0;
  const IscptResult pinned = solve_iscpt_full(g, thr);
  for (int m = 0; m < g.num_aps; ++m) {
    bool sees_charge = false;
    for (int p = 0; p < g.num_charge; ++p) {
      sees_charge = sees_charge || g.adj(m, g.charge_col0() + p);
    }
    if (sees_charge) CHECK(pinned.decision.v[m] == 1);
  }

  thr.tau_hat_p = 0.0;
  const IscptResult loose = solve_iscpt_full(g, thr);
  CHECK(loose.decision.matching_value >= pinned.decision.matching_value);
}

TEST_CASE("model rows match their printed forms", "[optimizer]") {
  TopologyGraph g = empty_graph(2, 1, true, 1);
  link(g, 0, 0, 2.0);
  link(g, 0, g.sensing_col(), 1.0);
  link(g, 0, g.charge_col0(), 0.5);
  link(g, 1, g.charge_col0(), 2.0);
  IscptThresholds thr;
  thr.tau_hat_c = 0.5;
  thr.tau_hat_p = 0.5;
  thr.tau_hat_s = 0.5;

  const P2Build built = build_p2_model(g, thr);
  const MilpModel& m = built.model;

  // Weights are rescaled by the max entry (2.0) before assembly.
  const double w00 = 1.0, wsen = 0.5, wch0 = 0.25, wch1 = 1.0;

  const MilpConstraint* grow = nullptr;
  const MilpConstraint* hrow = nullptr;
  const MilpConstraint* krow = nullptr;
  for (const auto& c : m.constraints) {
    if (c.name == "g0_0") grow = &c;
    if (c.name == "h") hrow = &c;
    if (c.name == "k") krow = &c;
  }
  REQUIRE(grow != nullptr);
  REQUIRE(hrow != nullptr);
  REQUIRE(krow != nullptr);

  const BigM big = compute_bigM(g, thr);
  // compute_bigM works on raw weights; the model uses rescaled ones, so the
  // raw constants shrink by the square of the scale.
  CHECK(grow->rhs == Approx(w00 * w00 + 2.0 * (big.c1 / 4.0)).margin(1e-12));
  double self_coeff = 0.0;
  double vs_coeff = 0.0;
  for (const auto& [j, c] : grow->terms) {
    if (j == built.layout.u_var[0]) self_coeff = c;
    if (j == built.layout.vs_var[0]) vs_coeff = c;
  }
  CHECK(self_coeff == Approx(thr.tau_hat_c * w00 * w00 + big.c1 / 4.0).margin(1e-12));
  CHECK(vs_coeff == Approx(thr.tau_hat_c * w00 * wsen).margin(1e-12));

  REQUIRE(hrow->rel == Rel::GreaterEq);
  CHECK(hrow->rhs == Approx(thr.tau_hat_p * (wch0 + wch1)).margin(1e-12));

  REQUIRE(krow->rel == Rel::Eq);
  REQUIRE(krow->terms.size() == 1);
  CHECK(krow->terms[0].first == built.layout.vs_var[0]);
  CHECK(m.variables[built.layout.vs_var[1]].upper == 0.0);

  IscptThresholds sq = thr;
  sq.power_constraint_squared = true;
  const P2Build built_sq = build_p2_model(g, sq);
  for (const auto& c : built_sq.model.constraints) {
    if (c.name != "h") continue;
    CHECK(c.rhs == Approx(sq.tau_hat_p * (wch0 * wch0 + wch1 * wch1)).margin(1e-12));
  }
}

TEST_CASE("big-M constants match their definition", "[optimizer]") {
  std::mt19937_64 rng(88);
  const TopologyGraph g = make_random_graph(rng, 4, 3, true, 1);
  IscptThresholds thr;
  thr.tau_hat_c = 0.7;
  thr.tau_hat_s = 0.6;
  const BigM big = compute_bigM(g, thr);

  double c1 = 0.0;
  for (int m = 0; m < g.num_aps; ++m) {
    double row = g.w(m, g.sensing_col());
    for (int k = 0; k < g.num_comm; ++k) row += g.w(m, k);
    for (int k = 0; k < g.num_comm; ++k) {
      c1 = std::max(c1, thr.tau_hat_c * g.w(m, k) * row);
    }
  }
  CHECK(big.c1 == Approx(1.05 * c1).margin(1e-12));
  CHECK(big.c2 == big.c1);

  double sig = 0.0;
  for (int m = 0; m < g.num_aps; ++m) {
    sig += g.w(m, g.sensing_col()) * g.w(m, g.sensing_col());
  }
  double c4 = 0.0;
  for (int k = 0; k < g.num_comm; ++k) {
    double cross = 0.0;
    for (int m = 0; m < g.num_aps; ++m) cross += g.w(m, k) * g.w(m, g.sensing_col());
    c4 = std::max(c4, thr.tau_hat_s * (sig + cross));
  }
  CHECK(big.c4 == Approx(1.05 * c4).margin(1e-12));

  const TopologyGraph plain = make_random_graph(rng, 3, 2, false, 0);
  CHECK(compute_bigM(plain, thr).c4 == 0.0);
}

TEST_CASE("degenerate graphs are rejected or excluded", "[optimizer]") {
  IscptThresholds thr;
  CHECK_THROWS_AS(build_p2(empty_graph(0, 3, false, 0), thr), MalformedGraphError);
  CHECK_THROWS_AS(build_p2(empty_graph(3, 0, false, 0), thr), MalformedGraphError);
  {
    TopologyGraph g = empty_graph(2, 1, false, 0);
    g.weights.pop_back();
    CHECK_THROWS_AS(build_p2(g, thr), MalformedGraphError);
  }
  {
    IscptThresholds bad;
    bad.tau_hat_c = 1.5;
    CHECK_THROWS_AS(build_p2(empty_graph(1, 1, false, 0), bad), InvalidSpecError);
    bad.tau_hat_c = -0.1;
    CHECK_THROWS_AS(build_p2(empty_graph(1, 1, false, 0), bad), InvalidSpecError);
  }
  {
    // A sensing scenario with no AP that sees the target cannot place the
    // selector, so the whole model is infeasible.
    TopologyGraph g = empty_graph(2, 1, true, 0);
    link(g, 0, 0, 1.0);
    CHECK_THROWS_AS(solve_iscpt_full(g, IscptThresholds{}), InfeasibleError);
  }
  {
    // An isolated user is excluded, never a reason to fail.
    TopologyGraph g = empty_graph(1, 2, false, 0);
    link(g, 0, 0, 1.0);
    const IscptResult res = solve_iscpt_full(g, IscptThresholds{});
    CHECK(res.decision.u == std::vector<int>{1, 0});
  }
}

TEST_CASE("node limit propagates as an error", "[optimizer]") {
  std::mt19937_64 rng(2024);
  IscptThresholds thr;
  thr.tau_hat_c = 0.9;
  thr.tau_hat_p = 0.6;
  thr.tau_hat_s = 0.8;
  bool exercised = false;
  for (int t = 0; t < 40 && !exercised; ++t) {
    const TopologyGraph g = make_random_graph(rng, 4, 3, true, 1, 0.8);
    long nodes = 0;
    try {
      nodes = solve_iscpt_full(g, thr).nodes;
    } catch (const InfeasibleError&) {
      continue;
    }
    if (nodes <= 1) continue;
    exercised = true;
    CHECK_THROWS_AS(solve_iscpt_full(g, thr, 0.0, nodes - 1), NodeLimitError);
  }
  REQUIRE(exercised);
}

TEST_CASE("decision files round trip", "[optimizer]") {
  IscptDecision d;
  d.u = {1, 0, 1};
  d.v = {0, 1};
  d.v_s = {0, 1};
  d.matching_value = 2;
  const std::string path = "build/test_decision_rt.txt";
  save_decision(d, path);
  const IscptDecision back = load_decision(path);
  CHECK(back.u == d.u);
  CHECK(back.v == d.v);
  CHECK(back.v_s == d.v_s);
  CHECK(back.matching_value == 2);
  std::remove(path.c_str());
}

TEST_CASE("decision parser rejects corrupt files", "[optimizer]") {
  auto doc_with = [](const std::string& u, const std::string& v, const std::string& vs) {
    KvDocument doc;
    auto& s = doc.add("decision");
    s.entries.push_back({"matching_value", "1"});
    s.entries.push_back({"u", u});
    s.entries.push_back({"v", v});
    s.entries.push_back({"v_s", vs});
    return doc;
  };
  CHECK_THROWS_AS(parse_decision(doc_with("1 0", "1 0", "0 1")), ConfigError);  // v_s > v
  CHECK_THROWS_AS(parse_decision(doc_with("1 2", "1 1", "0 1")), ConfigError);  // bad token
  CHECK_THROWS_AS(parse_decision(doc_with("1", "1 1", "0")), ConfigError);      // length clash
  KvDocument missing;
  missing.add("decision").entries.push_back({"u", "1"});
  CHECK_THROWS_AS(parse_decision(missing), ConfigError);
  KvDocument empty;
  CHECK_THROWS_AS(parse_decision(empty), ConfigError);
}

TEST_CASE("checked-in toy fixture matches a fresh solve", "[optimizer]") {
  const TopologyGraph g = load_topology("data/toy_graph.txt");
  IscptThresholds thr;
  thr.tau_hat_c = 0.35;
  thr.tau_hat_p = 0.4;
  thr.tau_hat_s = 0.25;

  const IscptDecision fresh = solve_iscpt(g, thr);
  const auto want = brute_force_p2(g, thr);
  REQUIRE(want.feasible);
  CHECK(fresh.matching_value == Approx(want.objective).margin(1e-9));

  const IscptDecision golden = load_decision("data/toy_decision.txt");
  CHECK(golden.u == fresh.u);
  CHECK(golden.v == fresh.v);
  CHECK(golden.v_s == fresh.v_s);
  CHECK(golden.matching_value == fresh.matching_value);
}
