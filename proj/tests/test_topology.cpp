#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "saginet/topology.hpp"

using namespace saginet;
using Catch::Approx;

namespace {

NetworkScenario tiny_scenario() {
  NetworkScenario sc;
  const double r_ap = kEarthMeanRadiusM + 700e3;
  const double r_user = kEarthMeanRadiusM + 300e3;
  auto on_equator = [](double radius, double lon_deg) {
    const double a = deg2rad(lon_deg);
    return EcefPosition{radius * std::cos(a), radius * std::sin(a), 0.0};
  };
  sc.ap_ids = {"ap-0", "ap-1"};
  sc.aps = {on_equator(r_ap, 0.0), on_equator(r_ap, 180.0)};

  UserNode ground;
  ground.id = "tue-zero";
  ground.role = NodeRole::CommUserTerrestrial;
  ground.is_terrestrial = true;
  ground.lla = {0.0, 0.0, 0.0};
  ground.ecef = lla_to_ecef(ground.lla);

  UserNode sat;
  sat.id = "sue-0";
  sat.role = NodeRole::CommUserSatellite;
  sat.ecef = on_equator(r_user, 20.0);

  sc.users = {ground, sat};
  return sc;
}

}  // namespace

TEST_CASE("ground links follow the elevation mask", "[topology]") {
  const NetworkScenario sc = tiny_scenario();
  const TopologyGraph g = build_topology(sc);
  // ap-0 is at the zenith of the ground user; ap-1 is on the far side.
  CHECK(g.adj(0, 0));
  CHECK_FALSE(g.adj(1, 0));
  CHECK(g.w(0, 0) > 0.0);
  CHECK(g.w(1, 0) == 0.0);

  // 20 degrees of separation at these shells is a clear, in-band link.
  CHECK(g.adj(0, 1));
  // The antipodal AP is occluded by the planet.
  CHECK_FALSE(g.adj(1, 1));
  CHECK(g.full_weights[g.at(1, 1)] == 0.0);
}

TEST_CASE("near-radial lines distinguish the occlusion readings", "[topology]") {
  NetworkScenario sc = tiny_scenario();
  // Put the satellite user almost directly beneath ap-0: the infinite line
  // through the pair plunges into the planet, the chord does not.
  sc.users[1].ecef = {kEarthMeanRadiusM + 300e3, 30e3, 0.0};

  const TopologyGraph infinite = build_topology(sc);
  CHECK_FALSE(infinite.adj(0, 1));

  TopologyOptions opt;
  opt.segment_check = true;
  const TopologyGraph segment = build_topology(sc, opt);
  CHECK(segment.adj(0, 1));
}

TEST_CASE("weak satellite links are pruned but keep interfering", "[topology]") {
  NetworkScenario sc = tiny_scenario();
  // A tight prune threshold removes the satellite link: at ~2.4e6 m the
  // free-space amplitude sits near -156 dB.
  sc.radio.pathloss_threshold_db = -150.0;
  const TopologyGraph g = build_topology(sc);
  CHECK_FALSE(g.adj(0, 1));
  CHECK(g.w(0, 1) == 0.0);
  CHECK(g.w_full(0, 1) > 0.0);
  // Ground links are mask-only; the prune threshold does not apply.
  CHECK(g.adj(0, 0));
}

TEST_CASE("graph file round trip", "[topology]") {
  const TopologyGraph g = build_topology(tiny_scenario());
  const std::string text = kv_dump(topology_to_kv(g));
  const TopologyGraph back = parse_topology(kv_parse(text));
  CHECK(kv_dump(topology_to_kv(back)) == text);
  CHECK(back.num_aps == g.num_aps);
  CHECK(back.num_comm == g.num_comm);
  CHECK(back.has_sensing == g.has_sensing);
  CHECK(back.num_charge == g.num_charge);
  for (std::size_t i = 0; i < g.weights.size(); ++i) {
    CHECK(back.weights[i] == g.weights[i]);
    CHECK(back.full_weights[i] == g.full_weights[i]);
  }
}

TEST_CASE("malformed graph files are rejected", "[topology]") {
  const std::string good = kv_dump(topology_to_kv(build_topology(tiny_scenario())));

  auto expect_throw = [](std::string text) {
    CHECK_THROWS_AS(parse_topology(kv_parse(text)), MalformedGraphError);
  };

  expect_throw("[adjacency]\nrow = 1\n");

  std::string missing = good;
  missing.erase(missing.find("[full_weights]"));
  expect_throw(missing);

  std::string bad_adj = good;
  bad_adj.replace(bad_adj.find("row = 1"), 7, "row = 2");
  expect_throw(bad_adj);

  std::string short_row = good;
  const auto pos = short_row.find("row = 1");
  short_row.replace(pos, short_row.find('\n', pos) - pos, "row = 1");
  expect_throw(short_row);

  // A weight under an off-mask cell.
  std::string off_mask = good;
  const auto wsec = off_mask.find("[weights]");
  const auto zero = off_mask.find("0.00000000000000000e+00", wsec);
  REQUIRE(zero != std::string::npos);
  off_mask.replace(zero, 23, "1.00000000000000000e-07");
  expect_throw(off_mask);

  // Negative weight on an edge.
  std::string negative = good;
  const auto wpos = negative.find("e-0", negative.find("[weights]"));
  REQUIRE(wpos != std::string::npos);
  const auto start = negative.rfind(' ', wpos);
 // Walk back to the start of the number token and negate it.
  negative.insert(negative.find_first_not_of(' ', start), "-");
  expect_throw(negative);
}
