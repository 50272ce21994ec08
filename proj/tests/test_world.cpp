#include <cstdio>
#include <string>

#include "doctest.h"
#include "ghsim/layout.hpp"

using namespace ghsim;

TEST_CASE("travel_ticks worked examples") {
  // 30 km/h = 8.33 m/s: 100 m takes 12 s, i.e. 2.4 ticks, rounded up to 3.
  CHECK(travel_ticks(100.0, 30.0) == 3);
  // 5 km/h: 125 m takes exactly 90 s = 18 ticks.
  CHECK(travel_ticks(125.0, 5.0) == 18);
  CHECK(travel_ticks(0.0, 5.0) == 0);
}

TEST_CASE("travel_ticks is monotone in distance and antitone in speed") {
  Tick prev = 0;
  for (double d = 0.0; d <= 2000.0; d += 37.0) {
    Tick t = travel_ticks(d, 6.0);
    CHECK(t >= prev);
    prev = t;
  }
  prev = travel_ticks(500.0, 1.0);
  for (double v = 2.0; v <= 40.0; v += 1.0) {
    Tick t = travel_ticks(500.0, v);
    CHECK(t <= prev);
    prev = t;
  }
}

TEST_CASE("travel_ticks rejects bad arguments") {
  CHECK_THROWS_AS(travel_ticks(-1.0, 5.0), SimError);
  CHECK_THROWS_AS(travel_ticks(10.0, 0.0), SimError);
  CHECK_THROWS_AS(travel_ticks(10.0, -3.0), SimError);
}

TEST_CASE("default layout is valid and complete") {
  LayoutGraph g = LayoutGraph::default_layout();
  CHECK_NOTHROW(g.validate());
  CHECK(g.connected());
  for (NodeKind k : {NodeKind::TaxiEntry, NodeKind::TaxiExit, NodeKind::OcOffice,
                     NodeKind::GseParking, NodeKind::DropOffCivilian, NodeKind::DropOffMilitary,
                     NodeKind::GroundTower, NodeKind::MovconPost, NodeKind::MilCoordPost})
    CHECK(g.find_kind(k).has_value());
  CHECK(g.all_of_kind(NodeKind::ParkingCivilian).size() == 4);
  CHECK(g.all_of_kind(NodeKind::ParkingMilitary).size() == 4);
  // Every parking spot has a taxi route in and out.
  NodeId entry = *g.find_kind(NodeKind::TaxiEntry);
  NodeId exit = *g.find_kind(NodeKind::TaxiExit);
  for (NodeKind pk : {NodeKind::ParkingCivilian, NodeKind::ParkingMilitary})
    for (NodeId s : g.all_of_kind(pk)) {
      CHECK(g.route_distance(entry, s) > 0.0);
      CHECK(g.route_distance(s, exit) > 0.0);
    }
}

TEST_CASE("ground distance is symmetric, shortest path never beats it") {
  LayoutGraph g = LayoutGraph::default_layout();
  for (NodeId a = 0; a < NodeId(g.nodes.size()); a += 3)
    for (NodeId b = 0; b < NodeId(g.nodes.size()); b += 5) {
      CHECK(g.ground_distance(a, b) == doctest::Approx(g.ground_distance(b, a)));
      // Edges are straight lines, so any path is at least the crow-flies gap.
      CHECK(g.shortest_path(a, b) >= g.ground_distance(a, b) - 1e-9);
    }
}

TEST_CASE("layout json roundtrip") {
  LayoutGraph g = LayoutGraph::default_layout();
  std::string path = "test_layout_roundtrip.json";
  g.save_json(path);
  LayoutGraph h = LayoutGraph::load_json(path);
  std::remove(path.c_str());
  REQUIRE(h.nodes.size() == g.nodes.size());
  REQUIRE(h.edges.size() == g.edges.size());
  REQUIRE(h.routes.size() == g.routes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    CHECK(h.nodes[i].id == g.nodes[i].id);
    CHECK(h.nodes[i].kind == g.nodes[i].kind);
    CHECK(h.nodes[i].x == doctest::Approx(g.nodes[i].x));
    CHECK(h.nodes[i].y == doctest::Approx(g.nodes[i].y));
  }
  NodeId entry = *g.find_kind(NodeKind::TaxiEntry);
  NodeId exit = *g.find_kind(NodeKind::TaxiExit);
  CHECK(h.route_distance(entry, exit) == doctest::Approx(g.route_distance(entry, exit)));
}

TEST_CASE("unknown node id throws") {
  LayoutGraph g = LayoutGraph::default_layout();
  CHECK_THROWS_AS(g.node(-1), SimError);
  CHECK_THROWS_AS(g.node(NodeId(g.nodes.size())), SimError);
}

namespace {

ParkingRegistry registry_for(const LayoutGraph& g) {
  ParkingRegistry reg;
  for (NodeId n : g.all_of_kind(NodeKind::ParkingCivilian))
    reg.spots.push_back({n, AircraftClass::CivLarge, false, std::nullopt});
  for (NodeId n : g.all_of_kind(NodeKind::ParkingMilitary))
    reg.spots.push_back({n, AircraftClass::MilLarge, true, std::nullopt});
  return reg;
}

}  // namespace

TEST_CASE("parking assignment, overflow and release") {
  LayoutGraph g = LayoutGraph::default_layout();
  NodeId office = *g.find_kind(NodeKind::OcOffice);
  ParkingRegistry reg = registry_for(g);

  CHECK(reg.free_count(false) == 4);
  CHECK(reg.free_count(true) == 4);

  // Four civilians fill their own side; occupancy is unique.
  std::vector<NodeId> taken;
  for (int id = 0; id < 4; ++id) {
    auto s = reg.assign(false, g, office, id);
    REQUIRE(s.has_value());
    for (NodeId t : taken) CHECK(*s != t);
    taken.push_back(*s);
  }
  CHECK(reg.free_count(false) == 0);

  // The fifth civilian spills onto the military side.
  auto spill = reg.assign(false, g, office, 4);
  REQUIRE(spill.has_value());
  CHECK(reg.free_count(true) == 3);

  // Full house on both sides -> no spot.
  for (int id = 5; id < 8; ++id) REQUIRE(reg.assign(true, g, office, id).has_value());
  CHECK(!reg.assign(false, g, office, 99).has_value());
  CHECK(!reg.assign(true, g, office, 99).has_value());

  CHECK(reg.spot_of(2).has_value());
  reg.release(2);
  CHECK(!reg.spot_of(2).has_value());
  CHECK(reg.free_count(false) == 1);
  auto again = reg.assign(false, g, office, 10);
  REQUIRE(again.has_value());
  CHECK(*again == taken[2]);
}

TEST_CASE("civilians prefer the spot nearest the office") {
  LayoutGraph g = LayoutGraph::default_layout();
  NodeId office = *g.find_kind(NodeKind::OcOffice);
  ParkingRegistry reg = registry_for(g);
  auto first = reg.assign(false, g, office, 0);
  REQUIRE(first.has_value());
  for (NodeId n : g.all_of_kind(NodeKind::ParkingCivilian))
    CHECK(g.ground_distance(office, *first) <= g.ground_distance(office, n) + 1e-9);
}
