#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ghsim/types.hpp"

namespace ghsim {

struct LayoutNode {
  NodeId id = -1;
  std::string name;
  NodeKind kind = NodeKind::TaxiWaypoint;
  double x = 0.0;  // metres
  double y = 0.0;
};

struct LayoutEdge {
  NodeId a = -1;
  NodeId b = -1;
  double length = 0.0;  // metres
};

// Predefined taxi path between an entry/exit node and a parking spot.
struct TaxiRoute {
  NodeId from = -1;
  NodeId to = -1;
  std::vector<NodeId> nodes;
};

class LayoutGraph {
 public:
  std::vector<LayoutNode> nodes;
  std::vector<LayoutEdge> edges;
  std::vector<TaxiRoute> routes;

  const LayoutNode& node(NodeId id) const;
  std::optional<NodeId> find_kind(NodeKind kind) const;
  std::vector<NodeId> all_of_kind(NodeKind kind) const;

  // Straight-line distance in metres, used for agents walking/driving on the apron.
  double ground_distance(NodeId a, NodeId b) const;

  // Length of the predefined taxi route; falls back to edge shortest path.
  double route_distance(NodeId from, NodeId to) const;

  // Sum of edge lengths along a shortest path (Dijkstra over the edge list).
  double shortest_path(NodeId from, NodeId to) const;

  bool connected() const;
  void validate() const;

  static LayoutGraph default_layout();
  static LayoutGraph load_json(const std::string& path);
  void save_json(const std::string& path) const;
};

// Converts a movement to whole ticks, rounding up.
// Throws SimError if speed is not positive or distance is negative.
Tick travel_ticks(double distance_m, double speed_kmh);

struct ParkingSpot {
  NodeId node = -1;
  AircraftClass kind = AircraftClass::CivLarge;  // CivLarge => civilian, MilLarge => military
  bool military = false;
  std::optional<int> occupant;  // aircraft id
};

class ParkingRegistry {
 public:
  std::vector<ParkingSpot> spots;

  // Nearest free spot of the aircraft's own side (by route distance to the OC
  // office); falls back to the other side when the own side is full.
  std::optional<NodeId> assign(bool military_aircraft, const LayoutGraph& layout,
                               NodeId oc_office, int aircraft_id);
  void release(int aircraft_id);
  std::optional<NodeId> spot_of(int aircraft_id) const;
  int free_count(bool military) const;
};

}  // namespace ghsim
