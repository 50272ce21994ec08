#include "ghsim/layout.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>

#include "json.hpp"

namespace ghsim {

using nlohmann::json;

const LayoutNode& LayoutGraph::node(NodeId id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw SimError("unknown node id " + std::to_string(id));
}

std::optional<NodeId> LayoutGraph::find_kind(NodeKind kind) const {
  for (const auto& n : nodes)
    if (n.kind == kind) return n.id;
  return std::nullopt;
}

std::vector<NodeId> LayoutGraph::all_of_kind(NodeKind kind) const {
  std::vector<NodeId> out;
  for (const auto& n : nodes)
    if (n.kind == kind) out.push_back(n.id);
  return out;
}

double LayoutGraph::ground_distance(NodeId a, NodeId b) const {
  const auto& na = node(a);
  const auto& nb = node(b);
  return std::hypot(na.x - nb.x, na.y - nb.y);
}

double LayoutGraph::shortest_path(NodeId from, NodeId to) const {
  if (from == to) return 0.0;
  std::unordered_map<NodeId, std::vector<std::pair<NodeId, double>>> adj;
  for (const auto& e : edges) {
    adj[e.a].push_back({e.b, e.length});
    adj[e.b].push_back({e.a, e.length});
  }
  std::unordered_map<NodeId, double> dist;
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0.0, from});
  dist[from] = 0.0;
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u] + 1e-9) continue;
    if (u == to) return d;
    for (auto [v, w] : adj[u]) {
      double nd = d + w;
      auto it = dist.find(v);
      if (it == dist.end() || nd < it->second - 1e-9) {
        dist[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  return std::numeric_limits<double>::infinity();
}

double LayoutGraph::route_distance(NodeId from, NodeId to) const {
  for (const auto& r : routes) {
    if (r.from == from && r.to == to) {
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i)
        total += ground_distance(r.nodes[i], r.nodes[i + 1]);
      return total;
    }
  }
  return shortest_path(from, to);
}

bool LayoutGraph::connected() const {
  if (nodes.empty()) return true;
  std::unordered_map<NodeId, std::vector<NodeId>> adj;
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<NodeId> stack{nodes.front().id};
  std::unordered_map<NodeId, bool> seen{{nodes.front().id, true}};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return std::all_of(nodes.begin(), nodes.end(),
                     [&](const LayoutNode& n) { return seen.count(n.id) && seen.at(n.id); });
}

void LayoutGraph::validate() const {
  for (const auto& e : edges)
    if (e.length <= 0.0) throw SimError("layout edge with non-positive length");
  if (!connected()) throw SimError("layout graph is not connected");
  auto entry = find_kind(NodeKind::TaxiEntry);
  auto exit = find_kind(NodeKind::TaxiExit);
  if (!entry || !exit) throw SimError("layout needs a taxi entry and exit node");
  for (NodeKind pk : {NodeKind::ParkingCivilian, NodeKind::ParkingMilitary}) {
    for (NodeId spot : all_of_kind(pk)) {
      if (!std::isfinite(route_distance(*entry, spot)))
        throw SimError("no route from entry to spot " + std::to_string(spot));
      if (!std::isfinite(route_distance(spot, *exit)))
        throw SimError("no route from spot " + std::to_string(spot) + " to exit");
    }
  }
}

LayoutGraph LayoutGraph::default_layout() {
  LayoutGraph g;
  int next = 0;
  auto add = [&](const std::string& name, NodeKind kind, double x, double y) {
    g.nodes.push_back({next, name, kind, x, y});
    return next++;
  };
  NodeId entry = add("5i", NodeKind::TaxiEntry, 600, 300);
  NodeId exit = add("5e", NodeKind::TaxiExit, 0, 300);
  std::vector<NodeId> wp;
  for (int x = 100; x <= 500; x += 100)
    wp.push_back(add("t" + std::to_string(x), NodeKind::TaxiWaypoint, x, 300));
  std::vector<NodeId> civ, mil;
  for (int i = 0; i < 4; ++i)
    civ.push_back(add("P" + std::to_string(i + 1), NodeKind::ParkingCivilian, 150 + 75 * i, 200));
  for (int i = 0; i < 4; ++i)
    mil.push_back(add("M" + std::to_string(i + 1), NodeKind::ParkingMilitary, 150 + 70 * i, 400));
  NodeId office = add("oc_office", NodeKind::OcOffice, 430, 150);
  NodeId gse = add("gse_parking", NodeKind::GseParking, 480, 180);
  NodeId drop_civ = add("drop_off_civ", NodeKind::DropOffCivilian, 250, 60);
  NodeId drop_mil = add("drop_off_mil", NodeKind::DropOffMilitary, 200, 480);
  NodeId tower = add("ground_tower", NodeKind::GroundTower, 550, 350);
  NodeId movcon = add("movcon_post", NodeKind::MovconPost, 210, 480);
  NodeId milco = add("mil_coord_post", NodeKind::MilCoordPost, 390, 260);

  auto link = [&](NodeId a, NodeId b) {
    g.edges.push_back({a, b, g.ground_distance(a, b)});
  };
  link(entry, wp.back());
  for (std::size_t i = 0; i + 1 < wp.size(); ++i) link(wp[i], wp[i + 1]);
  link(wp.front(), exit);
  auto nearest_wp = [&](NodeId spot) {
    NodeId best = wp.front();
    for (NodeId w : wp)
      if (g.ground_distance(spot, w) < g.ground_distance(spot, best)) best = w;
    return best;
  };
  std::unordered_map<NodeId, NodeId> stub;
  for (NodeId s : civ) {
    stub[s] = nearest_wp(s);
    link(s, stub[s]);
  }
  for (NodeId s : mil) {
    stub[s] = nearest_wp(s);
    link(s, stub[s]);
  }
  // Apron links, only so the full graph is one component.
  link(office, civ.back());
  link(gse, office);
  link(drop_civ, civ[2]);
  link(tower, wp.back());
  link(drop_mil, mil.front());
  link(movcon, drop_mil);
  link(milco, mil.back());

  auto make_route = [&](NodeId from, NodeId to, NodeId spot, bool inbound) {
    TaxiRoute r{from, to, {}};
    NodeId w = stub[spot];
    if (inbound) {
      r.nodes.push_back(from);
      for (auto it = wp.rbegin(); it != wp.rend(); ++it) {
        r.nodes.push_back(*it);
        if (*it == w) break;
      }
      r.nodes.push_back(spot);
    } else {
      r.nodes.push_back(spot);
      auto start = std::find(wp.begin(), wp.end(), w);
      for (auto it = start;; --it) {
        r.nodes.push_back(*it);
        if (it == wp.begin()) break;
      }
      r.nodes.push_back(to);
    }
    g.routes.push_back(std::move(r));
  };
  for (NodeId s : civ) {
    make_route(entry, s, s, true);
    make_route(s, exit, s, false);
  }
  for (NodeId s : mil) {
    make_route(entry, s, s, true);
    make_route(s, exit, s, false);
  }
  g.validate();
  return g;
}

static json node_to_json(const LayoutNode& n) {
  return json{{"id", n.id}, {"name", n.name}, {"kind", to_string(n.kind)}, {"x", n.x}, {"y", n.y}};
}

void LayoutGraph::save_json(const std::string& path) const {
  json j;
  j["layout_version"] = 1;
  j["nodes"] = json::array();
  for (const auto& n : nodes) j["nodes"].push_back(node_to_json(n));
  j["edges"] = json::array();
  for (const auto& e : edges) j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"length", e.length}});
  j["routes"] = json::array();
  for (const auto& r : routes)
    j["routes"].push_back({{"from", r.from}, {"to", r.to}, {"nodes", r.nodes}});
  std::ofstream out(path);
  if (!out) throw SimError("cannot write layout file: " + path);
  out << j.dump(2) << "\n";
}

LayoutGraph LayoutGraph::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimError("cannot read layout file: " + path);
  json j = json::parse(in);
  if (j.value("layout_version", 0) != 1) throw SimError("unsupported layout_version in " + path);
  LayoutGraph g;
  for (const auto& n : j.at("nodes"))
    g.nodes.push_back({n.at("id").get<int>(), n.value("name", std::string{}),
                       node_kind_from_string(n.at("kind").get<std::string>()),
                       n.at("x").get<double>(), n.at("y").get<double>()});
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at("a").get<int>(), e.at("b").get<int>(), e.at("length").get<double>()});
  for (const auto& r : j.at("routes"))
    g.routes.push_back({r.at("from").get<int>(), r.at("to").get<int>(),
                        r.at("nodes").get<std::vector<int>>()});
  g.validate();
  return g;
}

Tick travel_ticks(double distance_m, double speed_kmh) {
  if (speed_kmh <= 0.0) throw SimError("travel speed must be positive");
  if (distance_m < 0.0) throw SimError("travel distance must be non-negative");
  if (distance_m == 0.0) return 0;
  double seconds = distance_m / (speed_kmh * (1000.0 / 3600.0));
  return Tick(std::ceil(seconds / kTickSeconds - 1e-9));
}

std::optional<NodeId> ParkingRegistry::assign(bool military_aircraft, const LayoutGraph& layout,
                                              NodeId oc_office, int aircraft_id) {
  auto pick = [&](bool military_side) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    double best_d = 0.0;
    for (std::size_t i = 0; i < spots.size(); ++i) {
      const auto& s = spots[i];
      if (s.military != military_side || s.occupant) continue;
      double d = layout.ground_distance(s.node, oc_office);
      if (!best || d < best_d) {
        best = i;
        best_d = d;
      }
    }
    return best;
  };
  auto slot = pick(military_aircraft);
  if (!slot) slot = pick(!military_aircraft);  // overflow onto the other side
  if (!slot) return std::nullopt;
  spots[*slot].occupant = aircraft_id;
  return spots[*slot].node;
}

void ParkingRegistry::release(int aircraft_id) {
  for (auto& s : spots)
    if (s.occupant == aircraft_id) s.occupant.reset();
}

std::optional<NodeId> ParkingRegistry::spot_of(int aircraft_id) const {
  for (const auto& s : spots)
    if (s.occupant == aircraft_id) return s.node;
  return std::nullopt;
}

int ParkingRegistry::free_count(bool military) const {
  int n = 0;
  for (const auto& s : spots)
    if (s.military == military && !s.occupant) ++n;
  return n;
}

}  // namespace ghsim
