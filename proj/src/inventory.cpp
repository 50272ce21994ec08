#include "ghsim/inventory.hpp"

#include <algorithm>

namespace ghsim {

GseFleet GseFleet::build(const FleetConfig& cfg, NodeId gse_parking) {
  GseFleet fleet;
  int id = 0;
  auto add = [&](GseKind kind, int count) {
    for (int i = 0; i < count; ++i)
      fleet.units.push_back({id++, kind, GseState::Parked, false, gse_parking, gse_parking});
  };
  add(GseKind::PaxSteps, cfg.pax_steps);
  add(GseKind::TugDollies, cfg.tug_dollies);
  add(GseKind::BeltLoader, cfg.belt_loaders);
  add(GseKind::Highloader, cfg.highloaders);
  // The adapted highloader is the one with the highest model id.
  for (auto it = fleet.units.rbegin(); it != fleet.units.rend(); ++it)
    if (it->kind == GseKind::Highloader) {
      it->military_capable = true;
      break;
    }
  return fleet;
}

GseUnit& GseFleet::unit(int id) {
  for (auto& u : units)
    if (u.id == id) return u;
  throw SimError("unknown GSE unit " + std::to_string(id));
}

const GseUnit& GseFleet::unit(int id) const {
  return const_cast<GseFleet*>(this)->unit(id);
}

std::vector<int> GseFleet::free_of_kind(GseKind kind, bool for_military,
                                        bool holds_reservation) const {
  std::vector<int> out;
  for (const auto& u : units) {
    if (u.kind != kind) continue;
    if (for_military && kind == GseKind::Highloader && !u.military_capable) continue;
    if (u.state == GseState::Parked)
      out.push_back(u.id);
    else if (u.state == GseState::Reserved && for_military && holds_reservation)
      out.push_back(u.id);
  }
  return out;
}

void GseFleet::reserve(int id) {
  auto& u = unit(id);
  if (u.state != GseState::Parked)
    throw SimError("GSE unit " + std::to_string(id) + " is not parked; reservation unavailable");
  u.state = GseState::Reserved;
}

void GseFleet::take(int id) {
  auto& u = unit(id);
  if (u.state == GseState::InUse)
    throw SimError("GSE unit " + std::to_string(id) + " already in use");
  u.state = GseState::InUse;
}

void GseFleet::park(int id) {
  auto& u = unit(id);
  u.state = GseState::Parked;
  u.current_node = u.home_node;
}

double default_unit_weight(CargoKind kind) {
  switch (kind) {
    case CargoKind::UldLd3: return 1600.0;
    case CargoKind::Pallet463L: return 4500.0;
    case CargoKind::Icu: return 500.0;
  }
  return 0.0;
}

namespace {

bool same_location(const CargoLocation& a, const CargoLocation& b) {
  if (a.index() != b.index()) return false;
  if (auto* p = std::get_if<LocAircraft>(&a))
    return p->aircraft_id == std::get<LocAircraft>(b).aircraft_id;
  if (auto* p = std::get_if<LocGse>(&a)) return p->gse_id == std::get<LocGse>(b).gse_id;
  if (auto* p = std::get_if<LocDolly>(&a)) return p->dolly_id == std::get<LocDolly>(b).dolly_id;
  return std::get<LocDropOff>(a).military == std::get<LocDropOff>(b).military;
}

bool legal_pair(const CargoLocation& from, const CargoLocation& to) {
  if (std::holds_alternative<LocAircraft>(from))
    return std::holds_alternative<LocGse>(to) || std::holds_alternative<LocDolly>(to);
  if (std::holds_alternative<LocGse>(from)) return std::holds_alternative<LocDolly>(to);
  if (std::holds_alternative<LocDolly>(from)) return std::holds_alternative<LocDropOff>(to);
  return false;
}

}  // namespace

CargoItem transfer_cargo(CargoItem item, const CargoLocation& from, const CargoLocation& to) {
  if (!same_location(item.location, from)) throw SimError("invalid transfer: item not at source");
  if (!legal_pair(from, to)) throw SimError("invalid transfer: illegal location pair");
  item.location = to;
  return item;
}

MilitaryResourceLedger::MilitaryResourceLedger(int agents, int forklift_count) {
  handling_agents.resize(std::max(agents, 0));
  forklifts.resize(std::max(forklift_count, 0));
}

void MilitaryResourceLedger::tick() {
  for (auto* list : {&handling_agents, &forklifts})
    for (auto& e : *list)
      if (e.busy > 0) --e.busy;
}

bool MilitaryResourceLedger::any_available(const std::vector<Entry>& v) {
  return std::any_of(v.begin(), v.end(),
                     [](const Entry& e) { return !e.reserved && e.busy == 0; });
}

bool MilitaryResourceLedger::reserve_one(std::vector<Entry>& v) {
  for (auto& e : v)
    if (!e.reserved && e.busy == 0) {
      e.reserved = true;
      return true;
    }
  return false;
}

void MilitaryResourceLedger::arm_reserved(std::vector<Entry>& v, Tick duration) {
  for (auto& e : v)
    if (e.reserved) {
      e.reserved = false;
      e.busy = duration;
      return;
    }
}

}  // namespace ghsim
