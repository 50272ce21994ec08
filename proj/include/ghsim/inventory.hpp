#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ghsim/params.hpp"
#include "ghsim/types.hpp"

namespace ghsim {

enum class GseState { Parked, InUse, Reserved };

struct GseUnit {
  int id = -1;
  GseKind kind = GseKind::Highloader;
  GseState state = GseState::Parked;
  bool military_capable = false;  // true for exactly one highloader
  NodeId home_node = -1;
  NodeId current_node = -1;
};

class GseFleet {
 public:
  std::vector<GseUnit> units;

  static GseFleet build(const FleetConfig& cfg, NodeId gse_parking);

  GseUnit& unit(int id);
  const GseUnit& unit(int id) const;

  // Parked units of a kind, in id order. Military requesters only see
  // military-capable highloaders; reserved units are visible only when
  // the caller holds the reservation.
  std::vector<int> free_of_kind(GseKind kind, bool for_military,
                                bool holds_reservation = false) const;

  // Throws SimError if the unit is not parked.
  void reserve(int id);
  void take(int id);     // parked or reserved -> in use
  void park(int id);     // in use -> parked (back at home node)
};

// Cargo locations for the item-level transfer interface.
struct LocAircraft { int aircraft_id; };
struct LocGse { int gse_id; };
struct LocDolly { int dolly_id; };
struct LocDropOff { bool military; };
using CargoLocation = std::variant<LocAircraft, LocGse, LocDolly, LocDropOff>;

struct CargoItem {
  CargoKind kind = CargoKind::Icu;
  double unit_weight = 500.0;
  CargoLocation location = LocDropOff{false};
};

double default_unit_weight(CargoKind kind);

// Legal moves: aircraft->gse, gse->dolly, dolly->drop_off, aircraft->dolly.
// Throws SimError on an illegal pair or when the item is not at `from`.
CargoItem transfer_cargo(CargoItem item, const CargoLocation& from, const CargoLocation& to);

// Availability bookkeeping of the unmodelled military handling agents and
// forklifts: 0 = available, n>0 = busy for n more ticks, Reserved = held.
class MilitaryResourceLedger {
 public:
  struct Entry {
    bool reserved = false;
    Tick busy = 0;
  };
  std::vector<Entry> handling_agents;
  std::vector<Entry> forklifts;

  MilitaryResourceLedger() = default;
  MilitaryResourceLedger(int agents, int forklifts);

  void tick();  // decrement busy counters, never below zero
  static bool any_available(const std::vector<Entry>& v);
  static bool reserve_one(std::vector<Entry>& v);
  static void arm_reserved(std::vector<Entry>& v, Tick duration);
};

}  // namespace ghsim
