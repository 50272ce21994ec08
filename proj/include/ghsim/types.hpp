#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ghsim {

using Tick = std::int64_t;
using NodeId = int;

// One simulation step is 5 seconds of wall time.
inline constexpr int kTickSeconds = 5;
// One simulated day.
inline constexpr Tick kDefaultHorizonTicks = 17280;

inline double ticks_to_minutes(Tick t) { return double(t) * kTickSeconds / 60.0; }
inline Tick minutes_to_ticks(double m) { return Tick(m * 60.0 / kTickSeconds + 0.5); }

enum class AircraftClass { CivLarge, CivSmall, MilLarge };

enum class CargoKind { UldLd3, Pallet463L, Icu };

enum class GseKind { PaxSteps, TugDollies, BeltLoader, Highloader };

enum class NodeKind {
  TaxiEntry,
  TaxiExit,
  TaxiWaypoint,
  ParkingCivilian,
  ParkingMilitary,
  OcOffice,
  GseParking,
  DropOffCivilian,
  DropOffMilitary,
  GroundTower,
  MovconPost,
  MilCoordPost,
};

enum class ScenarioKind { Unknown, Known, Incomplete };

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::Unknown;
  int unannounced_large = 0;  // only meaningful for Incomplete

  // "A", "B", "Cu1" .. "Cu7"
  static ScenarioSpec parse(const std::string& s);
  std::string name() const;
};

enum class StrategyKind { MaxAvailable = 1, MaxAvailableAnticipation = 2 };

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string to_string(AircraftClass c);
std::string to_string(CargoKind k);
std::string to_string(GseKind k);
std::string to_string(NodeKind k);
AircraftClass aircraft_class_from_string(const std::string& s);
NodeKind node_kind_from_string(const std::string& s);

}  // namespace ghsim
