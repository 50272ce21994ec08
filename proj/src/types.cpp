#include "ghsim/types.hpp"

namespace ghsim {

ScenarioSpec ScenarioSpec::parse(const std::string& s) {
  ScenarioSpec spec;
  if (s == "A" || s == "a") {
    spec.kind = ScenarioKind::Unknown;
  } else if (s == "B" || s == "b") {
    spec.kind = ScenarioKind::Known;
  } else if ((s.size() >= 3) && (s[0] == 'C' || s[0] == 'c') && (s[1] == 'u' || s[1] == 'U')) {
    spec.kind = ScenarioKind::Incomplete;
    spec.unannounced_large = std::stoi(s.substr(2));
    if (spec.unannounced_large < 0 || spec.unannounced_large > 7)
      throw SimError("scenario C unannounced count must be in [0, 7]: " + s);
  } else {
    throw SimError("unknown scenario: " + s + " (expected A, B or CuN)");
  }
  return spec;
}

std::string ScenarioSpec::name() const {
  switch (kind) {
    case ScenarioKind::Unknown: return "A";
    case ScenarioKind::Known: return "B";
    case ScenarioKind::Incomplete: return "Cu" + std::to_string(unannounced_large);
  }
  return "?";
}

std::string to_string(AircraftClass c) {
  switch (c) {
    case AircraftClass::CivLarge: return "civ_large";
    case AircraftClass::CivSmall: return "civ_small";
    case AircraftClass::MilLarge: return "military_large";
  }
  return "?";
}

AircraftClass aircraft_class_from_string(const std::string& s) {
  if (s == "civ_large") return AircraftClass::CivLarge;
  if (s == "civ_small") return AircraftClass::CivSmall;
  if (s == "military_large") return AircraftClass::MilLarge;
  throw SimError("unknown aircraft class: " + s);
}

std::string to_string(CargoKind k) {
  switch (k) {
    case CargoKind::UldLd3: return "ULD_LD3";
    case CargoKind::Pallet463L: return "PALLET_463L";
    case CargoKind::Icu: return "ICU";
  }
  return "?";
}

std::string to_string(GseKind k) {
  switch (k) {
    case GseKind::PaxSteps: return "pax_steps";
    case GseKind::TugDollies: return "tug_dollies";
    case GseKind::BeltLoader: return "belt_loader";
    case GseKind::Highloader: return "highloader";
  }
  return "?";
}

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::TaxiEntry: return "taxi_entry";
    case NodeKind::TaxiExit: return "taxi_exit";
    case NodeKind::TaxiWaypoint: return "taxi_waypoint";
    case NodeKind::ParkingCivilian: return "parking_civilian";
    case NodeKind::ParkingMilitary: return "parking_military";
    case NodeKind::OcOffice: return "oc_office";
    case NodeKind::GseParking: return "gse_parking";
    case NodeKind::DropOffCivilian: return "drop_off_civilian";
    case NodeKind::DropOffMilitary: return "drop_off_military";
    case NodeKind::GroundTower: return "ground_tower";
    case NodeKind::MovconPost: return "movcon_post";
    case NodeKind::MilCoordPost: return "mil_coord_post";
  }
  return "?";
}

NodeKind node_kind_from_string(const std::string& s) {
  for (int i = 0; i <= int(NodeKind::MilCoordPost); ++i) {
    if (to_string(NodeKind(i)) == s) return NodeKind(i);
  }
  throw SimError("unknown node kind: " + s);
}

}  // namespace ghsim
