#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ghsim/types.hpp"

namespace ghsim {

struct FlightEntry {
  int id = -1;
  Tick arrival_tick = 0;
  AircraftClass klass = AircraftClass::CivSmall;
  double uld_kg = 0.0;
  double icu_kg = 0.0;
  double p463l_kg = 0.0;
  int pax = 0;
  bool announced = true;

  bool has_cargo() const { return uld_kg + icu_kg + p463l_kg > 0.0; }
  bool military() const { return klass == AircraftClass::MilLarge; }
};

struct FlightSchedule {
  int id = 0;
  std::uint64_t seed = 0;
  std::vector<FlightEntry> entries;  // sorted by arrival tick

  std::vector<FlightEntry> civilian() const;
  std::vector<FlightEntry> military_entries() const;
};

struct ScheduleCorpus {
  int version = 1;
  std::uint64_t seed = 0;
  std::vector<FlightSchedule> schedules;

  std::uint64_t content_hash() const;
  static ScheduleCorpus load_json(const std::string& path);
  void save_json(const std::string& path) const;
};

// Scales civilian (and by default military) inter-arrival gaps by `factor`,
// anchored on the first arrival. Only arrival ticks change.
FlightSchedule apply_atif(const FlightSchedule& schedule, double factor,
                          bool scale_military = true);

// Rewrites only the announced flags according to the scenario. Unannounced
// large-civilian picks in scenario C are a seeded draw from the schedule seed.
FlightSchedule apply_scenario_mask(const FlightSchedule& schedule, const ScenarioSpec& spec);

}  // namespace ghsim
