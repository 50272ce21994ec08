#pragma once

#include <string>

#include "ghsim/types.hpp"

namespace ghsim {

// Calibrated rates. C0 carries the original uncalibrated values, C3 the
// recalibrated boarding/463L rates, C6 additionally the civilian cargo rates.
struct ParameterSet {
  std::string name = "C6";
  double uld_ac_gse = 5.7;     // kg/s, ULD aircraft -> highloader
  double uld_gse_tb = 40.0;    // kg/s, ULD dollies -> terminal building
  double icu_general = 4.5;    // kg/s, ICU all transfers
  double p463l_ac_gse = 10.0;  // kg/s, military pallet offload
  double board_civ = 47.0;     // s/pax
  double board_mil = 22.5;     // s/pax

  static ParameterSet preset(const std::string& name);  // "C0", "C3", "C6"
  static ParameterSet load_file(const std::string& path);
  void save_file(const std::string& path) const;
};

struct FleetConfig {
  int highloaders = 2;
  int belt_loaders = 2;
  int pax_steps = 3;
  int tug_dollies = 4;
  int drivers = 4;
  int handlers = 2;
  int mil_handling_agents = 4;
  int mil_forklifts = 2;
};

struct SimConfig {
  ParameterSet params;
  FleetConfig fleet;

  Tick horizon = kDefaultHorizonTicks;
  double walk_speed_civ = 5.0;   // km/h
  double walk_speed_mil = 6.0;   // km/h
  double drive_speed = 30.0;     // km/h, GSE on the apron
  double taxi_speed = 30.0;      // km/h, aircraft on taxi lines

  Tick before_boarding_gap = 144;     // 12 minutes between offloading and boarding
  Tick atc_call_lead = 180;           // military call, 15 minutes before arrival
  int max_checks_per_excursion = 3;   // cargo aircraft per OC round
  Tick interaction_ticks = 2;         // face-to-face information exchange
  Tick check_ticks = 90;              // inspecting one aircraft's hold contents
  int driver_reserve = 0;             // drivers held back for the small-aircraft stream
  double second_driver_min = 65.0;    // table minutes above which a load gets a second driver

  double dolly_capacity_uld = 2 * 1600.0;  // kg per tug trip
  double dolly_capacity_icu = 4 * 500.0;

  Tick max_start_bound = 360;  // planner: offload must start within 30 min of arrival

  // finish_time is the planner objective used throughout; offload_time is an
  // alternative kept behind this switch and excluded from the headline runs.
  std::string objective = "finish_time";
};

}  // namespace ghsim
