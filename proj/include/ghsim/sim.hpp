#pragma once

#include <memory>
#include <vector>

#include "ghsim/events.hpp"
#include "ghsim/layout.hpp"
#include "ghsim/metrics.hpp"
#include "ghsim/params.hpp"
#include "ghsim/schedule.hpp"
#include "ghsim/strategy.hpp"
#include "ghsim/types.hpp"

namespace ghsim {

struct SimOptions {
  SimConfig config;
  StrategyKind strategy = StrategyKind::MaxAvailable;
  LayoutGraph layout = LayoutGraph::default_layout();
  TaskEstimates estimates;
  bool strict_checks = true;  // per-tick conservation/exclusivity assertions
};

struct CargoAudit {
  double on_aircraft = 0;
  double in_transit = 0;
  double delivered = 0;
  double created = 0;
};

// Single-threaded tick simulation of one schedule. Agent step order within a
// tick is fixed: clock, aircraft, coordinator, handling/driver jobs, ATC,
// MOVCON, military coordinator.
class Simulation {
 public:
  Simulation(FlightSchedule schedule, SimOptions options, EventSink sink = {});
  ~Simulation();
  Simulation(Simulation&&) noexcept;
  Simulation& operator=(Simulation&&) noexcept;

  void step();
  Tick tick() const;
  bool all_departed() const;
  CargoAudit audit_cargo() const;

  // Runs until every scheduled aircraft has departed (with a hard cap of
  // three horizons) and returns the collected per-aircraft records.
  RunResult run();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;

  friend FlightSchedule generate_schedule(int id, std::uint64_t corpus_seed,
                                          const struct GenParams& gen, const SimOptions& options);
};

RunResult run_simulation(const FlightSchedule& schedule, const SimOptions& options,
                         EventSink sink = {});

// Arrival-process parameters for schedule generation.
struct GenParams {
  double gap_min_minutes = 15.0;
  double gap_max_minutes = 40.0;
  int tarmac_cap = 4;  // a new civilian arrival is drawn only below this count
  int n_large_civ = 7;
  int small_with_cargo_per_without = 2;  // 2:1 with/without cargo
  int pax_lo = 31;
  int pax_hi = 45;
  std::vector<Tick> military_arrivals = {1080, 2880, 4680, 6480, 8280, 10080, 11880};
  double military_p463l_kg = 18000.0;
  int military_pax = 80;
  std::vector<double> large_uld_grid = {15000.0, 18000.0, 20000.0};
  std::vector<double> large_icu_grid = {5000.0, 6000.0, 8000.0};
  std::vector<double> small_icu_grid = {1000.0, 1500.0, 2000.0};
};

// Runs the base model (strategy 1, scenario A) with arrivals drawn on the fly
// under the tarmac rule, then freezes the observed arrival times.
FlightSchedule generate_schedule(int id, std::uint64_t corpus_seed, const GenParams& gen,
                                 const SimOptions& options);

}  // namespace ghsim
