#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghsim/duration.hpp"
#include "ghsim/types.hpp"

namespace ghsim {

// The coordinator's belief about when each resource becomes free, indexed by
// resource id within each kind. A value <= now means "free now".
struct ResourceEstimate {
  std::vector<Tick> handlers;
  std::vector<Tick> highloaders;
  std::vector<Tick> belt_loaders;
  std::vector<Tick> drivers;  // driver + tug and dollies, paired 1:1
};

struct CargoNeed {
  double uld_kg = 0.0;
  double icu_kg = 0.0;
  bool any() const { return uld_kg > 0.0 || icu_kg > 0.0; }
};

// One cargo type's crew within an option set.
struct CrewAssign {
  std::optional<int> handler;
  std::optional<int> gse;       // highloader for ULD, belt loader for ICU
  std::vector<int> drivers;     // 1 or 2
  Tick finish = 0;              // estimated offloading finish step
  bool active() const { return !drivers.empty(); }
};

// {AMA, est_ULD, est_ICU, start_step}
struct OptionSet {
  Tick start_step = 0;
  CrewAssign uld;
  CrewAssign icu;
  Tick est_uld() const { return uld.active() ? uld.finish : start_step; }
  Tick est_icu() const { return icu.active() ? icu.finish : start_step; }
  bool any() const { return uld.active() || icu.active(); }
};

enum class CargoSelector { Uld, Icu, All };
enum class OptionMode { Min, Max, Best };

// Maximum option set from resources free at the current step; start_step = now.
// Returns nullopt when no cargo type can start at all.
std::optional<OptionSet> ra_available(const ResourceEstimate& free_rss, Tick now,
                                      const CargoNeed& need, const DurationTable& table);

// Earliest option set per the estimate list; start_step may be in the future.
// Min = one driver per cargo type, Max = two, Best = whichever of the two
// minimises max(est_uld, est_icu).
OptionSet ra_ahead(const ResourceEstimate& est_rss, Tick now, const CargoNeed& need,
                   CargoSelector selector, OptionMode mode, const DurationTable& table);

// Marks the option's resources busy until the relevant finish step.
// Throws SimError if the option is infeasible under est_rss.
ResourceEstimate rss_update(ResourceEstimate est_rss, const OptionSet& option);

struct BestOptionResult {
  OptionSet option;
  Tick penalized_latest_end = 0;
  std::string combination;  // which argument combination won
};

// Enumerates the fixed argument combinations for aircraft A (paired with the
// next aircraft B, or with A's other cargo type when A's full minimum set is
// not reachable now), scores each by the latest estimated finish plus a
// 100000-tick penalty when A would start after max_start, and returns the
// option set for A with the earliest penalized latest end time.
BestOptionResult generate_best_option(const ResourceEstimate& est_rss, Tick now,
                                      const CargoNeed& need_a,
                                      const std::optional<CargoNeed>& need_b,
                                      Tick max_start_a, const DurationTable& table);

inline constexpr Tick kLateStartPenalty = 100000;

// Mean task durations (minutes) the coordinator uses for busy-resource
// estimates, regenerated by the calibrate-estimates command.
struct TaskEstimates {
  double paxsteps_supply = 5.0;
  double paxsteps_retrieve = 5.0;
  double small_offload = 22.0;
  double mil_offload_crew = 42.0;
  double large_offload_overhead = 3.0;  // travel on top of the duration table
  DurationTable table = DurationTable::defaults();

  static TaskEstimates load_json(const std::string& path);
  void save_json(const std::string& path) const;
};

}  // namespace ghsim
