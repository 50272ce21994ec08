#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghsim/schedule.hpp"
#include "ghsim/types.hpp"

namespace ghsim {

// Milestones of one aircraft's turn-around, in ticks. Monotone by
// construction; consecutive differences are the nine timeline intervals.
struct AircraftRecord {
  int id = -1;
  AircraftClass klass = AircraftClass::CivSmall;
  double uld_kg = 0, icu_kg = 0, p463l_kg = 0;
  int pax = 0;
  bool announced = true;
  bool departed = false;

  Tick arrival = 0;
  Tick parked = 0;
  Tick steps_ready = 0;
  Tick checked = 0;
  Tick offload_start = 0;
  Tick offload_end = 0;
  Tick board_start = 0;
  Tick board_end = 0;
  Tick steps_removed = 0;
  Tick exit = 0;

  bool has_cargo() const { return uld_kg + icu_kg + p463l_kg > 0; }
};

enum class Interval { Tat, Bp, Bps, Bc, Bo, Offl, Bb, Board, Bpsr, E };
inline constexpr std::array<Interval, 7> kReportIntervals = {
    Interval::Tat, Interval::Bps, Interval::Bc,    Interval::Bo,
    Interval::Offl, Interval::Board, Interval::Bpsr};
std::string interval_name(Interval i);

// The nine interval durations in minutes; their sum equals the TAT exactly.
struct TimelineMinutes {
  double bp = 0, bps = 0, bc = 0, bo = 0, offl = 0, bb = 0, board = 0, bpsr = 0, e = 0;
  double tat() const { return bp + bps + bc + bo + offl + bb + board + bpsr + e; }
  double get(Interval i) const;
};

// Throws SimError when the aircraft did not depart within the horizon.
TimelineMinutes decompose_timeline(const AircraftRecord& ac);

struct RunResult {
  int schedule_id = 0;
  std::vector<AircraftRecord> aircraft;
  Tick oc_office_idle_ticks = 0;
  int oc_check_excursions = 0;
};

struct MetricStats {
  double mean = 0, stddev = 0;
  std::size_t n = 0;
};

struct AggregateFilter {
  std::optional<AircraftClass> klass = AircraftClass::CivLarge;
  bool require_cargo = true;
  bool require_pax = true;
};

struct AggregateStats {
  std::map<Interval, MetricStats> metrics;
  std::size_t incomplete = 0;  // aircraft still on the ground at the horizon
};

AggregateStats aggregate(const std::vector<RunResult>& runs, const AggregateFilter& filter);

// Pooled per-aircraft values of one interval across runs.
std::vector<double> pooled_values(const std::vector<RunResult>& runs,
                                  const AggregateFilter& filter, Interval which);

enum class EffectMagnitude { Negligible, Small, Medium, Large };
std::string to_string(EffectMagnitude m);

struct CliffsDelta {
  double delta = 0.0;
  EffectMagnitude magnitude = EffectMagnitude::Negligible;
};

// delta = (#{x>y} - #{x<y}) / (|xs|*|ys|); Hess-Kromrey magnitude thresholds
// 0.147 / 0.33 / 0.474. Throws SimError on an empty sample.
CliffsDelta cliffs_delta(const std::vector<double>& xs, const std::vector<double>& ys);

struct ComparisonRow {
  Interval metric;
  CliffsDelta delta;
};

std::vector<ComparisonRow> compare_cases(const std::vector<RunResult>& a,
                                         const std::vector<RunResult>& b,
                                         const AggregateFilter& filter);

}  // namespace ghsim
