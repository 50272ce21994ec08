#pragma once

#include <array>
#include <optional>

#include "ghsim/params.hpp"
#include "ghsim/types.hpp"

namespace ghsim {

// Result of the civilian batch-offload model: the tick count until the
// aircraft stands empty and until the last dolly load reaches the drop-off.
struct OffloadSpan {
  Tick empty = 0;
  Tick delivered = 0;
};

// Simulates the load/shuttle loop for one cargo type on one aircraft:
// cargo moves aircraft->dollies at the AC->GSE rate while a driver with
// free dolly space is at the aircraft, full dollies shuttle to the terminal
// and unload at the GSE->TB rate. drive_oneway is the apron leg in ticks.
OffloadSpan offload_span_large(CargoKind kind, double total_kg, const ParameterSet& rates,
                               int n_drivers, double batch_kg, Tick drive_oneway = 5);

// Duration until the aircraft is empty. total_kg == 0 -> 0.
Tick offload_duration_large(CargoKind kind, double total_kg, const ParameterSet& rates,
                            int n_drivers, double batch_kg, Tick drive_oneway = 5);

// Pure time penalty: ceil(kg / rate / tick).
Tick offload_duration_military(double total_kg, double rate_kg_s);

// ceil(pax * rate / tick).
Tick boarding_duration(int pax, double rate_s_per_pax);

// The coordinator's estimate of civilian offloading times, in minutes, per
// cargo type, amount and driver count. Off-grid amounts interpolate linearly
// between rows (clamped at the ends).
class DurationTable {
 public:
  static DurationTable defaults();

  double minutes(CargoKind kind, double kg, int n_drivers) const;
  Tick ticks(CargoKind kind, double kg, int n_drivers) const;

  struct Row {
    double kg;
    double one_driver;
    double two_drivers;
  };
  std::array<Row, 3> uld{};
  std::array<Row, 3> icu{};
};

}  // namespace ghsim
