#include "ghsim/duration.hpp"

#include <algorithm>
#include <cmath>

namespace ghsim {

namespace {

constexpr double kEps = 1e-9;

Tick ceil_ticks(double seconds) {
  return Tick(std::ceil(seconds / kTickSeconds - kEps));
}

struct ShuttleDriver {
  enum class Phase { AtAircraft, DriveOut, Unload, DriveBack, Done };
  Phase phase = Phase::AtAircraft;
  Tick timer = 0;
  double load = 0.0;
};

}  // namespace

OffloadSpan offload_span_large(CargoKind kind, double total_kg, const ParameterSet& rates,
                               int n_drivers, double batch_kg, Tick drive_oneway) {
  if (total_kg <= 0.0) return {0, 0};
  if (n_drivers < 1) throw SimError("offload needs at least one driver");
  if (batch_kg <= 0.0) throw SimError("dolly batch capacity must be positive");

  double load_rate, unload_rate;
  switch (kind) {
    case CargoKind::UldLd3:
      load_rate = rates.uld_ac_gse;
      unload_rate = rates.uld_gse_tb;
      break;
    case CargoKind::Icu:
      load_rate = rates.icu_general;
      unload_rate = rates.icu_general;
      break;
    default:
      throw SimError("batch offload model applies to civilian cargo only");
  }

  std::vector<ShuttleDriver> drivers;
  drivers.resize(std::size_t(n_drivers));
  double remaining = total_kg;
  double delivered = 0.0;
  OffloadSpan span{-1, -1};

  for (Tick t = 0; t < 100000; ++t) {
    for (auto& d : drivers) {
      if (d.timer > 0) --d.timer;
      if (d.timer > 0) continue;
      switch (d.phase) {
        case ShuttleDriver::Phase::DriveOut:
          d.phase = ShuttleDriver::Phase::Unload;
          d.timer = ceil_ticks(d.load / unload_rate);
          break;
        case ShuttleDriver::Phase::Unload:
          delivered += d.load;
          d.load = 0.0;
          d.phase = remaining > kEps ? ShuttleDriver::Phase::DriveBack : ShuttleDriver::Phase::Done;
          d.timer = remaining > kEps ? drive_oneway : 0;
          break;
        case ShuttleDriver::Phase::DriveBack:
          d.phase = ShuttleDriver::Phase::AtAircraft;
          break;
        default:
          break;
      }
    }

    // One cargo door: a single loading stream onto the dollies of one driver.
    if (remaining > kEps) {
      ShuttleDriver* loader = nullptr;
      for (auto& d : drivers)
        if (d.phase == ShuttleDriver::Phase::AtAircraft && d.load > kEps) loader = &d;
      if (!loader)
        for (auto& d : drivers)
          if (d.phase == ShuttleDriver::Phase::AtAircraft) {
            loader = &d;
            break;
          }
      if (loader) {
        double moved = std::min({load_rate * kTickSeconds, remaining, batch_kg - loader->load});
        remaining -= moved;
        loader->load += moved;
        bool full = loader->load >= batch_kg - kEps;
        if (full || remaining <= kEps) {
          if (remaining <= kEps) {
            remaining = 0.0;
            span.empty = t + 1;
          }
          loader->phase = ShuttleDriver::Phase::DriveOut;
          loader->timer = drive_oneway;
        }
      }
    }

    if (delivered >= total_kg - kEps && span.delivered < 0) {
      span.delivered = t + 1;
      break;
    }
  }
  if (span.empty < 0 || span.delivered < 0)
    throw SimError("offload model did not converge");
  return span;
}

Tick offload_duration_large(CargoKind kind, double total_kg, const ParameterSet& rates,
                            int n_drivers, double batch_kg, Tick drive_oneway) {
  return offload_span_large(kind, total_kg, rates, n_drivers, batch_kg, drive_oneway).empty;
}

Tick offload_duration_military(double total_kg, double rate_kg_s) {
  if (total_kg < 0.0) throw SimError("cargo amount must be non-negative");
  if (rate_kg_s <= 0.0) throw SimError("offloading rate must be positive");
  if (total_kg == 0.0) return 0;
  return ceil_ticks(total_kg / rate_kg_s);
}

Tick boarding_duration(int pax, double rate_s_per_pax) {
  if (pax < 0) throw SimError("pax count must be non-negative");
  if (rate_s_per_pax <= 0.0) throw SimError("boarding rate must be positive");
  if (pax == 0) return 0;
  return ceil_ticks(double(pax) * rate_s_per_pax);
}

DurationTable DurationTable::defaults() {
  DurationTable t;
  t.uld = {{{15000.0, 52.0, 46.0}, {18000.0, 61.0, 54.0}, {20000.0, 70.0, 61.0}}};
  t.icu = {{{5000.0, 35.0, 21.0}, {6000.0, 37.0, 25.0}, {8000.0, 54.0, 33.0}}};
  return t;
}

double DurationTable::minutes(CargoKind kind, double kg, int n_drivers) const {
  if (kg <= 0.0) return 0.0;
  const auto& rows = (kind == CargoKind::UldLd3) ? uld : icu;
  if (kind == CargoKind::Pallet463L) throw SimError("duration table covers civilian cargo only");
  int d = std::clamp(n_drivers, 1, 2);
  auto value = [&](const Row& r) { return d == 1 ? r.one_driver : r.two_drivers; };
  if (kg <= rows.front().kg) return value(rows.front());
  if (kg >= rows.back().kg) return value(rows.back());
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (kg <= rows[i + 1].kg + kEps) {
      double f = (kg - rows[i].kg) / (rows[i + 1].kg - rows[i].kg);
      return value(rows[i]) + f * (value(rows[i + 1]) - value(rows[i]));
    }
  }
  return value(rows.back());
}

Tick DurationTable::ticks(CargoKind kind, double kg, int n_drivers) const {
  return minutes_to_ticks(minutes(kind, kg, n_drivers));
}

}  // namespace ghsim
