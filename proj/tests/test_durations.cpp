#include <cmath>

#include "doctest.h"
#include "ghsim/duration.hpp"

using namespace ghsim;

namespace {

const ParameterSet kC6 = ParameterSet::preset("C6");
const ParameterSet kC0 = ParameterSet::preset("C0");

double span_minutes(CargoKind kind, double kg, int drivers) {
  double batch = (kind == CargoKind::UldLd3) ? 3200.0 : 2000.0;
  return ticks_to_minutes(offload_duration_large(kind, kg, kC6, drivers, batch));
}

}  // namespace

TEST_CASE("batch offload model reproduces the coordinator's estimate table") {
  // Every cell of the published duration table must come out of the shuttle
  // model within 10%.
  DurationTable t = DurationTable::defaults();
  for (const auto& row : t.uld) {
    CHECK(span_minutes(CargoKind::UldLd3, row.kg, 1) ==
          doctest::Approx(row.one_driver).epsilon(0.10));
    CHECK(span_minutes(CargoKind::UldLd3, row.kg, 2) ==
          doctest::Approx(row.two_drivers).epsilon(0.10));
  }
  for (const auto& row : t.icu) {
    CHECK(span_minutes(CargoKind::Icu, row.kg, 1) ==
          doctest::Approx(row.one_driver).epsilon(0.10));
    CHECK(span_minutes(CargoKind::Icu, row.kg, 2) ==
          doctest::Approx(row.two_drivers).epsilon(0.10));
  }
}

TEST_CASE("second driver helps, never hurts") {
  for (double kg : {5000.0, 8000.0, 15000.0, 20000.0}) {
    CHECK(span_minutes(CargoKind::UldLd3, kg, 2) <= span_minutes(CargoKind::UldLd3, kg, 1));
    CHECK(span_minutes(CargoKind::Icu, kg, 2) <= span_minutes(CargoKind::Icu, kg, 1));
  }
}

TEST_CASE("offload span: empty precedes delivered, both positive") {
  OffloadSpan s = offload_span_large(CargoKind::UldLd3, 18000.0, kC6, 1, 3200.0);
  CHECK(s.empty > 0);
  CHECK(s.delivered >= s.empty);
}

TEST_CASE("offload model edge cases") {
  CHECK(offload_duration_large(CargoKind::UldLd3, 0.0, kC6, 1, 3200.0) == 0);
  CHECK_THROWS_AS(offload_duration_large(CargoKind::UldLd3, 100.0, kC6, 0, 3200.0), SimError);
  CHECK_THROWS_AS(offload_duration_large(CargoKind::UldLd3, 100.0, kC6, 1, 0.0), SimError);
  CHECK_THROWS_AS(offload_duration_large(CargoKind::Pallet463L, 100.0, kC6, 1, 3200.0), SimError);
}

TEST_CASE("military offload is a pure rate penalty") {
  // 18000 kg at 10 kg/s: exactly 1800 s = 360 ticks = 30 minutes.
  CHECK(offload_duration_military(18000.0, kC6.p463l_ac_gse) == 360);
  // Uncalibrated rate 7.5 kg/s: 2400 s = 480 ticks = 40 minutes.
  CHECK(offload_duration_military(18000.0, kC0.p463l_ac_gse) == 480);
  CHECK(offload_duration_military(0.0, 10.0) == 0);
  CHECK(offload_duration_military(1.0, 10.0) == 1);  // rounds up to a whole tick
  CHECK_THROWS_AS(offload_duration_military(-1.0, 10.0), SimError);
  CHECK_THROWS_AS(offload_duration_military(10.0, 0.0), SimError);
}

TEST_CASE("boarding durations") {
  // 38 pax at 47 s each: 1786 s -> 358 ticks -> 29.83 min.
  CHECK(boarding_duration(38, kC6.board_civ) == 358);
  // 80 military pax at 22.5 s each: exactly 1800 s = 360 ticks = 30 min.
  CHECK(boarding_duration(80, kC6.board_mil) == 360);
  CHECK(boarding_duration(0, kC6.board_civ) == 0);
  CHECK_THROWS_AS(boarding_duration(-1, 47.0), SimError);
  CHECK_THROWS_AS(boarding_duration(10, 0.0), SimError);
}

TEST_CASE("duration table interpolates and clamps") {
  DurationTable t = DurationTable::defaults();
  CHECK(t.minutes(CargoKind::UldLd3, 15000.0, 1) == doctest::Approx(52.0));
  CHECK(t.minutes(CargoKind::UldLd3, 18000.0, 2) == doctest::Approx(54.0));
  CHECK(t.minutes(CargoKind::Icu, 8000.0, 1) == doctest::Approx(54.0));
  // Midpoint of 15000 and 18000 with one driver: midpoint of 52 and 61.
  CHECK(t.minutes(CargoKind::UldLd3, 16500.0, 1) == doctest::Approx(56.5));
  // Clamped outside the grid.
  CHECK(t.minutes(CargoKind::UldLd3, 1000.0, 1) == doctest::Approx(52.0));
  CHECK(t.minutes(CargoKind::UldLd3, 90000.0, 1) == doctest::Approx(70.0));
  CHECK(t.minutes(CargoKind::UldLd3, 18000.0, 0) == doctest::Approx(61.0));  // driver count clamps
  CHECK(t.minutes(CargoKind::UldLd3, 18000.0, 5) == doctest::Approx(54.0));
  CHECK(t.minutes(CargoKind::Icu, 0.0, 1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(t.minutes(CargoKind::Pallet463L, 100.0, 1), SimError);
  CHECK(t.ticks(CargoKind::UldLd3, 18000.0, 1) == minutes_to_ticks(61.0));
}

TEST_CASE("parameter presets") {
  CHECK(kC6.uld_ac_gse == doctest::Approx(5.7));
  CHECK(kC6.board_civ == doctest::Approx(47.0));
  CHECK(kC0.uld_ac_gse == doctest::Approx(7.1));
  CHECK(kC0.board_civ == doctest::Approx(60.0));
  ParameterSet c3 = ParameterSet::preset("C3");
  // The intermediate preset recalibrates boarding and the military rate only.
  CHECK(c3.board_civ == doctest::Approx(kC6.board_civ));
  CHECK(c3.p463l_ac_gse == doctest::Approx(kC6.p463l_ac_gse));
  CHECK(c3.uld_ac_gse == doctest::Approx(kC0.uld_ac_gse));
  CHECK_THROWS_AS(ParameterSet::preset("C9"), SimError);
}
