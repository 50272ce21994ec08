#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ghsim/metrics.hpp"
#include "ghsim/rng.hpp"

using namespace ghsim;

namespace {

AircraftRecord departed_record() {
  AircraftRecord r;
  r.id = 1;
  r.klass = AircraftClass::CivLarge;
  r.uld_kg = 15000;
  r.icu_kg = 5000;
  r.pax = 40;
  r.departed = true;
  r.arrival = 100;
  r.parked = 112;
  r.steps_ready = 130;
  r.checked = 160;
  r.offload_start = 200;
  r.offload_end = 860;
  r.board_start = 1004;
  r.board_end = 1360;
  r.steps_removed = 1370;
  r.exit = 1390;
  return r;
}

RunResult run_of(std::vector<AircraftRecord> acs, int id = 0) {
  RunResult r;
  r.schedule_id = id;
  r.aircraft = std::move(acs);
  return r;
}

}  // namespace

TEST_CASE("timeline decomposition sums to the turn-around time") {
  AircraftRecord r = departed_record();
  TimelineMinutes t = decompose_timeline(r);
  CHECK(t.tat() == doctest::Approx(ticks_to_minutes(r.exit - r.arrival)));
  CHECK(t.bp == doctest::Approx(ticks_to_minutes(r.parked - r.arrival)));
  CHECK(t.offl == doctest::Approx(ticks_to_minutes(r.offload_end - r.offload_start)));
  CHECK(t.bb == doctest::Approx(ticks_to_minutes(r.board_start - r.offload_end)));
  CHECK(t.e == doctest::Approx(ticks_to_minutes(r.exit - r.steps_removed)));
  CHECK(t.get(Interval::Tat) == doctest::Approx(t.tat()));
  CHECK(t.get(Interval::Offl) == doctest::Approx(t.offl));

  r.departed = false;
  CHECK_THROWS_AS(decompose_timeline(r), SimError);
}

TEST_CASE("aggregate filter selects large civilians with cargo and pax by default") {
  AircraftRecord big = departed_record();
  AircraftRecord small = departed_record();
  small.id = 2;
  small.klass = AircraftClass::CivSmall;
  AircraftRecord freighter = departed_record();
  freighter.id = 3;
  freighter.pax = 0;
  AircraftRecord stuck = departed_record();
  stuck.id = 4;
  stuck.departed = false;

  auto runs = std::vector<RunResult>{run_of({big, small, freighter, stuck})};
  AggregateStats s = aggregate(runs, AggregateFilter{});
  CHECK(s.metrics.at(Interval::Tat).n == 1);
  CHECK(s.metrics.at(Interval::Tat).mean ==
        doctest::Approx(ticks_to_minutes(big.exit - big.arrival)));
  CHECK(s.incomplete == 1);

  AggregateFilter loose;
  loose.klass.reset();
  loose.require_cargo = false;
  loose.require_pax = false;
  CHECK(aggregate(runs, loose).metrics.at(Interval::Tat).n == 3);
}

TEST_CASE("mean and stddev worked example") {
  // Three aircraft with TATs of 10, 20, 30 minutes: mean 20, sample sd 10.
  std::vector<AircraftRecord> acs;
  for (int i = 0; i < 3; ++i) {
    AircraftRecord r = departed_record();
    r.id = i;
    r.exit = r.arrival + minutes_to_ticks(10.0 * (i + 1));
    // keep milestones monotone for the short turn-arounds
    r.steps_ready = r.checked = r.offload_start = r.offload_end = r.parked;
    r.board_start = r.board_end = r.steps_removed = r.exit;
    acs.push_back(r);
  }
  AggregateStats s = aggregate({run_of(acs)}, AggregateFilter{});
  CHECK(s.metrics.at(Interval::Tat).mean == doctest::Approx(20.0));
  CHECK(s.metrics.at(Interval::Tat).stddev == doctest::Approx(10.0));
  auto pooled = pooled_values({run_of(acs)}, AggregateFilter{}, Interval::Tat);
  REQUIRE(pooled.size() == 3);
  std::sort(pooled.begin(), pooled.end());
  CHECK(pooled.front() == doctest::Approx(10.0));
  CHECK(pooled.back() == doctest::Approx(30.0));
}

TEST_CASE("cliffs delta worked examples") {
  CHECK(cliffs_delta({1, 2, 3}, {4, 5, 6}).delta == doctest::Approx(-1.0));
  CHECK(cliffs_delta({4, 5, 6}, {1, 2, 3}).delta == doctest::Approx(1.0));
  CHECK(cliffs_delta({1, 2, 3}, {1, 2, 3}).delta == doctest::Approx(0.0));
  // 2x2 with two wins and two ties: (2 - 0) / 4.
  CHECK(cliffs_delta({1, 2}, {1, 1}).delta == doctest::Approx(0.5));
  CHECK_THROWS_AS(cliffs_delta({}, {1.0}), SimError);
  CHECK_THROWS_AS(cliffs_delta({1.0}, {}), SimError);
}

TEST_CASE("cliffs delta magnitude thresholds") {
  auto mag = [](double d) {
    // Samples with an exact delta: wins/n pairs win, the rest lose.
    int n = 1000;
    std::vector<double> xs(n, 0.0), ys(n, 1.0);
    int wins = int(std::lround((d + 1.0) / 2.0 * n));
    for (int i = 0; i < wins; ++i) xs[std::size_t(i)] = 2.0;
    // delta = (wins*n - (n-wins)*n) / n^2 = 2*wins/n - 1 = d
    return cliffs_delta(xs, ys);
  };
  CHECK(mag(0.10).magnitude == EffectMagnitude::Negligible);
  CHECK(mag(0.20).magnitude == EffectMagnitude::Small);
  CHECK(mag(-0.20).magnitude == EffectMagnitude::Small);
  CHECK(mag(0.40).magnitude == EffectMagnitude::Medium);
  CHECK(mag(0.60).magnitude == EffectMagnitude::Large);
  CHECK(cliffs_delta({0, 1}, {0, 1}).magnitude == EffectMagnitude::Negligible);
}

TEST_CASE("cliffs delta is antisymmetric and rank-based") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> xs, ys;
    int nx = 2 + int(rng.next() % 12);
    int ny = 2 + int(rng.next() % 12);
    for (int i = 0; i < nx; ++i) xs.push_back(double(rng.next() % 50));
    for (int i = 0; i < ny; ++i) ys.push_back(double(rng.next() % 50));

    CliffsDelta ab = cliffs_delta(xs, ys);
    CliffsDelta ba = cliffs_delta(ys, xs);
    CHECK(ab.delta == doctest::Approx(-ba.delta));
    CHECK(ab.magnitude == ba.magnitude);

    // Invariant under any strictly increasing transform.
    auto warp = [](std::vector<double> v) {
      for (double& x : v) x = std::exp(x / 10.0) + 3.0 * x;
      return v;
    };
    CliffsDelta warped = cliffs_delta(warp(xs), warp(ys));
    CHECK(warped.delta == doctest::Approx(ab.delta));
  }
}

TEST_CASE("case comparison reports one row per headline interval") {
  std::vector<AircraftRecord> fast, slow;
  for (int i = 0; i < 5; ++i) {
    AircraftRecord r = departed_record();
    r.id = i;
    fast.push_back(r);
    r.exit += minutes_to_ticks(60.0);
    slow.push_back(r);
  }
  auto rows = compare_cases({run_of(fast)}, {run_of(slow)}, AggregateFilter{});
  REQUIRE(rows.size() == kReportIntervals.size());
  for (const auto& row : rows) {
    if (row.metric == Interval::Tat) {
      CHECK(row.delta.delta == doctest::Approx(-1.0));
      CHECK(row.delta.magnitude == EffectMagnitude::Large);
    } else if (row.metric == Interval::Offl) {
      CHECK(row.delta.delta == doctest::Approx(0.0));
    }
  }
}
