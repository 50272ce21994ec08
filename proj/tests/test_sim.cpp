#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ghsim/sim.hpp"

using namespace ghsim;

namespace {

constexpr std::uint64_t kSeeds[] = {11, 23, 37, 41, 59, 67, 73, 89, 97, 103};
constexpr int kSchedulesPerSeed = 10;

SimOptions options_for(StrategyKind strategy) {
  SimOptions opt;
  opt.strategy = strategy;
  opt.strict_checks = true;  // per-tick conservation and exclusivity audits
  return opt;
}

FlightSchedule schedule_for(std::uint64_t seed, int id, const ScenarioSpec& spec) {
  SimOptions opt;
  FlightSchedule s = generate_schedule(id, seed, GenParams{}, opt);
  return apply_scenario_mask(s, spec);
}

bool same_records(const RunResult& a, const RunResult& b) {
  if (a.aircraft.size() != b.aircraft.size()) return false;
  for (std::size_t i = 0; i < a.aircraft.size(); ++i) {
    const AircraftRecord& x = a.aircraft[i];
    const AircraftRecord& y = b.aircraft[i];
    if (x.id != y.id || x.departed != y.departed || x.arrival != y.arrival ||
        x.parked != y.parked || x.steps_ready != y.steps_ready || x.checked != y.checked ||
        x.offload_start != y.offload_start || x.offload_end != y.offload_end ||
        x.board_start != y.board_start || x.board_end != y.board_end ||
        x.steps_removed != y.steps_removed || x.exit != y.exit)
      return false;
  }
  return a.oc_office_idle_ticks == b.oc_office_idle_ticks &&
         a.oc_check_excursions == b.oc_check_excursions;
}

}  // namespace

TEST_CASE("every departed aircraft has a consistent, fully decomposable timeline") {
  for (std::uint64_t seed : kSeeds)
    for (int id = 0; id < kSchedulesPerSeed; ++id) {
      FlightSchedule s = schedule_for(seed, id, ScenarioSpec::parse("A"));
      RunResult r = run_simulation(s, options_for(StrategyKind::MaxAvailable));
      REQUIRE(r.aircraft.size() == s.entries.size());
      for (const AircraftRecord& ac : r.aircraft) {
        REQUIRE(ac.departed);
        // Milestones are monotone, so the nine intervals sum to the TAT.
        CHECK(ac.arrival <= ac.parked);
        CHECK(ac.parked <= ac.steps_ready);
        CHECK(ac.steps_ready <= ac.checked);
        CHECK(ac.checked <= ac.offload_start);
        CHECK(ac.offload_start <= ac.offload_end);
        CHECK(ac.offload_end <= ac.board_start);
        CHECK(ac.board_start <= ac.board_end);
        CHECK(ac.board_end <= ac.steps_removed);
        CHECK(ac.steps_removed <= ac.exit);
        TimelineMinutes t = decompose_timeline(ac);
        CHECK(t.tat() == doctest::Approx(ticks_to_minutes(ac.exit - ac.arrival)).epsilon(1e-12));
      }
    }
}

TEST_CASE("cargo is conserved through the whole run") {
  // strict_checks already audits conservation every tick and would throw;
  // on top of that the final audit must show everything delivered.
  for (std::uint64_t seed : kSeeds)
    for (int id = 0; id < kSchedulesPerSeed; ++id) {
      FlightSchedule s = schedule_for(seed, id, ScenarioSpec::parse("A"));
      double expected = 0;
      for (const auto& e : s.entries) expected += e.uld_kg + e.icu_kg + e.p463l_kg;
      Simulation sim(s, options_for(StrategyKind::MaxAvailable));
      RunResult r = sim.run();
      CHECK(r.aircraft.size() == s.entries.size());
      CargoAudit a = sim.audit_cargo();
      CHECK(a.created == doctest::Approx(expected));
      CHECK(a.on_aircraft == doctest::Approx(0.0));
      CHECK(a.in_transit == doctest::Approx(0.0));
      CHECK(a.delivered == doctest::Approx(expected));
    }
}

TEST_CASE("base strategy offloads civilians in arrival order") {
  for (std::uint64_t seed : kSeeds)
    for (int id = 0; id < kSchedulesPerSeed; ++id) {
      FlightSchedule s = schedule_for(seed, id, ScenarioSpec::parse("B"));
      RunResult r = run_simulation(s, options_for(StrategyKind::MaxAvailable));
      std::vector<const AircraftRecord*> cargo_civs;
      for (const auto& ac : r.aircraft)
        if (ac.klass != AircraftClass::MilLarge && ac.has_cargo()) cargo_civs.push_back(&ac);
      std::sort(cargo_civs.begin(), cargo_civs.end(),
                [](const AircraftRecord* a, const AircraftRecord* b) {
                  return std::tie(a->arrival, a->id) < std::tie(b->arrival, b->id);
                });
      for (std::size_t i = 1; i < cargo_civs.size(); ++i)
        CHECK(cargo_civs[i]->offload_start >= cargo_civs[i - 1]->offload_start);
    }
}

TEST_CASE("full foreknowledge removes all check excursions") {
  for (std::uint64_t seed : kSeeds) {
    FlightSchedule base = generate_schedule(0, seed, GenParams{}, SimOptions{});
    RunResult a = run_simulation(apply_scenario_mask(base, ScenarioSpec::parse("A")),
                                 options_for(StrategyKind::MaxAvailable));
    RunResult b = run_simulation(apply_scenario_mask(base, ScenarioSpec::parse("B")),
                                 options_for(StrategyKind::MaxAvailable));
    CHECK(b.oc_check_excursions == 0);
    CHECK(a.oc_check_excursions > 0);
    // With no announcements the coordinator is out of the office more.
    CHECK(b.oc_office_idle_ticks >= a.oc_office_idle_ticks);
  }
}

TEST_CASE("offload-to-boarding gap is respected for passenger aircraft") {
  SimOptions opt = options_for(StrategyKind::MaxAvailable);
  for (std::uint64_t seed : {kSeeds[0], kSeeds[1], kSeeds[2]})
    for (int id = 0; id < kSchedulesPerSeed; ++id) {
      FlightSchedule s = schedule_for(seed, id, ScenarioSpec::parse("A"));
      RunResult r = run_simulation(s, opt);
      for (const auto& ac : r.aircraft)
        if (ac.pax > 0 && ac.has_cargo())
          CHECK(ac.board_start - ac.offload_end >= opt.config.before_boarding_gap);
    }
}

TEST_CASE("reruns are identical, different strategies may differ") {
  for (std::uint64_t seed : {kSeeds[0], kSeeds[4], kSeeds[9]}) {
    FlightSchedule s = schedule_for(seed, 0, ScenarioSpec::parse("Cu3"));
    RunResult r1 = run_simulation(s, options_for(StrategyKind::MaxAvailable));
    RunResult r2 = run_simulation(s, options_for(StrategyKind::MaxAvailable));
    CHECK(same_records(r1, r2));
    RunResult p1 = run_simulation(s, options_for(StrategyKind::MaxAvailableAnticipation));
    RunResult p2 = run_simulation(s, options_for(StrategyKind::MaxAvailableAnticipation));
    CHECK(same_records(p1, p2));
  }
}

TEST_CASE("compressed arrivals never help the turn-around") {
  SimOptions opt = options_for(StrategyKind::MaxAvailable);
  AggregateFilter filter;
  for (std::uint64_t seed : {kSeeds[0], kSeeds[5]}) {
    FlightSchedule base = schedule_for(seed, 0, ScenarioSpec::parse("A"));
    double prev = -1.0;
    for (double f : {1.0, 0.8, 0.6}) {
      RunResult r = run_simulation(apply_atif(base, f), opt);
      AggregateStats st = aggregate({r}, filter);
      double tat = st.metrics.at(Interval::Tat).mean;
      if (prev >= 0.0) CHECK(tat >= prev);
      prev = tat;
    }
  }
}

TEST_CASE("aircraft still on the ground at the horizon are counted, not dropped") {
  FlightSchedule s = schedule_for(kSeeds[0], 0, ScenarioSpec::parse("A"));
  SimOptions opt = options_for(StrategyKind::MaxAvailable);
  opt.config.horizon = s.entries.back().arrival_tick + 10;  // cut the day short
  Simulation sim(s, opt);
  while (sim.tick() < opt.config.horizon && !sim.all_departed()) sim.step();
  // No crash, and the record set still covers every scheduled aircraft once
  // the run is driven to completion.
  RunResult r = sim.run();
  CHECK(r.aircraft.size() == s.entries.size());
}

TEST_CASE("event stream reports coherent transitions") {
  FlightSchedule s = schedule_for(kSeeds[0], 1, ScenarioSpec::parse("A"));
  std::vector<EventRecord> events;
  run_simulation(s, options_for(StrategyKind::MaxAvailable),
                 [&](const EventRecord& ev) { events.push_back(ev); });
  CHECK(!events.empty());
  Tick prev = 0;
  int departures = 0;
  for (const auto& ev : events) {
    CHECK(ev.tick >= prev);
    prev = ev.tick;
    if (ev.to == "departed") ++departures;
  }
  CHECK(departures == int(s.entries.size()));
  // Serialized form is one JSON object per line.
  std::string line = event_to_jsonl(events.front());
  CHECK(line.find("\"tick\"") != std::string::npos);
  CHECK(line.find('\n') == std::string::npos);
}
