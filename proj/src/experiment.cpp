#include "ghsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

namespace ghsim {

namespace fs = std::filesystem;
using nlohmann::json;

ScheduleCorpus generate_corpus(int n, std::uint64_t seed, const GenParams& gen,
                               const SimOptions& options) {
  if (n < 1) throw SimError("corpus needs at least one schedule");
  ScheduleCorpus corpus;
  corpus.seed = seed;
  corpus.schedules.resize(std::size_t(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i)
    corpus.schedules[std::size_t(i)] = generate_schedule(i, seed, gen, options);
  return corpus;
}

std::string case_name(const CaseSpec& spec) {
  std::ostringstream os;
  os << int(spec.strategy) << spec.scenario.name();
  if (spec.atif != 1.0) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "_atif%.2f", spec.atif);
    os << buf;
  }
  return os.str();
}

namespace {

void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

std::uint64_t hash_double(double d) { return std::uint64_t(std::llround(d * 1e6)); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void write_records_csv(const std::string& path, const std::vector<RunResult>& runs) {
  std::ofstream out(path);
  if (!out) throw SimError("cannot write " + path);
  out << "schedule_id,aircraft_id,class,uld_kg,icu_kg,p463l_kg,pax,announced,departed,"
         "arrival,parked,steps_ready,checked,offload_start,offload_end,"
         "board_start,board_end,steps_removed,exit\n";
  for (const auto& run : runs)
    for (const auto& a : run.aircraft) {
      out << run.schedule_id << ',' << a.id << ',' << to_string(a.klass) << ',' << fmt(a.uld_kg)
          << ',' << fmt(a.icu_kg) << ',' << fmt(a.p463l_kg) << ',' << a.pax << ','
          << int(a.announced) << ',' << int(a.departed) << ',' << a.arrival << ',' << a.parked
          << ',' << a.steps_ready << ',' << a.checked << ',' << a.offload_start << ','
          << a.offload_end << ',' << a.board_start << ',' << a.board_end << ','
          << a.steps_removed << ',' << a.exit << '\n';
    }
}

void write_runs_csv(const std::string& path, const std::vector<RunResult>& runs) {
  std::ofstream out(path);
  if (!out) throw SimError("cannot write " + path);
  out << "schedule_id,oc_office_idle_ticks,oc_check_excursions\n";
  for (const auto& run : runs)
    out << run.schedule_id << ',' << run.oc_office_idle_ticks << ',' << run.oc_check_excursions
        << '\n';
}

void write_aggregate_csv(const std::string& path, const AggregateStats& stats) {
  std::ofstream out(path);
  if (!out) throw SimError("cannot write " + path);
  out << "metric,mean_min,stddev_min,n\n";
  for (Interval i : kReportIntervals) {
    auto it = stats.metrics.find(i);
    if (it == stats.metrics.end()) continue;
    out << interval_name(i) << ',' << fmt(it->second.mean) << ',' << fmt(it->second.stddev)
        << ',' << it->second.n << '\n';
  }
  out << "incomplete,," << ',' << stats.incomplete << '\n';
}

}  // namespace

std::uint64_t config_hash(const SimOptions& options, const CaseSpec& spec) {
  std::uint64_t h = 0x811c9dc5ULL;
  const auto& p = options.config.params;
  for (double v : {p.uld_ac_gse, p.uld_gse_tb, p.icu_general, p.p463l_ac_gse, p.board_civ,
                   p.board_mil})
    hash_mix(h, hash_double(v));
  const auto& f = options.config.fleet;
  for (int v : {f.highloaders, f.belt_loaders, f.pax_steps, f.tug_dollies, f.drivers, f.handlers,
                f.mil_handling_agents, f.mil_forklifts})
    hash_mix(h, std::uint64_t(v));
  const auto& c = options.config;
  hash_mix(h, std::uint64_t(c.horizon));
  for (double v : {c.walk_speed_civ, c.walk_speed_mil, c.drive_speed, c.taxi_speed,
                   c.dolly_capacity_uld, c.dolly_capacity_icu, c.second_driver_min})
    hash_mix(h, hash_double(v));
  for (Tick v : {c.before_boarding_gap, c.atc_call_lead, c.interaction_ticks, c.check_ticks,
                 c.max_start_bound})
    hash_mix(h, std::uint64_t(v));
  hash_mix(h, std::uint64_t(c.max_checks_per_excursion));
  hash_mix(h, std::uint64_t(c.driver_reserve));
  hash_mix(h, std::uint64_t(int(spec.strategy)));
  hash_mix(h, std::uint64_t(int(spec.scenario.kind)));
  hash_mix(h, std::uint64_t(spec.scenario.unannounced_large));
  hash_mix(h, hash_double(spec.atif));
  hash_mix(h, std::uint64_t(spec.atif_scales_military));
  return h;
}

CaseOutput run_case(const ScheduleCorpus& corpus, const CaseSpec& spec, const SimOptions& options,
                    const std::string& out_dir, int jobs, bool event_logs) {
  if (corpus.schedules.empty()) throw SimError("empty corpus");
  if (!out_dir.empty()) fs::create_directories(out_dir);
  const int n = int(corpus.schedules.size());
  CaseOutput out;
  out.spec = spec;
  out.runs.resize(std::size_t(n));
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i) {
    FlightSchedule s = apply_atif(corpus.schedules[std::size_t(i)], spec.atif,
                                  spec.atif_scales_military);
    s = apply_scenario_mask(s, spec.scenario);
    EventSink sink;
    std::ofstream log;
    if (!out_dir.empty() && event_logs) {
      log.open(out_dir + "/run_" + std::to_string(s.id) + ".jsonl");
      sink = [&log](const EventRecord& ev) { log << event_to_jsonl(ev) << '\n'; };
    }
    out.runs[std::size_t(i)] = run_simulation(s, options, sink);
  }
  out.stats = aggregate(out.runs, AggregateFilter{});

  if (!out_dir.empty()) {
    write_records_csv(out_dir + "/records.csv", out.runs);
    write_runs_csv(out_dir + "/runs.csv", out.runs);
    write_aggregate_csv(out_dir + "/aggregate.csv", out.stats);
    json manifest;
    manifest["case"] = case_name(spec);
    manifest["strategy"] = int(spec.strategy);
    manifest["scenario"] = spec.scenario.name();
    manifest["atif"] = spec.atif;
    manifest["atif_scales_military"] = spec.atif_scales_military;
    manifest["corpus_hash"] = std::to_string(corpus.content_hash());
    manifest["config_hash"] = std::to_string(config_hash(options, spec));
    manifest["n_schedules"] = n;
    std::ofstream mf(out_dir + "/manifest.json");
    if (!mf) throw SimError("cannot write " + out_dir + "/manifest.json");
    mf << manifest.dump(2) << "\n";
  }
  return out;
}

StoredCase load_case(const std::string& dir) {
  StoredCase sc;
  std::ifstream mf(dir + "/manifest.json");
  if (!mf) throw SimError("cannot read " + dir + "/manifest.json");
  json manifest = json::parse(mf);
  sc.corpus_hash = std::stoull(manifest.at("corpus_hash").get<std::string>());
  sc.name = manifest.value("case", "");

  std::ifstream rf(dir + "/records.csv");
  if (!rf) throw SimError("cannot read " + dir + "/records.csv");
  std::string line;
  std::getline(rf, line);  // header
  std::map<int, RunResult> by_schedule;
  while (std::getline(rf, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (cols.size() != 19) throw SimError("malformed records row in " + dir);
    AircraftRecord a;
    int schedule_id = std::stoi(cols[0]);
    a.id = std::stoi(cols[1]);
    a.klass = aircraft_class_from_string(cols[2]);
    a.uld_kg = std::stod(cols[3]);
    a.icu_kg = std::stod(cols[4]);
    a.p463l_kg = std::stod(cols[5]);
    a.pax = std::stoi(cols[6]);
    a.announced = cols[7] == "1";
    a.departed = cols[8] == "1";
    a.arrival = std::stoll(cols[9]);
    a.parked = std::stoll(cols[10]);
    a.steps_ready = std::stoll(cols[11]);
    a.checked = std::stoll(cols[12]);
    a.offload_start = std::stoll(cols[13]);
    a.offload_end = std::stoll(cols[14]);
    a.board_start = std::stoll(cols[15]);
    a.board_end = std::stoll(cols[16]);
    a.steps_removed = std::stoll(cols[17]);
    a.exit = std::stoll(cols[18]);
    auto& run = by_schedule[schedule_id];
    run.schedule_id = schedule_id;
    run.aircraft.push_back(a);
  }
  for (auto& [id, run] : by_schedule) sc.runs.push_back(std::move(run));
  return sc;
}

void write_comparison_csv(const std::string& path, const std::vector<ComparisonRow>& rows) {
  std::ofstream out(path);
  if (!out) throw SimError("cannot write " + path);
  out << "metric,delta,magnitude\n";
  for (const auto& r : rows)
    out << interval_name(r.metric) << ',' << fmt(r.delta.delta) << ','
        << to_string(r.delta.magnitude) << '\n';
}

TaskEstimates calibrate_estimates(const ScheduleCorpus& corpus, const SimOptions& options,
                                  int jobs) {
  CaseSpec base;  // strategy 1, scenario A, ATIF 1.0
  CaseOutput out = run_case(corpus, base, options, "", jobs, false);
  TaskEstimates est = options.estimates;

  auto mean_of = [](const std::vector<double>& v, double fallback) {
    if (v.empty()) return fallback;
    double s = 0;
    for (double x : v) s += x;
    return s / double(v.size());
  };

  std::vector<double> small_offl, mil_crew, supply, overhead;
  for (const auto& run : out.runs)
    for (const auto& a : run.aircraft) {
      if (!a.departed) continue;
      if (a.klass == AircraftClass::CivSmall && a.has_cargo())
        small_offl.push_back(ticks_to_minutes(a.offload_end - a.offload_start));
      if (a.klass == AircraftClass::MilLarge)
        mil_crew.push_back(ticks_to_minutes(a.offload_end - a.checked));
      if (a.klass == AircraftClass::CivLarge && a.pax > 0)
        supply.push_back(ticks_to_minutes(a.steps_ready - a.parked));
      if (a.klass == AircraftClass::CivLarge && a.has_cargo())
        overhead.push_back(ticks_to_minutes(a.offload_start - a.checked));
    }
  est.small_offload = mean_of(small_offl, est.small_offload);
  est.mil_offload_crew = mean_of(mil_crew, est.mil_offload_crew);
  est.paxsteps_supply = mean_of(supply, est.paxsteps_supply);
  est.paxsteps_retrieve = est.paxsteps_supply;
  est.large_offload_overhead = mean_of(overhead, est.large_offload_overhead);
  return est;
}

}  // namespace ghsim
