#include "ghsim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ghsim/rng.hpp"
#include "json.hpp"

namespace ghsim {

using nlohmann::json;

std::vector<FlightEntry> FlightSchedule::civilian() const {
  std::vector<FlightEntry> out;
  for (const auto& e : entries)
    if (!e.military()) out.push_back(e);
  return out;
}

std::vector<FlightEntry> FlightSchedule::military_entries() const {
  std::vector<FlightEntry> out;
  for (const auto& e : entries)
    if (e.military()) out.push_back(e);
  return out;
}

namespace {

json entry_to_json(const FlightEntry& e) {
  return json{{"id", e.id},
              {"arrival_tick", e.arrival_tick},
              {"class", to_string(e.klass)},
              {"uld_kg", e.uld_kg},
              {"icu_kg", e.icu_kg},
              {"p463l_kg", e.p463l_kg},
              {"pax", e.pax},
              {"announced", e.announced}};
}

FlightEntry entry_from_json(const json& j) {
  FlightEntry e;
  e.id = j.at("id").get<int>();
  e.arrival_tick = j.at("arrival_tick").get<Tick>();
  e.klass = aircraft_class_from_string(j.at("class").get<std::string>());
  e.uld_kg = j.at("uld_kg").get<double>();
  e.icu_kg = j.at("icu_kg").get<double>();
  e.p463l_kg = j.at("p463l_kg").get<double>();
  e.pax = j.at("pax").get<int>();
  e.announced = j.value("announced", true);
  return e;
}

void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

}  // namespace

std::uint64_t ScheduleCorpus::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  hash_mix(h, std::uint64_t(version));
  hash_mix(h, seed);
  for (const auto& s : schedules) {
    hash_mix(h, std::uint64_t(s.id));
    hash_mix(h, s.seed);
    for (const auto& e : s.entries) {
      hash_mix(h, std::uint64_t(e.id));
      hash_mix(h, std::uint64_t(e.arrival_tick));
      hash_mix(h, std::uint64_t(e.klass));
      hash_mix(h, std::uint64_t(std::llround(e.uld_kg * 10)));
      hash_mix(h, std::uint64_t(std::llround(e.icu_kg * 10)));
      hash_mix(h, std::uint64_t(std::llround(e.p463l_kg * 10)));
      hash_mix(h, std::uint64_t(e.pax));
    }
  }
  return h;
}

ScheduleCorpus ScheduleCorpus::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimError("cannot read corpus file: " + path);
  json j = json::parse(in);
  if (j.value("version", 0) != 1) throw SimError("unsupported corpus version in " + path);
  ScheduleCorpus c;
  c.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& sj : j.at("schedules")) {
    FlightSchedule s;
    s.id = sj.at("id").get<int>();
    s.seed = sj.at("seed").get<std::uint64_t>();
    for (const auto& ej : sj.at("entries")) s.entries.push_back(entry_from_json(ej));
    c.schedules.push_back(std::move(s));
  }
  return c;
}

void ScheduleCorpus::save_json(const std::string& path) const {
  json j;
  j["version"] = version;
  j["seed"] = seed;
  j["schedules"] = json::array();
  for (const auto& s : schedules) {
    json sj{{"id", s.id}, {"seed", s.seed}, {"entries", json::array()}};
    for (const auto& e : s.entries) sj["entries"].push_back(entry_to_json(e));
    j["schedules"].push_back(std::move(sj));
  }
  std::ofstream out(path);
  if (!out) throw SimError("cannot write corpus file: " + path);
  out << j.dump() << "\n";
}

FlightSchedule apply_atif(const FlightSchedule& schedule, double factor, bool scale_military) {
  if (factor <= 0.0) throw SimError("ATIF must be positive");
  FlightSchedule out = schedule;
  if (out.entries.empty()) return out;
  Tick anchor = out.entries.front().arrival_tick;
  for (const auto& e : out.entries)
    anchor = std::min(anchor, e.arrival_tick);
  for (auto& e : out.entries) {
    if (e.military() && !scale_military) continue;
    e.arrival_tick = anchor + Tick(std::llround(double(e.arrival_tick - anchor) * factor));
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const FlightEntry& a, const FlightEntry& b) {
                     return a.arrival_tick < b.arrival_tick;
                   });
  return out;
}

FlightSchedule apply_scenario_mask(const FlightSchedule& schedule, const ScenarioSpec& spec) {
  FlightSchedule out = schedule;
  switch (spec.kind) {
    case ScenarioKind::Unknown:
      for (auto& e : out.entries)
        if (!e.military()) e.announced = false;
      break;
    case ScenarioKind::Known:
      for (auto& e : out.entries) e.announced = true;
      break;
    case ScenarioKind::Incomplete: {
      std::vector<int> large_ids;
      for (auto& e : out.entries) {
        e.announced = true;
        if (e.klass == AircraftClass::CivLarge) large_ids.push_back(e.id);
      }
      if (spec.unannounced_large > int(large_ids.size()))
        throw SimError("scenario requests more unannounced large aircraft than the schedule has");
      Rng rng(mix_seed(out.seed, 0x5c3a9u));
      for (std::size_t i = large_ids.size(); i > 1; --i)
        std::swap(large_ids[i - 1], large_ids[std::size_t(rng.next() % i)]);
      for (int i = 0; i < spec.unannounced_large; ++i)
        for (auto& e : out.entries)
          if (e.id == large_ids[std::size_t(i)]) e.announced = false;
      break;
    }
  }
  return out;
}

}  // namespace ghsim
