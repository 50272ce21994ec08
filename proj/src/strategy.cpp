#include "ghsim/strategy.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>

#include "json.hpp"

namespace ghsim {

namespace {

// Indices of the k entries with the smallest free_at (ties to the lower id).
std::vector<int> earliest_k(const std::vector<Tick>& free_at, int k) {
  std::vector<int> idx(free_at.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return free_at[std::size_t(a)] < free_at[std::size_t(b)]; });
  if (int(idx.size()) < k) throw SimError("fleet too small for the requested resource set");
  idx.resize(std::size_t(k));
  return idx;
}

struct TypePlan {
  CargoKind kind;
  double kg;
  int drivers;
};

// Builds an option for the given per-type plans, starting as early as the
// estimate list allows with all chosen resources simultaneously free.
OptionSet make_option(const ResourceEstimate& est, Tick now, const std::vector<TypePlan>& plans,
                      const DurationTable& table) {
  OptionSet opt;
  std::vector<Tick> handlers = est.handlers;
  std::vector<Tick> drivers = est.drivers;
  std::vector<Tick> highloaders = est.highloaders;
  std::vector<Tick> belt_loaders = est.belt_loaders;
  Tick start = now;
  const Tick taken = std::numeric_limits<Tick>::max();
  struct Crew {
    CargoKind kind;
    CrewAssign assign;
    double kg;
  };
  std::vector<Crew> crews;
  for (const auto& p : plans) {
    CrewAssign a;
    auto h = earliest_k(handlers, 1);
    start = std::max(start, handlers[std::size_t(h[0])]);
    a.handler = h[0];
    handlers[std::size_t(h[0])] = taken;
    auto& gse_pool = (p.kind == CargoKind::UldLd3) ? highloaders : belt_loaders;
    auto g = earliest_k(gse_pool, 1);
    start = std::max(start, gse_pool[std::size_t(g[0])]);
    a.gse = g[0];
    gse_pool[std::size_t(g[0])] = taken;
    auto ds = earliest_k(drivers, p.drivers);
    for (int d : ds) {
      start = std::max(start, drivers[std::size_t(d)]);
      drivers[std::size_t(d)] = taken;
      a.drivers.push_back(d);
    }
    crews.push_back({p.kind, std::move(a), p.kg});
  }
  start = std::max(start, now);
  opt.start_step = start;
  for (auto& c : crews) {
    c.assign.finish = start + table.ticks(c.kind, c.kg, int(c.assign.drivers.size()));
    if (c.kind == CargoKind::UldLd3)
      opt.uld = c.assign;
    else
      opt.icu = c.assign;
  }
  return opt;
}

}  // namespace

std::optional<OptionSet> ra_available(const ResourceEstimate& free_rss, Tick now,
                                      const CargoNeed& need, const DurationTable& table) {
  auto count_free = [&](const std::vector<Tick>& v) {
    return int(std::count_if(v.begin(), v.end(), [&](Tick t) { return t <= now; }));
  };
  int handlers = count_free(free_rss.handlers);
  int drivers = count_free(free_rss.drivers);
  int highloaders = count_free(free_rss.highloaders);
  int belt_loaders = count_free(free_rss.belt_loaders);

  // Long pole first: when one handler must choose between the cargo types,
  // start the type with the larger estimated duration.
  std::vector<TypePlan> order;
  if (need.uld_kg > 0) order.push_back({CargoKind::UldLd3, need.uld_kg, 1});
  if (need.icu_kg > 0) order.push_back({CargoKind::Icu, need.icu_kg, 1});
  std::stable_sort(order.begin(), order.end(), [&](const TypePlan& a, const TypePlan& b) {
    return table.minutes(a.kind, a.kg, 1) > table.minutes(b.kind, b.kg, 1);
  });

  std::vector<TypePlan> plans;
  for (const auto& p : order) {
    bool gse_ok = (p.kind == CargoKind::UldLd3) ? highloaders > 0 : belt_loaders > 0;
    if (handlers > 0 && drivers > 0 && gse_ok) {
      plans.push_back(p);
      --handlers;
      --drivers;
      if (p.kind == CargoKind::UldLd3)
        --highloaders;
      else
        --belt_loaders;
    }
  }
  if (plans.empty()) return std::nullopt;
  for (auto& p : plans)
    if (drivers > 0) {
      p.drivers = 2;
      --drivers;
    }
  OptionSet opt = make_option(free_rss, now, plans, table);
  opt.start_step = now;
  for (CrewAssign* c : {&opt.uld, &opt.icu})
    if (c->active()) {
      CargoKind k = (c == &opt.uld) ? CargoKind::UldLd3 : CargoKind::Icu;
      double kg = (c == &opt.uld) ? need.uld_kg : need.icu_kg;
      c->finish = now + table.ticks(k, kg, int(c->drivers.size()));
    }
  return opt;
}

OptionSet ra_ahead(const ResourceEstimate& est_rss, Tick now, const CargoNeed& need,
                   CargoSelector selector, OptionMode mode, const DurationTable& table) {
  CargoNeed sel = need;
  if (selector == CargoSelector::Uld) sel.icu_kg = 0;
  if (selector == CargoSelector::Icu) sel.uld_kg = 0;

  auto plan_for = [&](int drivers_per_type) {
    std::vector<TypePlan> plans;
    if (sel.uld_kg > 0) plans.push_back({CargoKind::UldLd3, sel.uld_kg, drivers_per_type});
    if (sel.icu_kg > 0) plans.push_back({CargoKind::Icu, sel.icu_kg, drivers_per_type});
    // Extras are shed from the shorter type when the fleet cannot cover them.
    int want = 0;
    for (auto& p : plans) want += p.drivers;
    int have = int(est_rss.drivers.size());
    std::stable_sort(plans.begin(), plans.end(), [&](const TypePlan& a, const TypePlan& b) {
      return table.minutes(a.kind, a.kg, 1) > table.minutes(b.kind, b.kg, 1);
    });
    for (auto it = plans.rbegin(); it != plans.rend() && want > have; ++it)
      while (it->drivers > 1 && want > have) {
        --it->drivers;
        --want;
      }
    return plans;
  };

  if (!sel.any()) {
    OptionSet empty;
    empty.start_step = now;
    return empty;
  }
  if (mode == OptionMode::Best) {
    OptionSet lo = make_option(est_rss, now, plan_for(1), table);
    OptionSet hi = make_option(est_rss, now, plan_for(2), table);
    Tick lo_end = std::max(lo.est_uld(), lo.est_icu());
    Tick hi_end = std::max(hi.est_uld(), hi.est_icu());
    if (hi_end < lo_end) return hi;
    if (lo_end < hi_end) return lo;
    return lo.start_step <= hi.start_step ? lo : hi;
  }
  return make_option(est_rss, now, plan_for(mode == OptionMode::Min ? 1 : 2), table);
}

ResourceEstimate rss_update(ResourceEstimate est_rss, const OptionSet& option) {
  auto consume = [&](std::vector<Tick>& pool, int id, Tick until) {
    if (id < 0 || id >= int(pool.size())) throw SimError("rss_update: unknown resource id");
    if (pool[std::size_t(id)] > option.start_step)
      throw SimError("rss_update: option is infeasible under the estimate list");
    pool[std::size_t(id)] = until;
  };
  for (const CrewAssign* c : {&option.uld, &option.icu}) {
    if (!c->active()) continue;
    bool is_uld = (c == &option.uld);
    if (c->handler) consume(est_rss.handlers, *c->handler, c->finish);
    if (c->gse) consume(is_uld ? est_rss.highloaders : est_rss.belt_loaders, *c->gse, c->finish);
    for (int d : c->drivers) consume(est_rss.drivers, d, c->finish);
  }
  return est_rss;
}

BestOptionResult generate_best_option(const ResourceEstimate& est_rss, Tick now,
                                      const CargoNeed& need_a,
                                      const std::optional<CargoNeed>& need_b, Tick max_start_a,
                                      const DurationTable& table) {
  const bool both_types = need_a.uld_kg > 0 && need_a.icu_kg > 0;
  OptionSet all_min = ra_ahead(est_rss, now, need_a, CargoSelector::All, OptionMode::Min, table);
  const bool min_reachable_now = all_min.start_step <= now;

  struct Candidate {
    OptionSet a;
    std::optional<OptionSet> b;
    std::string label;
  };
  std::vector<Candidate> cands;

  auto with_b = [&](const OptionSet& oa, const std::string& label) {
    Candidate c{oa, std::nullopt, label};
    if (need_b && need_b->any()) {
      ResourceEstimate upd = rss_update(est_rss, oa);
      c.b = ra_ahead(upd, now, *need_b, CargoSelector::All, OptionMode::Best, table);
    }
    cands.push_back(std::move(c));
  };

  if (!min_reachable_now && both_types) {
    // Only one cargo type can start: pair each single-type option for A with
    // the best option for A's other cargo type.
    struct Combo {
      CargoSelector sel;
      OptionMode mode;
      CargoSelector other;
      const char* label;
    };
    const Combo combos[] = {
        {CargoSelector::Uld, OptionMode::Min, CargoSelector::Icu, "A:ULD/min + A:ICU/best"},
        {CargoSelector::Uld, OptionMode::Max, CargoSelector::Icu, "A:ULD/max + A:ICU/best"},
        {CargoSelector::Icu, OptionMode::Min, CargoSelector::Uld, "A:ICU/min + A:ULD/best"},
        {CargoSelector::Icu, OptionMode::Max, CargoSelector::Uld, "A:ICU/max + A:ULD/best"},
    };
    for (const auto& cb : combos) {
      OptionSet oa = ra_ahead(est_rss, now, need_a, cb.sel, cb.mode, table);
      ResourceEstimate upd = rss_update(est_rss, oa);
      OptionSet ob = ra_ahead(upd, now, need_a, cb.other, OptionMode::Best, table);
      cands.push_back({oa, ob, cb.label});
    }
  } else {
    with_b(all_min, "A:all/min + B:best");
    with_b(ra_ahead(est_rss, now, need_a, CargoSelector::All, OptionMode::Max, table),
           "A:all/max + B:best");
    if (auto avail = ra_available(est_rss, now, need_a, table))
      with_b(*avail, "A:available + B:best");
  }

  auto score = [&](const Candidate& c) {
    Tick s = std::max(c.a.est_uld(), c.a.est_icu());
    if (c.b) s = std::max({s, c.b->est_uld(), c.b->est_icu()});
    if (c.a.start_step > max_start_a) s += kLateStartPenalty;
    return s;
  };

  if (cands.empty()) throw SimError("no allocation combinations to evaluate");
  const Candidate* best = &cands.front();
  Tick best_score = score(cands.front());
  for (const auto& c : cands) {
    Tick s = score(c);
    if (s < best_score) {
      best = &c;
      best_score = s;
    }
  }
  return {best->a, best_score, best->label};
}

TaskEstimates TaskEstimates::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimError("cannot read estimates file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  TaskEstimates e;
  e.paxsteps_supply = j.value("paxsteps_supply", e.paxsteps_supply);
  e.paxsteps_retrieve = j.value("paxsteps_retrieve", e.paxsteps_retrieve);
  e.small_offload = j.value("small_offload", e.small_offload);
  e.mil_offload_crew = j.value("mil_offload_crew", e.mil_offload_crew);
  e.large_offload_overhead = j.value("large_offload_overhead", e.large_offload_overhead);
  if (j.contains("offload_table")) {
    auto read_rows = [&](const char* key, std::array<DurationTable::Row, 3>& rows) {
      const auto& arr = j["offload_table"].at(key);
      for (std::size_t i = 0; i < rows.size() && i < arr.size(); ++i)
        rows[i] = {arr[i].at("kg").get<double>(), arr[i].at("one_driver").get<double>(),
                   arr[i].at("two_drivers").get<double>()};
    };
    read_rows("uld", e.table.uld);
    read_rows("icu", e.table.icu);
  }
  return e;
}

void TaskEstimates::save_json(const std::string& path) const {
  nlohmann::json j;
  j["paxsteps_supply"] = paxsteps_supply;
  j["paxsteps_retrieve"] = paxsteps_retrieve;
  j["small_offload"] = small_offload;
  j["mil_offload_crew"] = mil_offload_crew;
  j["large_offload_overhead"] = large_offload_overhead;
  auto rows_to_json = [](const std::array<DurationTable::Row, 3>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
      arr.push_back({{"kg", r.kg}, {"one_driver", r.one_driver}, {"two_drivers", r.two_drivers}});
    return arr;
  };
  j["offload_table"] = {{"uld", rows_to_json(table.uld)}, {"icu", rows_to_json(table.icu)}};
  std::ofstream out(path);
  if (!out) throw SimError("cannot write estimates file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ghsim
