#include "ghsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "ghsim/inventory.hpp"
#include "ghsim/rng.hpp"
#include "json.hpp"

namespace ghsim {

std::string event_to_jsonl(const EventRecord& ev) {
  nlohmann::json j{{"tick", ev.tick},
                   {"agent", ev.agent},
                   {"from", ev.from},
                   {"to", ev.to},
                   {"detail", ev.detail}};
  return j.dump();
}

namespace {
constexpr Tick kBusy = std::numeric_limits<Tick>::max() / 4;
constexpr double kEps = 1e-9;
}  // namespace

struct Simulation::Impl {
  SimOptions opt;
  FlightSchedule schedule;
  EventSink sink;

  NodeId n_entry = -1, n_exit = -1, n_office = -1, n_gse = -1;
  NodeId n_drop_civ = -1, n_drop_mil = -1, n_tower = -1, n_movcon = -1, n_milco = -1;

  GseFleet fleet;
  ParkingRegistry parking;
  MilitaryResourceLedger ledger;

  std::vector<Tick> handler_free, driver_free;
  std::vector<int> hl_ids, bl_ids;  // GSE unit ids in model-id order

  Tick now = 0;

  struct Ac {
    FlightEntry e;
    AircraftRecord rec;
    enum class Ph { Inbound, Hold, TaxiIn, OnStand, TaxiOut, Done };
    Ph ph = Ph::Inbound;
    NodeId spot = -1;
    Tick parked_at = 0, exit_at = 0;

    bool checked = false;
    bool check_scheduled = false;
    bool in_offload_q = false;
    bool steps_needed = false;
    bool steps_requested = false;
    bool steps_on_site = false;
    int steps_unit = -1;
    bool uld_pending = false, icu_pending = false, mil_pending = false;
    int active_crews = 0;
    bool offload_done = false;
    Tick offload_end = 0;
    bool board_sched = false, post_board = false;
    Tick board_end = 0;
    double rem_uld = 0, rem_icu = 0, rem_463 = 0;
    bool arrived() const { return ph != Ph::Inbound; }
  };
  std::vector<Ac> acs;
  std::deque<int> entry_queue;

  // Offloading coordinator.
  Tick oc_busy_until = 0;
  Tick oc_return = 0;  // > now while the OC is out checking aircraft
  Tick oc_idle_ticks = 0;
  int excursions = 0;
  std::vector<std::pair<Tick, int>> pending_checks;  // (tick, aircraft index)
  std::deque<std::pair<int, bool>> steps_q;          // (aircraft index, retrieve)
  std::vector<int> offload_q;                        // sorted by (arrival, id)

  ResourceEstimate est;  // the OC's belief, used by the anticipation strategy

  struct CivCrew {
    int ac = -1;
    CargoKind kind = CargoKind::Icu;
    int handler = -1;  // -1 on small aircraft
    int gse = -1;      // GSE unit id, -1 on small aircraft
    std::vector<int> drivers;
    Tick present_at = 0;
    Tick drive_leg = 5;
    double load_rate = 1, unload_rate = 1, batch = 1;
    double remaining = 0, in_transit = 0;
    struct Drv {
      enum class Phase { AtAircraft, DriveOut, Unload, DriveBack, Done };
      Phase phase = Phase::AtAircraft;
      Tick timer = 0;
      double load = 0;
      Tick last_delivery = 0;
    };
    std::vector<Drv> ds;
    Tick empty_tick = -1;
    bool small = false;
    bool handler_released = false;
    bool done = false;
  };
  std::vector<CivCrew> crews;

  struct MilCrew {
    int ac = -1;
    Tick start = 0, end = 0;
    int handler = -1, gse = -1;
    bool started = false, done = false;
  };
  std::vector<MilCrew> mil_crews;

  struct StepsJob {
    int ac = -1, unit = -1, driver = -1;
    Tick at_spot = 0;
    bool retrieve = false;
  };
  std::vector<StepsJob> steps_jobs;

  std::vector<std::pair<Tick, int>> gse_park_sched;  // (tick, unit id)

  // Military information chain: ATC walker, MOVCON, military coordinator.
  std::deque<int> atc_q;
  Tick atc_free = 0;
  std::deque<std::pair<Tick, int>> movcon_inbox;  // (relay-complete tick, aircraft index)
  Tick movcon_free = 0;
  std::optional<std::pair<Tick, int>> movcon_at_office;  // (ready tick, aircraft index)
  std::deque<int> milco_q;
  Tick milco_free = 0;
  std::optional<std::pair<Tick, int>> milco_at_office;
  int reserved_hl = -1;  // unit id held under a military reservation

  double delivered_kg = 0;

  // Schedule-generation mode: arrivals are drawn on the fly.
  bool generating = false;
  GenParams gen;
  Rng rng{0};
  std::deque<Tick> pending_large;
  Tick next_small = 0;
  Tick spawn_until = 0;
  int next_id = 0;

  Impl(FlightSchedule sched, SimOptions options, EventSink s)
      : opt(std::move(options)), schedule(std::move(sched)), sink(std::move(s)) {
    const LayoutGraph& L = opt.layout;
    L.validate();
    auto need = [&](NodeKind k) {
      auto id = L.find_kind(k);
      if (!id) throw SimError("layout lacks a required node kind: " + to_string(k));
      return *id;
    };
    n_entry = need(NodeKind::TaxiEntry);
    n_exit = need(NodeKind::TaxiExit);
    n_office = need(NodeKind::OcOffice);
    n_gse = need(NodeKind::GseParking);
    n_drop_civ = need(NodeKind::DropOffCivilian);
    n_drop_mil = need(NodeKind::DropOffMilitary);
    n_tower = need(NodeKind::GroundTower);
    n_movcon = need(NodeKind::MovconPost);
    n_milco = need(NodeKind::MilCoordPost);

    for (NodeId n : L.all_of_kind(NodeKind::ParkingCivilian))
      parking.spots.push_back({n, AircraftClass::CivLarge, false, std::nullopt});
    for (NodeId n : L.all_of_kind(NodeKind::ParkingMilitary))
      parking.spots.push_back({n, AircraftClass::MilLarge, true, std::nullopt});

    fleet = GseFleet::build(opt.config.fleet, n_gse);
    for (const auto& u : fleet.units) {
      if (u.kind == GseKind::Highloader) hl_ids.push_back(u.id);
      if (u.kind == GseKind::BeltLoader) bl_ids.push_back(u.id);
    }
    handler_free.assign(std::size_t(opt.config.fleet.handlers), 0);
    driver_free.assign(std::size_t(opt.config.fleet.drivers), 0);
    ledger = MilitaryResourceLedger(opt.config.fleet.mil_handling_agents,
                                    opt.config.fleet.mil_forklifts);

    est.handlers.assign(handler_free.size(), 0);
    est.drivers.assign(driver_free.size(), 0);
    est.highloaders.assign(hl_ids.size(), 0);
    est.belt_loaders.assign(bl_ids.size(), 0);

    for (const auto& e : schedule.entries) add_aircraft(e);
  }

  void add_aircraft(const FlightEntry& e) {
    Ac ac;
    ac.e = e;
    ac.rec.id = e.id;
    ac.rec.klass = e.klass;
    ac.rec.uld_kg = e.uld_kg;
    ac.rec.icu_kg = e.icu_kg;
    ac.rec.p463l_kg = e.p463l_kg;
    ac.rec.pax = e.pax;
    ac.rec.announced = e.announced;
    ac.rem_uld = e.uld_kg;
    ac.rem_icu = e.icu_kg;
    ac.rem_463 = e.p463l_kg;
    ac.uld_pending = e.uld_kg > 0;
    ac.icu_pending = e.icu_kg > 0;
    ac.mil_pending = e.p463l_kg > 0;
    ac.steps_needed = e.klass == AircraftClass::CivLarge && e.pax > 0;
    acs.push_back(std::move(ac));
  }

  void emit(const std::string& agent, const std::string& from, const std::string& to,
            const std::string& detail = "") {
    if (sink) sink(EventRecord{now, agent, from, to, detail});
  }

  // Movement helpers.
  Tick walk_civ(NodeId a, NodeId b) const {
    return travel_ticks(opt.layout.ground_distance(a, b), opt.config.walk_speed_civ);
  }
  Tick walk_mil(NodeId a, NodeId b) const {
    return travel_ticks(opt.layout.ground_distance(a, b), opt.config.walk_speed_mil);
  }
  Tick drive(NodeId a, NodeId b) const {
    return travel_ticks(opt.layout.ground_distance(a, b), opt.config.drive_speed);
  }
  Tick taxi(NodeId a, NodeId b) const {
    return travel_ticks(opt.layout.route_distance(a, b), opt.config.taxi_speed);
  }

  std::string ac_name(const Ac& ac) const { return "ac" + std::to_string(ac.e.id); }

  // --- arrivals and parking ---

  void try_park(int i) {
    Ac& ac = acs[std::size_t(i)];
    auto spot = parking.assign(ac.e.military(), opt.layout, n_office, ac.e.id);
    if (!spot) {
      if (ac.ph == Ac::Ph::Inbound) {
        ac.ph = Ac::Ph::Hold;
        entry_queue.push_back(i);
        emit(ac_name(ac), "inbound", "holding");
      }
      return;
    }
    if (ac.ph == Ac::Ph::Hold)
      entry_queue.erase(std::find(entry_queue.begin(), entry_queue.end(), i));
    ac.spot = *spot;
    ac.parked_at = now + taxi(n_entry, ac.spot);
    ac.ph = Ac::Ph::TaxiIn;
    emit(ac_name(ac), "inbound", "taxiing_in", opt.layout.node(ac.spot).name);
  }

  void on_parked(int i) {
    Ac& ac = acs[std::size_t(i)];
    ac.ph = Ac::Ph::OnStand;
    ac.rec.parked = now;
    emit(ac_name(ac), "taxiing_in", "parked");
    if (ac.steps_needed && !ac.steps_requested) {
      // requested at arrival already; defensive for held aircraft
      ac.steps_requested = true;
      steps_q.push_back({i, false});
    }
    if (ac.e.military()) {
      ac.checked = true;  // military aircraft are not part of the checking rounds
      milco_q.push_back(i);
      return;
    }
    if (ac.e.announced)
      mark_checked(i);
  }

  void mark_checked(int i) {
    Ac& ac = acs[std::size_t(i)];
    if (ac.checked) return;
    ac.checked = true;
    ac.rec.checked = now;
    emit("oc", "", "", "checked " + ac_name(ac));
    if (ac.e.military()) return;
    if (ac.uld_pending || ac.icu_pending) {
      enqueue_offload(i);
    } else {
      ac.offload_done = true;
      ac.offload_end = now;
    }
  }

  void enqueue_offload(int i) {
    Ac& ac = acs[std::size_t(i)];
    if (ac.in_offload_q) return;
    ac.in_offload_q = true;
    auto pos = std::find_if(offload_q.begin(), offload_q.end(), [&](int j) {
      const Ac& o = acs[std::size_t(j)];
      return std::tie(o.e.arrival_tick, o.e.id) > std::tie(ac.e.arrival_tick, ac.e.id);
    });
    offload_q.insert(pos, i);
  }

  // --- resource views ---

  ResourceEstimate actual_rss() const {
    ResourceEstimate r;
    r.handlers = handler_free;
    r.drivers = driver_free;
    auto pool = [&](const std::vector<int>& ids) {
      std::vector<Tick> v;
      for (int id : ids) {
        const auto& u = fleet.unit(id);
        v.push_back(u.state == GseState::Parked ? 0 : kBusy);
      }
      return v;
    };
    r.highloaders = pool(hl_ids);
    r.belt_loaders = pool(bl_ids);
    return r;
  }

  int free_handler() const {
    for (std::size_t i = 0; i < handler_free.size(); ++i)
      if (handler_free[i] <= now) return int(i);
    return -1;
  }
  int free_driver() const {
    for (std::size_t i = 0; i < driver_free.size(); ++i)
      if (driver_free[i] <= now) return int(i);
    return -1;
  }
  int parked_unit(const std::vector<int>& ids) const {
    for (int id : ids)
      if (fleet.unit(id).state == GseState::Parked) return id;
    return -1;
  }
  int parked_steps() const {
    for (const auto& u : fleet.units)
      if (u.kind == GseKind::PaxSteps && u.state == GseState::Parked) return u.id;
    return -1;
  }

  // --- OC actions ---

  bool any_crew_travelling() const {
    for (const auto& c : crews)
      if (!c.done && now < c.present_at) return true;
    return false;
  }

  bool oc_do_steps() {
    for (std::size_t q = 0; q < steps_q.size(); ++q) {
      auto [i, retrieve] = steps_q[q];
      Ac& ac = acs[std::size_t(i)];
      if (ac.spot < 0) continue;  // still holding for a stand
      int d = free_driver();
      if (d < 0) return false;
      StepsJob job;
      job.ac = i;
      job.driver = d;
      job.retrieve = retrieve;
      if (retrieve) {
        job.unit = ac.steps_unit;
        job.at_spot = now + opt.config.interaction_ticks + walk_civ(n_office, ac.spot);
        est.drivers[std::size_t(d)] =
            now + minutes_to_ticks(opt.estimates.paxsteps_retrieve);
      } else {
        int u = parked_steps();
        if (u < 0) continue;  // try another queued request (a retrieve may be doable)
        job.unit = u;
        fleet.take(u);
        job.at_spot = now + opt.config.interaction_ticks + walk_civ(n_office, n_gse) +
                      drive(n_gse, ac.spot);
        est.drivers[std::size_t(d)] = now + minutes_to_ticks(opt.estimates.paxsteps_supply);
      }
      driver_free[std::size_t(d)] = kBusy;
      steps_jobs.push_back(job);
      steps_q.erase(steps_q.begin() + long(q));
      oc_busy_until = now + opt.config.interaction_ticks;
      emit("oc", "", "", std::string(retrieve ? "retrieve" : "supply") + "_paxsteps " + ac_name(ac));
      return true;
    }
    return false;
  }

  CargoNeed pending_need(const Ac& ac) const {
    CargoNeed n;
    if (ac.uld_pending) n.uld_kg = ac.rem_uld;
    if (ac.icu_pending) n.icu_kg = ac.rem_icu;
    return n;
  }

  void start_civ_crew(int i, CargoKind kind, int handler, int gse_unit,
                      const std::vector<int>& drivers) {
    Ac& ac = acs[std::size_t(i)];
    CivCrew c;
    c.ac = i;
    c.kind = kind;
    c.handler = handler;
    c.gse = gse_unit;
    c.drivers = drivers;
    c.ds.resize(drivers.size());
    c.small = false;
    const auto& p = opt.config.params;
    if (kind == CargoKind::UldLd3) {
      c.load_rate = p.uld_ac_gse;
      c.unload_rate = p.uld_gse_tb;
      c.batch = opt.config.dolly_capacity_uld;
      c.remaining = ac.rem_uld;
      ac.uld_pending = false;
    } else {
      c.load_rate = p.icu_general;
      c.unload_rate = p.icu_general;
      c.batch = opt.config.dolly_capacity_icu;
      c.remaining = ac.rem_icu;
      ac.icu_pending = false;
    }
    c.present_at = now + opt.config.interaction_ticks + walk_civ(n_office, n_gse) +
                   (gse_unit >= 0 ? drive(n_gse, ac.spot) : drive(n_gse, ac.spot));
    c.drive_leg = std::max<Tick>(1, drive(ac.spot, n_drop_civ));
    if (handler >= 0) handler_free[std::size_t(handler)] = kBusy;
    for (int d : drivers) driver_free[std::size_t(d)] = kBusy;
    if (gse_unit >= 0) fleet.take(gse_unit);
    ac.active_crews++;
    crews.push_back(std::move(c));
    // planner bookkeeping
    Tick fin = now + minutes_to_ticks(opt.estimates.large_offload_overhead) +
               opt.estimates.table.ticks(kind, crews.back().remaining, int(drivers.size()));
    if (handler >= 0)
      est.handlers[std::size_t(handler)] =
          crews.back().present_at + Tick(std::ceil(crews.back().batch / crews.back().load_rate /
                                                   kTickSeconds));
    for (int d : drivers) est.drivers[std::size_t(d)] = fin;
    auto set_gse_est = [&](const std::vector<int>& ids, std::vector<Tick>& v) {
      for (std::size_t k = 0; k < ids.size(); ++k)
        if (ids[k] == gse_unit) v[k] = fin;
    };
    if (kind == CargoKind::UldLd3)
      set_gse_est(hl_ids, est.highloaders);
    else
      set_gse_est(bl_ids, est.belt_loaders);
    emit("oc", "", "", "offload_" + to_string(kind) + " " + ac_name(ac));
  }

  void start_small_crew(int i, int driver) {
    Ac& ac = acs[std::size_t(i)];
    CivCrew c;
    c.ac = i;
    c.kind = CargoKind::Icu;
    c.small = true;
    c.drivers = {driver};
    c.ds.resize(1);
    c.load_rate = opt.config.params.icu_general;
    c.unload_rate = opt.config.params.icu_general;
    c.batch = opt.config.dolly_capacity_icu;
    c.remaining = ac.rem_icu;
    ac.icu_pending = false;
    c.present_at =
        now + opt.config.interaction_ticks + walk_civ(n_office, n_gse) + drive(n_gse, ac.spot);
    c.drive_leg = std::max<Tick>(1, drive(ac.spot, n_drop_civ));
    driver_free[std::size_t(driver)] = kBusy;
    est.drivers[std::size_t(driver)] = now + minutes_to_ticks(opt.estimates.small_offload);
    ac.active_crews++;
    crews.push_back(std::move(c));
    emit("oc", "", "", "offload_small " + ac_name(ac));
  }

  void finish_queue_entry(int i) {
    Ac& ac = acs[std::size_t(i)];
    if (!ac.uld_pending && !ac.icu_pending) {
      ac.in_offload_q = false;
      offload_q.erase(std::find(offload_q.begin(), offload_q.end(), i));
    }
  }

  // Starts crews for every pending cargo type of one large aircraft, or none.
  // Splitting the start across ticks stretches the offloading interval, so the
  // OC waits until a minimum set for each type is on hand. Upgrades beyond one
  // driver per type come only out of slack above driver_reserve.
  bool dispatch_large(int i, int want_uld, int want_icu) {
    Ac& ac = acs[std::size_t(i)];
    bool u = ac.uld_pending && want_uld > 0;
    bool c = ac.icu_pending && want_icu > 0;
    if (!u && !c) return false;
    if (ac.uld_pending && !u) return false;
    if (ac.icu_pending && !c) return false;

    std::vector<int> free_h, free_d;
    for (std::size_t k = 0; k < handler_free.size(); ++k)
      if (handler_free[k] <= now) free_h.push_back(int(k));
    for (std::size_t k = 0; k < driver_free.size(); ++k)
      if (driver_free[k] <= now) free_d.push_back(int(k));
    int hl = u ? parked_unit(hl_ids) : -1;
    int bl = c ? parked_unit(bl_ids) : -1;
    int min_need = int(u) + int(c);
    if (int(free_h.size()) < min_need || int(free_d.size()) < min_need) return false;
    if (u && hl < 0) return false;
    if (c && bl < 0) return false;

    // The second driver goes only to loads slow enough to need one. Handing
    // out whatever happens to be idle makes the offload duration depend on how
    // long the aircraft waited, which is noise, not policy.
    int slack = int(free_d.size()) - min_need - opt.config.driver_reserve;
    int d_uld = u ? 1 : 0;
    int d_icu = c ? 1 : 0;
    const auto& tbl = opt.estimates.table;
    if (slack > 0) {
      double uld_min = u ? tbl.minutes(CargoKind::UldLd3, ac.rem_uld, 1) : 0.0;
      double icu_min = c ? tbl.minutes(CargoKind::Icu, ac.rem_icu, 1) : 0.0;
      if (u && want_uld > 1 && uld_min >= opt.config.second_driver_min &&
          uld_min >= icu_min)
        ++d_uld;
      else if (c && want_icu > 1 && icu_min >= opt.config.second_driver_min && icu_min > uld_min)
        ++d_icu;
    }
    std::size_t next_h = 0, next_d = 0;
    if (u) {
      std::vector<int> drv(free_d.begin() + long(next_d), free_d.begin() + long(next_d) + d_uld);
      next_d += std::size_t(d_uld);
      start_civ_crew(i, CargoKind::UldLd3, free_h[next_h++], hl, drv);
    }
    if (c) {
      std::vector<int> drv(free_d.begin() + long(next_d), free_d.begin() + long(next_d) + d_icu);
      start_civ_crew(i, CargoKind::Icu, free_h[next_h], bl, drv);
    }
    return true;
  }

  bool oc_dispatch_offload() {
    if (offload_q.empty() || any_crew_travelling()) return false;
    int i = offload_q.front();
    Ac& ac = acs[std::size_t(i)];
    if (ac.e.klass == AircraftClass::CivSmall) {
      int d = free_driver();
      if (d < 0) return false;
      start_small_crew(i, d);
      finish_queue_entry(i);
      oc_busy_until = now + opt.config.interaction_ticks;
      return true;
    }
    CargoNeed need = pending_need(ac);
    if (!need.any()) {
      finish_queue_entry(i);
      return false;
    }
    bool sent = false;
    if (opt.strategy == StrategyKind::MaxAvailable) {
      auto o = ra_available(actual_rss(), now, need, opt.estimates.table);
      if (o)
        sent = dispatch_large(i, o->uld.active() ? int(o->uld.drivers.size()) : 0,
                              o->icu.active() ? int(o->icu.drivers.size()) : 0);
    } else {
      std::optional<CargoNeed> need_b;
      if (offload_q.size() > 1) {
        need_b = pending_need(acs[std::size_t(offload_q[1])]);
      } else {
        // next known future civilian aircraft with cargo
        const Ac* best = nullptr;
        for (const auto& o : acs) {
          if (&o == &ac || o.e.military()) continue;
          if (!(o.uld_pending || o.icu_pending)) continue;
          if (!o.e.announced && !o.checked) continue;
          if (o.in_offload_q) continue;
          if (!best || o.e.arrival_tick < best->e.arrival_tick) best = &o;
        }
        if (best) need_b = pending_need(*best);
      }
      auto res = generate_best_option(est, now, need, need_b,
                                      ac.e.arrival_tick + opt.config.max_start_bound,
                                      opt.estimates.table);
      if (res.option.start_step <= now)
        sent = dispatch_large(i, res.option.uld.active() ? int(res.option.uld.drivers.size()) : 0,
                              res.option.icu.active() ? int(res.option.icu.drivers.size()) : 0);
    }
    if (sent) {
      finish_queue_entry(i);
      oc_busy_until = now + opt.config.interaction_ticks;
    }
    return sent;
  }

  bool oc_do_military() {
    if (oc_grant_reservation()) return true;
    return oc_send_military_crew();
  }

  bool oc_grant_reservation() {
    if (movcon_at_office && movcon_at_office->first <= now) {
      int hl = -1;
      for (int id : hl_ids)
        if (fleet.unit(id).military_capable && fleet.unit(id).state == GseState::Parked) hl = id;
      if (hl >= 0) {
        fleet.reserve(hl);
        reserved_hl = hl;
        MilitaryResourceLedger::reserve_one(ledger.handling_agents);
        MilitaryResourceLedger::reserve_one(ledger.forklifts);
        emit("oc", "", "", "reserved highloader " + std::to_string(hl));
        oc_busy_until = now + opt.config.interaction_ticks;
        movcon_free = now + opt.config.interaction_ticks + walk_mil(n_office, n_movcon);
        movcon_at_office.reset();
        return true;
      }
    }
    return false;  // MOVCON keeps waiting at the office
  }

  bool oc_send_military_crew() {
    if (milco_at_office && milco_at_office->first <= now) {
      int i = milco_at_office->second;
      Ac& ac = acs[std::size_t(i)];
      int hl = reserved_hl;
      if (hl < 0) {
        for (int id : hl_ids)
          if (fleet.unit(id).military_capable && fleet.unit(id).state == GseState::Parked) hl = id;
      }
      if (hl < 0) return false;
      // The agent comes out of the military ledger, not the civilian pool.
      fleet.take(hl);
      if (hl == reserved_hl) reserved_hl = -1;
      MilCrew mc;
      mc.ac = i;
      mc.handler = -1;
      mc.gse = hl;
      mc.start = now + opt.config.interaction_ticks + walk_civ(n_office, n_gse) +
                 drive(n_gse, ac.spot);
      Tick dur = offload_duration_military(ac.e.p463l_kg, opt.config.params.p463l_ac_gse);
      mc.end = mc.start + dur;
      mil_crews.push_back(mc);
      MilitaryResourceLedger::arm_reserved(ledger.handling_agents, mc.end - now);
      MilitaryResourceLedger::arm_reserved(ledger.forklifts, mc.end - now);
      emit("oc", "", "", "offload_military " + ac_name(ac));
      oc_busy_until = now + opt.config.interaction_ticks;
      milco_free = now + opt.config.interaction_ticks + walk_mil(n_office, n_milco);
      milco_at_office.reset();
      return true;
    }
    return false;
  }

  bool oc_check_round() {
    std::vector<int> targets;
    for (std::size_t i = 0; i < acs.size(); ++i) {
      const Ac& ac = acs[i];
      if (ac.ph == Ac::Ph::OnStand && !ac.e.military() && !ac.checked && !ac.check_scheduled)
        targets.push_back(int(i));
    }
    if (targets.empty()) return false;
    std::sort(targets.begin(), targets.end(), [&](int a, int b) {
      const Ac& x = acs[std::size_t(a)];
      const Ac& y = acs[std::size_t(b)];
      return std::tie(x.e.arrival_tick, x.e.id) < std::tie(y.e.arrival_tick, y.e.id);
    });
    Tick t = now;
    NodeId at = n_office;
    int cargo_count = 0;
    for (int i : targets) {
      Ac& ac = acs[std::size_t(i)];
      t += walk_civ(at, ac.spot) + opt.config.check_ticks;
      at = ac.spot;
      ac.check_scheduled = true;
      pending_checks.push_back({t, i});
      if (ac.e.has_cargo()) ++cargo_count;
      if (cargo_count >= opt.config.max_checks_per_excursion) break;
    }
    t += walk_civ(at, n_office);
    oc_return = t;
    ++excursions;
    emit("oc", "office", "checking", std::to_string(pending_checks.size()) + " stops");
    return true;
  }

  void oc_step() {
    if (now < oc_return || now < oc_busy_until) return;
    if (oc_do_steps()) return;
    if (oc_dispatch_offload()) return;
    if (oc_do_military()) return;
    if (oc_check_round()) return;
    ++oc_idle_ticks;
  }

  // --- job progression ---

  void steps_step() {
    for (std::size_t j = 0; j < steps_jobs.size();) {
      StepsJob& job = steps_jobs[j];
      Ac& ac = acs[std::size_t(job.ac)];
      bool finished = false;
      if (now >= job.at_spot) {
        if (job.retrieve) {
          ac.steps_on_site = false;
          ac.rec.steps_removed = now;
          gse_park_sched.push_back({now + drive(ac.spot, n_gse), job.unit});
          driver_free[std::size_t(job.driver)] =
              now + drive(ac.spot, n_gse) + walk_civ(n_gse, n_office);
          begin_taxi_out(job.ac);
          finished = true;
        } else if (ac.ph == Ac::Ph::OnStand) {
          ac.steps_on_site = true;
          ac.steps_unit = job.unit;
          ac.rec.steps_ready = now;
          driver_free[std::size_t(job.driver)] = now + walk_civ(ac.spot, n_office);
          emit(ac_name(ac), "", "", "paxsteps ready");
          finished = true;
        }
      }
      if (finished)
        steps_jobs.erase(steps_jobs.begin() + long(j));
      else
        ++j;
    }
  }

  void crew_step(CivCrew& c) {
    if (c.done || now < c.present_at) return;
    Ac& ac = acs[std::size_t(c.ac)];
    if (ac.rec.offload_start == 0) {
      ac.rec.offload_start = now;
      emit(ac_name(ac), "checked", "offloading");
    }
    using Phase = CivCrew::Drv::Phase;
    for (auto& d : c.ds) {
      if (d.timer > 0) --d.timer;
      if (d.timer > 0) continue;
      switch (d.phase) {
        case Phase::DriveOut:
          d.phase = Phase::Unload;
          d.timer = Tick(std::ceil(d.load / c.unload_rate / kTickSeconds - kEps));
          break;
        case Phase::Unload:
          delivered_kg += d.load;
          c.in_transit -= d.load;
          d.load = 0;
          d.last_delivery = now;
          d.phase = c.remaining > kEps ? Phase::DriveBack : Phase::Done;
          d.timer = c.remaining > kEps ? c.drive_leg : 0;
          break;
        case Phase::DriveBack:
          d.phase = Phase::AtAircraft;
          break;
        default:
          break;
      }
    }
    if (c.remaining > kEps) {
      CivCrew::Drv* loader = nullptr;
      for (auto& d : c.ds)
        if (d.phase == Phase::AtAircraft && d.load > kEps) loader = &d;
      if (!loader)
        for (auto& d : c.ds)
          if (d.phase == Phase::AtAircraft) {
            loader = &d;
            break;
          }
      if (loader) {
        double moved = std::min({c.load_rate * kTickSeconds, c.remaining, c.batch - loader->load});
        c.remaining -= moved;
        c.in_transit += moved;
        if (c.kind == CargoKind::UldLd3)
          ac.rem_uld = c.remaining;
        else if (!c.small)
          ac.rem_icu = c.remaining;
        else
          ac.rem_icu = c.remaining;
        loader->load += moved;
        bool full = loader->load >= c.batch - kEps;
        if (full || c.remaining <= kEps) {
          if (c.remaining <= kEps) {
            c.remaining = 0;
            c.empty_tick = now;
            // The offloading interval ends when the hold is empty; the last
            // dollies are still on their way to the terminal after this.
            ac.offload_end = std::max(ac.offload_end, now);
            if (!c.small) {
              // The loader drives back on its own; the crew no longer holds it.
              gse_park_sched.push_back({now + drive(ac.spot, n_gse), c.gse});
              c.gse = -1;
            }
          }
          loader->phase = Phase::DriveOut;
          loader->timer = c.drive_leg;
          if (!c.small && !c.handler_released) {
            // The agent sets up the loader and the first batch, then walks
            // back; the machine keeps feeding dollies until the hold is empty.
            c.handler_released = true;
            handler_free[std::size_t(c.handler)] = now + walk_civ(ac.spot, n_office);
          }
        }
      }
    }
    if (c.remaining <= kEps && c.in_transit <= kEps) {
      bool all_done = true;
      for (auto& d : c.ds)
        if (d.phase != Phase::Done) {
          // driver idle at aircraft with nothing left to haul
          if (d.phase == Phase::AtAircraft && d.load <= kEps) {
            d.phase = Phase::Done;
            d.last_delivery = now;
          } else {
            all_done = false;
          }
        }
      if (all_done) {
        c.done = true;
        for (std::size_t k = 0; k < c.ds.size(); ++k)
          driver_free[std::size_t(c.drivers[k])] = c.ds[k].last_delivery +
                                                   drive(n_drop_civ, n_gse) +
                                                   walk_civ(n_gse, n_office);
        ac.active_crews--;
        if (!ac.uld_pending && !ac.icu_pending && ac.active_crews == 0) {
          ac.offload_done = true;
          ac.rec.offload_end = ac.offload_end;
          emit(ac_name(ac), "offloading", "offloaded");
        }
      }
    }
  }

  void mil_crew_step(MilCrew& m) {
    Ac& ac = acs[std::size_t(m.ac)];
    if (!m.started && now >= m.start) {
      m.started = true;
      ac.rec.offload_start = m.start;
      emit(ac_name(ac), "parked", "offloading");
    }
    if (m.started && !m.done && now >= m.end) {
      m.done = true;
      delivered_kg += ac.rem_463;
      ac.rem_463 = 0;
      ac.mil_pending = false;
      ac.offload_done = true;
      ac.offload_end = m.end;
      ac.rec.offload_end = m.end;
      gse_park_sched.push_back({now + drive(ac.spot, n_gse), m.gse});
      emit(ac_name(ac), "offloading", "offloaded");
    }
  }

  void begin_taxi_out(int i) {
    Ac& ac = acs[std::size_t(i)];
    if (ac.ph != Ac::Ph::OnStand) return;
    parking.release(ac.e.id);
    ac.exit_at = now + taxi(ac.spot, n_exit);
    ac.ph = Ac::Ph::TaxiOut;
    emit(ac_name(ac), "parked", "taxiing_out");
  }

  void aircraft_step(int i) {
    Ac& ac = acs[std::size_t(i)];
    switch (ac.ph) {
      case Ac::Ph::Inbound:
        if (now >= ac.e.arrival_tick) {
          ac.rec.arrival = ac.e.arrival_tick;
          emit(ac_name(ac), "scheduled", "inbound");
          if (ac.steps_needed) {
            // the OC sees the aircraft entering the taxilane
            ac.steps_requested = true;
            steps_q.push_back({i, false});
          }
          try_park(i);
        }
        break;
      case Ac::Ph::Hold:
        if (!entry_queue.empty() && entry_queue.front() == i) try_park(i);
        break;
      case Ac::Ph::TaxiIn:
        if (now >= ac.parked_at) on_parked(i);
        break;
      case Ac::Ph::OnStand: {
        if (ac.offload_done && ac.checked && !ac.board_sched) {
          if (!ac.steps_needed || ac.steps_on_site) {
            ac.board_sched = true;
            if (ac.e.pax > 0) {
              Tick start = ac.offload_end + opt.config.before_boarding_gap;
              ac.rec.board_start = start;
              double rate = ac.e.military() ? opt.config.params.board_mil
                                            : opt.config.params.board_civ;
              ac.board_end = start + boarding_duration(ac.e.pax, rate);
            } else {
              ac.rec.board_start = ac.offload_end;
              ac.board_end = ac.offload_end;
            }
            ac.rec.board_end = ac.board_end;
          }
        }
        if (ac.board_sched && !ac.post_board && now >= ac.board_end) {
          ac.post_board = true;
          if (ac.e.pax > 0) emit(ac_name(ac), "boarding", "boarded");
          if (ac.steps_needed) {
            steps_q.push_back({i, true});
          } else {
            ac.rec.steps_removed = ac.board_end;
            begin_taxi_out(i);
          }
        }
        break;
      }
      case Ac::Ph::TaxiOut:
        if (now >= ac.exit_at) {
          ac.ph = Ac::Ph::Done;
          ac.rec.exit = ac.exit_at;
          ac.rec.departed = true;
          emit(ac_name(ac), "taxiing_out", "departed");
        }
        break;
      case Ac::Ph::Done:
        break;
    }
  }

  // --- military information chain ---

  void comms_step() {
    // ATC calls fire a fixed lead before arrival.
    for (std::size_t i = 0; i < acs.size(); ++i) {
      Ac& ac = acs[i];
      if (!ac.e.military()) continue;
      Tick call = std::max<Tick>(0, ac.e.arrival_tick - opt.config.atc_call_lead);
      if (call == now) {
        atc_q.push_back(int(i));
        emit("atc", "", "", "call " + ac_name(ac));
      }
    }
    if (now >= atc_free && !atc_q.empty()) {
      int i = atc_q.front();
      atc_q.pop_front();
      Tick done = now + walk_mil(n_tower, n_movcon) + opt.config.interaction_ticks;
      movcon_inbox.push_back({done, i});
      atc_free = done + walk_mil(n_movcon, n_tower);
    }
    if (now >= movcon_free && !movcon_at_office && !movcon_inbox.empty() &&
        movcon_inbox.front().first <= now) {
      int i = movcon_inbox.front().second;
      movcon_inbox.pop_front();
      if (acs[std::size_t(i)].e.p463l_kg > 0) {
        movcon_at_office = {{now + walk_mil(n_movcon, n_office), i}};
        movcon_free = kBusy;  // released when the OC grants the reservation
        emit("movcon", "post", "oc_office");
      }
    }
    if (now >= milco_free && !milco_at_office && !milco_q.empty()) {
      int i = milco_q.front();
      milco_q.pop_front();
      milco_at_office = {{now + walk_mil(n_milco, n_office), i}};
      milco_free = kBusy;
      emit("milco", "post", "oc_office");
    }
  }

  // --- bookkeeping ---

  void releases_step() {
    for (std::size_t j = 0; j < gse_park_sched.size();) {
      if (gse_park_sched[j].first <= now) {
        fleet.park(gse_park_sched[j].second);
        gse_park_sched.erase(gse_park_sched.begin() + long(j));
      } else {
        ++j;
      }
    }
  }

  void est_sync() {
    auto sync = [&](std::vector<Tick>& e, const std::vector<Tick>& a) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (a[i] <= now)
          e[i] = now;
        else if (e[i] < now)
          e[i] = now + 1;
      }
    };
    sync(est.handlers, handler_free);
    sync(est.drivers, driver_free);
    auto sync_gse = [&](std::vector<Tick>& e, const std::vector<int>& ids) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        const auto& u = fleet.unit(ids[i]);
        if (u.state == GseState::Parked)
          e[i] = now;
        else if (u.state == GseState::Reserved)
          e[i] = kBusy;
        else if (e[i] < now)
          e[i] = now + 1;
      }
    };
    sync_gse(est.highloaders, hl_ids);
    sync_gse(est.belt_loaders, bl_ids);
  }

  CargoAudit audit() const {
    CargoAudit a;
    for (const auto& ac : acs) {
      if (!ac.arrived()) continue;
      a.created += ac.e.uld_kg + ac.e.icu_kg + ac.e.p463l_kg;
      a.on_aircraft += ac.rem_uld + ac.rem_icu + ac.rem_463;
    }
    for (const auto& c : crews)
      if (!c.done) a.in_transit += c.in_transit;
    a.delivered = delivered_kg;
    return a;
  }

  void strict_check() const {
    CargoAudit a = audit();
    double diff = std::fabs(a.created - (a.on_aircraft + a.in_transit + a.delivered));
    if (diff > 1e-6 * std::max(1.0, a.created))
      throw SimError("cargo conservation violated at tick " + std::to_string(now));
    std::vector<int> occ;
    for (const auto& s : parking.spots)
      if (s.occupant) occ.push_back(*s.occupant);
    std::sort(occ.begin(), occ.end());
    if (std::adjacent_find(occ.begin(), occ.end()) != occ.end())
      throw SimError("parking exclusivity violated at tick " + std::to_string(now));
    for (const auto& c : crews)
      if (!c.done && c.gse >= 0 && fleet.unit(c.gse).state == GseState::Reserved)
        throw SimError("reserved GSE in civilian use at tick " + std::to_string(now));
  }

  // --- generation mode ---

  int tarmac_civilians() const {
    int n = 0;
    for (const auto& ac : acs)
      if (!ac.e.military() &&
          (ac.ph == Ac::Ph::TaxiIn || ac.ph == Ac::Ph::OnStand || ac.ph == Ac::Ph::TaxiOut))
        ++n;
    return n;
  }

  void spawn_step() {
    if (!generating) return;
    int tarmac = tarmac_civilians();
    if (tarmac >= gen.tarmac_cap) return;
    if (!pending_large.empty() && pending_large.front() <= now) {
      pending_large.pop_front();
      FlightEntry e;
      e.id = next_id++;
      e.arrival_tick = now;
      e.klass = AircraftClass::CivLarge;
      e.uld_kg = rng.pick(gen.large_uld_grid);
      e.icu_kg = rng.pick(gen.large_icu_grid);
      e.pax = int(rng.uniform(gen.pax_lo, gen.pax_hi));
      e.announced = false;
      add_aircraft(e);
      return;
    }
    if (now >= next_small && now <= spawn_until) {
      FlightEntry e;
      e.id = next_id++;
      e.arrival_tick = now;
      e.klass = AircraftClass::CivSmall;
      bool with_cargo =
          rng.uniform(0, gen.small_with_cargo_per_without) < gen.small_with_cargo_per_without;
      if (with_cargo) e.icu_kg = rng.pick(gen.small_icu_grid);
      e.pax = int(rng.uniform(gen.pax_lo, gen.pax_hi));
      e.announced = false;
      add_aircraft(e);
      next_small = now + minutes_to_ticks(rng.uniform_real(gen.gap_min_minutes,
                                                           gen.gap_max_minutes));
    }
  }

  // --- the tick ---

  void step() {
    spawn_step();
    for (std::size_t i = 0; i < acs.size(); ++i) aircraft_step(int(i));
    for (std::size_t j = 0; j < pending_checks.size();) {
      if (pending_checks[j].first <= now) {
        mark_checked(pending_checks[j].second);
        pending_checks.erase(pending_checks.begin() + long(j));
      } else {
        ++j;
      }
    }
    oc_step();
    steps_step();
    for (auto& c : crews) crew_step(c);
    for (auto& m : mil_crews) mil_crew_step(m);
    comms_step();
    releases_step();
    ledger.tick();
    if (opt.strategy == StrategyKind::MaxAvailableAnticipation) est_sync();
    if (opt.strict_checks) strict_check();
    ++now;
  }

  bool all_departed() const {
    if (generating && (!pending_large.empty() || now <= spawn_until)) return false;
    for (const auto& ac : acs)
      if (ac.ph != Ac::Ph::Done) return false;
    return true;
  }

  void finalize(AircraftRecord& r) const {
    Tick* ms[] = {&r.parked,      &r.steps_ready,  &r.checked,       &r.offload_start,
                  &r.offload_end, &r.board_start,  &r.board_end,     &r.steps_removed,
                  &r.exit};
    Tick prev = r.arrival;
    for (Tick* m : ms) {
      *m = std::max(*m, prev);
      prev = *m;
    }
  }

  RunResult result() {
    RunResult out;
    out.schedule_id = schedule.id;
    out.oc_office_idle_ticks = oc_idle_ticks;
    out.oc_check_excursions = excursions;
    std::vector<const Ac*> ordered;
    for (const auto& ac : acs) ordered.push_back(&ac);
    std::sort(ordered.begin(), ordered.end(),
              [](const Ac* a, const Ac* b) { return a->e.id < b->e.id; });
    for (const Ac* ac : ordered) {
      AircraftRecord r = ac->rec;
      if (r.departed) finalize(r);
      out.aircraft.push_back(r);
    }
    return out;
  }
};

Simulation::Simulation(FlightSchedule schedule, SimOptions options, EventSink sink)
    : impl_(std::make_unique<Impl>(std::move(schedule), std::move(options), std::move(sink))) {}
Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

void Simulation::step() { impl_->step(); }
Tick Simulation::tick() const { return impl_->now; }
bool Simulation::all_departed() const { return impl_->all_departed(); }
CargoAudit Simulation::audit_cargo() const { return impl_->audit(); }

RunResult Simulation::run() {
  const Tick cap = 3 * impl_->opt.config.horizon;
  while (!impl_->all_departed() && impl_->now < cap) impl_->step();
  return impl_->result();
}

RunResult run_simulation(const FlightSchedule& schedule, const SimOptions& options,
                         EventSink sink) {
  Simulation sim(schedule, options, std::move(sink));
  return sim.run();
}

FlightSchedule generate_schedule(int id, std::uint64_t corpus_seed, const GenParams& gen,
                                 const SimOptions& options) {
  FlightSchedule seedsched;
  seedsched.id = id;
  seedsched.seed = mix_seed(corpus_seed, std::uint64_t(id) + 1);
  int mil_id = 100000;
  for (Tick t : gen.military_arrivals) {
    FlightEntry e;
    e.id = mil_id++;
    e.arrival_tick = t;
    e.klass = AircraftClass::MilLarge;
    e.p463l_kg = gen.military_p463l_kg;
    e.pax = gen.military_pax;
    seedsched.entries.push_back(e);
  }
  SimOptions o = options;
  o.strategy = StrategyKind::MaxAvailable;
  Simulation sim(seedsched, o);
  auto& impl = *sim.impl_;
  impl.generating = true;
  impl.gen = gen;
  impl.rng = Rng(seedsched.seed);
  impl.spawn_until = o.config.horizon - minutes_to_ticks(200.0);
  std::vector<Tick> larges;
  for (int i = 0; i < gen.n_large_civ; ++i)
    larges.push_back(impl.rng.uniform(0, impl.spawn_until));
  std::sort(larges.begin(), larges.end());
  impl.pending_large.assign(larges.begin(), larges.end());
  impl.next_small = impl.rng.uniform(0, minutes_to_ticks(gen.gap_max_minutes));
  sim.run();

  FlightSchedule out;
  out.id = id;
  out.seed = seedsched.seed;
  for (const auto& ac : impl.acs) {
    FlightEntry e = ac.e;
    e.announced = true;
    out.entries.push_back(e);
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const FlightEntry& a, const FlightEntry& b) {
                     return std::tie(a.arrival_tick, a.id) < std::tie(b.arrival_tick, b.id);
                   });
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i].id = int(i);
  return out;
}

}  // namespace ghsim
