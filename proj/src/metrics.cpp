#include "ghsim/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ghsim {

std::string interval_name(Interval i) {
  switch (i) {
    case Interval::Tat: return "TAT";
    case Interval::Bp: return "T_BP";
    case Interval::Bps: return "T_BPS";
    case Interval::Bc: return "T_BC";
    case Interval::Bo: return "T_BO";
    case Interval::Offl: return "T_Offl";
    case Interval::Bb: return "T_BB";
    case Interval::Board: return "T_Board";
    case Interval::Bpsr: return "T_BPSR";
    case Interval::E: return "T_E";
  }
  throw SimError("unknown interval");
}

double TimelineMinutes::get(Interval i) const {
  switch (i) {
    case Interval::Tat: return tat();
    case Interval::Bp: return bp;
    case Interval::Bps: return bps;
    case Interval::Bc: return bc;
    case Interval::Bo: return bo;
    case Interval::Offl: return offl;
    case Interval::Bb: return bb;
    case Interval::Board: return board;
    case Interval::Bpsr: return bpsr;
    case Interval::E: return e;
  }
  throw SimError("unknown interval");
}

TimelineMinutes decompose_timeline(const AircraftRecord& ac) {
  if (!ac.departed)
    throw SimError("aircraft " + std::to_string(ac.id) + " has no complete timeline");
  const Tick ms[] = {ac.arrival,     ac.parked,    ac.steps_ready, ac.checked,
                     ac.offload_start, ac.offload_end, ac.board_start, ac.board_end,
                     ac.steps_removed, ac.exit};
  for (std::size_t i = 1; i < std::size(ms); ++i)
    if (ms[i] < ms[i - 1])
      throw SimError("non-monotone milestones for aircraft " + std::to_string(ac.id));
  TimelineMinutes t;
  t.bp = ticks_to_minutes(ac.parked - ac.arrival);
  t.bps = ticks_to_minutes(ac.steps_ready - ac.parked);
  t.bc = ticks_to_minutes(ac.checked - ac.steps_ready);
  t.bo = ticks_to_minutes(ac.offload_start - ac.checked);
  t.offl = ticks_to_minutes(ac.offload_end - ac.offload_start);
  t.bb = ticks_to_minutes(ac.board_start - ac.offload_end);
  t.board = ticks_to_minutes(ac.board_end - ac.board_start);
  t.bpsr = ticks_to_minutes(ac.steps_removed - ac.board_end);
  t.e = ticks_to_minutes(ac.exit - ac.steps_removed);
  return t;
}

namespace {

bool passes(const AircraftRecord& ac, const AggregateFilter& f) {
  if (f.klass && ac.klass != *f.klass) return false;
  if (f.require_cargo && !ac.has_cargo()) return false;
  if (f.require_pax && ac.pax <= 0) return false;
  return true;
}

MetricStats stats_of(const std::vector<double>& v) {
  MetricStats s;
  s.n = v.size();
  if (v.empty()) return s;
  double sum = 0;
  for (double x : v) sum += x;
  s.mean = sum / double(v.size());
  double ss = 0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.stddev = v.size() > 1 ? std::sqrt(ss / double(v.size() - 1)) : 0.0;
  return s;
}

}  // namespace

AggregateStats aggregate(const std::vector<RunResult>& runs, const AggregateFilter& filter) {
  AggregateStats out;
  std::map<Interval, std::vector<double>> pooled;
  for (const auto& run : runs)
    for (const auto& ac : run.aircraft) {
      if (!passes(ac, filter)) continue;
      if (!ac.departed) {
        ++out.incomplete;
        continue;
      }
      TimelineMinutes t = decompose_timeline(ac);
      for (Interval i : kReportIntervals) pooled[i].push_back(t.get(i));
    }
  for (const auto& [i, v] : pooled) out.metrics[i] = stats_of(v);
  return out;
}

std::vector<double> pooled_values(const std::vector<RunResult>& runs,
                                  const AggregateFilter& filter, Interval which) {
  std::vector<double> out;
  for (const auto& run : runs)
    for (const auto& ac : run.aircraft) {
      if (!passes(ac, filter) || !ac.departed) continue;
      out.push_back(decompose_timeline(ac).get(which));
    }
  return out;
}

std::string to_string(EffectMagnitude m) {
  switch (m) {
    case EffectMagnitude::Negligible: return "negligible";
    case EffectMagnitude::Small: return "small";
    case EffectMagnitude::Medium: return "medium";
    case EffectMagnitude::Large: return "large";
  }
  throw SimError("unknown effect magnitude");
}

CliffsDelta cliffs_delta(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.empty() || ys.empty()) throw SimError("effect size needs non-empty samples");
  // O(n log m) via sorted counting; sign convention matches the pairwise sum.
  std::vector<double> sy = ys;
  std::sort(sy.begin(), sy.end());
  long long net = 0;
  for (double x : xs) {
    auto lo = std::lower_bound(sy.begin(), sy.end(), x);
    auto hi = std::upper_bound(sy.begin(), sy.end(), x);
    long long less = lo - sy.begin();            // y < x
    long long greater = sy.end() - hi;           // y > x
    net += less - greater;
  }
  CliffsDelta d;
  d.delta = double(net) / (double(xs.size()) * double(ys.size()));
  double a = std::fabs(d.delta);
  d.magnitude = a < 0.147   ? EffectMagnitude::Negligible
                : a < 0.33  ? EffectMagnitude::Small
                : a < 0.474 ? EffectMagnitude::Medium
                            : EffectMagnitude::Large;
  return d;
}

std::vector<ComparisonRow> compare_cases(const std::vector<RunResult>& a,
                                         const std::vector<RunResult>& b,
                                         const AggregateFilter& filter) {
  std::vector<ComparisonRow> rows;
  for (Interval i : kReportIntervals) {
    auto xs = pooled_values(a, filter, i);
    auto ys = pooled_values(b, filter, i);
    rows.push_back({i, cliffs_delta(xs, ys)});
  }
  return rows;
}

}  // namespace ghsim
