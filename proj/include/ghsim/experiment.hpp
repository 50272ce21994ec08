#pragma once

#include <string>
#include <vector>

#include "ghsim/metrics.hpp"
#include "ghsim/sim.hpp"

namespace ghsim {

ScheduleCorpus generate_corpus(int n, std::uint64_t seed, const GenParams& gen,
                               const SimOptions& options);

struct CaseSpec {
  StrategyKind strategy = StrategyKind::MaxAvailable;
  ScenarioSpec scenario;
  double atif = 1.0;
  bool atif_scales_military = true;
};

std::string case_name(const CaseSpec& spec);

struct CaseOutput {
  CaseSpec spec;
  std::vector<RunResult> runs;
  AggregateStats stats;
};

// Runs every schedule of the corpus (in parallel when jobs != 1, results
// ordered by schedule id). When out_dir is non-empty, writes
// out_dir/run_<id>.jsonl, records.csv, aggregate.csv and manifest.json.
CaseOutput run_case(const ScheduleCorpus& corpus, const CaseSpec& spec,
                    const SimOptions& options, const std::string& out_dir,
                    int jobs = 0, bool event_logs = true);

std::uint64_t config_hash(const SimOptions& options, const CaseSpec& spec);

// Per-aircraft records of a finished case, for the compare command.
struct StoredCase {
  std::uint64_t corpus_hash = 0;
  std::string name;
  std::vector<RunResult> runs;
};
StoredCase load_case(const std::string& dir);

void write_comparison_csv(const std::string& path, const std::vector<ComparisonRow>& rows);

// Reruns case 1A on the corpus and averages per-task busy times into the
// estimate table used by the anticipation strategy.
TaskEstimates calibrate_estimates(const ScheduleCorpus& corpus, const SimOptions& options,
                                  int jobs = 0);

}  // namespace ghsim
