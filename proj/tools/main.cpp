#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ghsim/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCorpusMismatch = 4;

bool valid_scenario(const std::string& s) {
  if (s == "A" || s == "B") return true;
  if (s.size() >= 3 && s[0] == 'C' && s[1] == 'u') {
    for (std::size_t i = 2; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    int u = std::atoi(s.c_str() + 2);
    return u >= 0 && u <= 7;
  }
  return false;
}

std::string default_out_root() {
  const char* env = std::getenv("GHSIM_OUT_ROOT");
  return env ? env : ".";
}

ghsim::SimOptions build_options(const std::string& preset, const std::string& params_file,
                                const std::string& layout_file, const std::string& est_file) {
  ghsim::SimOptions o;
  o.config.params = params_file.empty() ? ghsim::ParameterSet::preset(preset)
                                        : ghsim::ParameterSet::load_file(params_file);
  if (!layout_file.empty()) o.layout = ghsim::LayoutGraph::load_json(layout_file);
  if (!est_file.empty()) o.estimates = ghsim::TaskEstimates::load_json(est_file);
  o.strict_checks = false;  // enabled in the test binaries, not in production runs
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Airport ground-handling turn-around simulator"};
  app.require_subcommand(1);

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Generate a schedule corpus");
  int gen_n = 120;
  std::uint64_t gen_seed = 20230817ULL;
  std::string gen_out = "corpus.json";
  std::string gen_layout, gen_preset = "C6";
  gen_cmd->add_option("--n", gen_n, "Number of schedules")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_seed, "Corpus seed");
  gen_cmd->add_option("--out", gen_out, "Output corpus file");
  gen_cmd->add_option("--layout", gen_layout, "Layout JSON file");
  gen_cmd->add_option("--preset", gen_preset, "Parameter preset")
      ->check(CLI::IsMember({"C0", "C3", "C6"}));

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one case over a corpus");
  std::string run_corpus, run_scenario = "A", run_preset = "C6";
  std::string run_params, run_layout, run_est, run_out;
  int run_strategy = 1, run_jobs = 0;
  double run_atif = 1.0;
  bool run_no_events = false, run_freeze_mil = false;
  run_cmd->add_option("--corpus", run_corpus, "Corpus file")->required();
  run_cmd->add_option("--strategy", run_strategy, "Allocation strategy")
      ->check(CLI::IsMember({1, 2}));
  run_cmd->add_option("--scenario", run_scenario, "A, B or CuN (N unannounced large)");
  run_cmd->add_option("--atif", run_atif, "Arrival time interval factor")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--preset", run_preset, "Parameter preset")
      ->check(CLI::IsMember({"C0", "C3", "C6"}));
  run_cmd->add_option("--params", run_params, "Parameter file (overrides preset)");
  run_cmd->add_option("--layout", run_layout, "Layout JSON file");
  run_cmd->add_option("--estimates", run_est, "Task-estimate JSON file");
  run_cmd->add_option("--out", run_out, "Output directory (default <root>/<case>)");
  run_cmd->add_option("--jobs", run_jobs, "Worker threads (0 = all)");
  run_cmd->add_flag("--no-event-logs", run_no_events, "Skip per-run JSONL event logs");
  run_cmd->add_flag("--freeze-military", run_freeze_mil,
                    "Keep military arrival times fixed under ATIF");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "Effect sizes between two finished cases");
  std::string cmp_a, cmp_b, cmp_out = "comparison.csv";
  cmp_cmd->add_option("--a", cmp_a, "First case directory")->required();
  cmp_cmd->add_option("--b", cmp_b, "Second case directory")->required();
  cmp_cmd->add_option("--out", cmp_out, "Output CSV");

  // calibrate-estimates
  auto* cal_cmd = app.add_subcommand("calibrate-estimates",
                                     "Regenerate the planner's task-estimate table");
  std::string cal_corpus, cal_out = "estimates.json", cal_preset = "C6", cal_layout;
  int cal_jobs = 0;
  cal_cmd->add_option("--corpus", cal_corpus, "Corpus file")->required();
  cal_cmd->add_option("--out", cal_out, "Output estimates file");
  cal_cmd->add_option("--preset", cal_preset, "Parameter preset")
      ->check(CLI::IsMember({"C0", "C3", "C6"}));
  cal_cmd->add_option("--layout", cal_layout, "Layout JSON file");
  cal_cmd->add_option("--jobs", cal_jobs, "Worker threads (0 = all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      ghsim::SimOptions options = build_options(gen_preset, "", gen_layout, "");
      ghsim::GenParams gp;
      ghsim::ScheduleCorpus corpus = ghsim::generate_corpus(gen_n, gen_seed, gp, options);
      corpus.save_json(gen_out);
      double large = 0, small_cargo = 0, small_plain = 0, mil = 0, civ_pax = 0, civ_n = 0;
      for (const auto& s : corpus.schedules)
        for (const auto& e : s.entries) {
          if (e.military()) {
            ++mil;
          } else {
            civ_pax += e.pax;
            ++civ_n;
            if (e.klass == ghsim::AircraftClass::CivLarge)
              ++large;
            else if (e.has_cargo())
              ++small_cargo;
            else
              ++small_plain;
          }
        }
      double n = double(corpus.schedules.size());
      std::cout << "schedules: " << corpus.schedules.size() << "\n"
                << "mean large civilian: " << large / n << "\n"
                << "mean small with cargo: " << small_cargo / n << "\n"
                << "mean small without cargo: " << small_plain / n << "\n"
                << "mean military: " << mil / n << "\n"
                << "mean civilian pax: " << (civ_n > 0 ? civ_pax / civ_n : 0) << "\n"
                << "corpus hash: " << corpus.content_hash() << "\n";
      return kExitOk;
    }

    if (run_cmd->parsed()) {
      if (!valid_scenario(run_scenario)) {
        std::cerr << "unknown scenario: " << run_scenario << "\n";
        return kExitUsage;
      }
      ghsim::SimOptions options = build_options(run_preset, run_params, run_layout, run_est);
      options.strategy = run_strategy == 2 ? ghsim::StrategyKind::MaxAvailableAnticipation
                                           : ghsim::StrategyKind::MaxAvailable;
      ghsim::CaseSpec spec;
      spec.strategy = options.strategy;
      spec.scenario = ghsim::ScenarioSpec::parse(run_scenario);
      spec.atif = run_atif;
      spec.atif_scales_military = !run_freeze_mil;
      ghsim::ScheduleCorpus corpus = ghsim::ScheduleCorpus::load_json(run_corpus);
      std::string out_dir =
          run_out.empty() ? default_out_root() + "/" + ghsim::case_name(spec) : run_out;
      ghsim::CaseOutput out =
          ghsim::run_case(corpus, spec, options, out_dir, run_jobs, !run_no_events);
      std::cout << "case " << ghsim::case_name(spec) << " -> " << out_dir << "\n";
      for (ghsim::Interval i : ghsim::kReportIntervals) {
        auto it = out.stats.metrics.find(i);
        if (it == out.stats.metrics.end()) continue;
        std::cout << ghsim::interval_name(i) << ": mean " << it->second.mean << " min, sd "
                  << it->second.stddev << ", n " << it->second.n << "\n";
      }
      if (out.stats.incomplete > 0)
        std::cout << "incomplete aircraft: " << out.stats.incomplete << "\n";
      return kExitOk;
    }

    if (cmp_cmd->parsed()) {
      ghsim::StoredCase a = ghsim::load_case(cmp_a);
      ghsim::StoredCase b = ghsim::load_case(cmp_b);
      if (a.corpus_hash != b.corpus_hash) {
        std::cerr << "corpus mismatch: " << a.name << " vs " << b.name
                  << " were produced from different corpora\n";
        return kExitCorpusMismatch;
      }
      auto rows = ghsim::compare_cases(a.runs, b.runs, ghsim::AggregateFilter{});
      ghsim::write_comparison_csv(cmp_out, rows);
      for (const auto& r : rows)
        std::cout << ghsim::interval_name(r.metric) << ": delta " << r.delta.delta << " ("
                  << ghsim::to_string(r.delta.magnitude) << ")\n";
      return kExitOk;
    }

    if (cal_cmd->parsed()) {
      ghsim::SimOptions options = build_options(cal_preset, "", cal_layout, "");
      ghsim::ScheduleCorpus corpus = ghsim::ScheduleCorpus::load_json(cal_corpus);
      ghsim::TaskEstimates est = ghsim::calibrate_estimates(corpus, options, cal_jobs);
      est.save_json(cal_out);
      if (corpus.schedules.size() < 20)
        std::cout << "warning: low-n corpus (" << corpus.schedules.size()
                  << " schedules); estimates are noisy\n";
      std::cout << "estimates written to " << cal_out << "\n";
      return kExitOk;
    }
  } catch (const ghsim::SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
