#include <glob.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>

#include "pddlmorph/campaign.hpp"
#include "pddlmorph/errors.hpp"
#include "pddlmorph/parser.hpp"
#include "pddlmorph/report.hpp"
#include "pddlmorph/search.hpp"
#include "pddlmorph/stats.hpp"
#include "pddlmorph/suite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pddlmorph;

namespace {

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t results;
  std::vector<std::string> paths;
  int rc = glob(pattern.c_str(), 0, nullptr, &results);
  if (rc == 0) {
    for (std::size_t i = 0; i < results.gl_pathc; ++i) {
      paths.emplace_back(results.gl_pathv[i]);
    }
  }
  globfree(&results);
  if (rc != 0 && rc != GLOB_NOMATCH) {
    throw std::runtime_error("glob failed for '" + pattern + "'");
  }
  return paths;
}

std::uint64_t parse_memory(const std::string& text) {
  std::size_t idx = 0;
  double value = std::stod(text, &idx);
  std::string suffix = text.substr(idx);
  for (char& c : suffix) c = static_cast<char>(std::tolower(c));
  double factor = 1.0;
  if (suffix == "k" || suffix == "kb") factor = 1024.0;
  else if (suffix == "m" || suffix == "mb") factor = 1024.0 * 1024.0;
  else if (suffix == "g" || suffix == "gb") factor = 1024.0 * 1024.0 * 1024.0;
  else if (!suffix.empty()) throw std::runtime_error("bad memory size '" + text + "'");
  return static_cast<std::uint64_t>(value * factor);
}

int cmd_generate(const std::string& domain_path, const std::string& problems_glob,
                 const std::string& outdir, double ratio,
                 const std::string& prefix) {
  DomainAst domain;
  std::vector<ProblemAst> problems;
  try {
    domain = parse_domain_file(domain_path);
    for (const std::string& path : expand_glob(problems_glob)) {
      problems.push_back(parse_problem_file(path, domain));
    }
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  GeneratorConfig cfg;
  cfg.redundancy_ratio = ratio;
  cfg.dummy_name_prefix = prefix;
  VariantSuite suite = generate_suite(domain, problems, cfg);
  std::string manifest = write_suite(suite, outdir);
  std::cout << manifest << "\n";
  if (suite.skipped_count() > 0) {
    for (const VariantEntry& entry : suite.variants) {
      if (!entry.ok) {
        std::cerr << "skipped " << to_string(entry.id) << ": " << entry.reason
                  << "\n";
      }
    }
    return 3;
  }
  return 0;
}

int cmd_oracle_check(const std::string& manifest_path, std::size_t fallback_bound,
                     std::uint64_t state_cap, std::uint64_t ground_cap,
                     const std::string& out_path, const std::string& prefix) {
  Manifest manifest = read_manifest(manifest_path);

  const ManifestEntry* original = nullptr;
  for (const ManifestEntry& entry : manifest.entries) {
    if (entry.mechanism == "original") original = &entry;
  }
  if (original == nullptr) {
    std::cerr << "manifest has no original entry\n";
    return 1;
  }
  DomainAst base_domain = parse_domain_file(original->domain_file);
  std::vector<ProblemAst> base_problems;
  for (const std::string& path : original->problem_files) {
    base_problems.push_back(parse_problem_file(path, base_domain));
  }

  GroundOptions ground_options{ground_cap};
  SearchOptions search_options;
  search_options.state_cap = state_cap;

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    out = &file;
  }

  bool gate_failed = false;
  bool inconclusive = false;

  for (const ManifestEntry& entry : manifest.entries) {
    if (entry.mechanism == "original") continue;
    json line;
    line["mechanism"] = entry.mechanism;
    if (entry.status != "ok") {
      line["verdict"] = "skipped";
      line["evidence"] = entry.reason;
      *out << line.dump() << "\n";
      continue;
    }

    try {
      DomainAst variant_domain = parse_domain_file(entry.domain_file);
      std::vector<ProblemAst> variant_problems;
      for (const std::string& path : entry.problem_files) {
        variant_problems.push_back(parse_problem_file(path, variant_domain));
      }

      Verdict worst = Verdict::Equivalent;
      std::string evidence;
      std::size_t state_count = 0;
      std::optional<std::size_t> plan_length;
      std::size_t dead_ends = 0;
      bool new_action_applicable = false;

      for (std::size_t i = 0; i < base_problems.size(); ++i) {
        GroundTask base_task = ground(base_domain, base_problems[i], ground_options);
        GroundTask variant_task =
            ground(variant_domain, variant_problems[i], ground_options);
        ComparisonVerdict verdict = compare_tasks(
            base_task, variant_task, prefix, fallback_bound, search_options);
        state_count += verdict.candidate.reachable_state_count;
        dead_ends += verdict.candidate.dead_end_count;
        if (!plan_length) plan_length = verdict.candidate.shortest_plan_length;
        if (static_cast<int>(verdict.verdict) > static_cast<int>(worst)) {
          worst = verdict.verdict;
          evidence = verdict.witness;
        } else if (evidence.empty()) {
          evidence = verdict.witness;
        }
        if (entry.category == "TDC") {
          // Which newly introduced schemas are ever applicable?
          Exploration exploration = explore(variant_task, 0, search_options);
          std::set<std::string> base_names;
          for (const ActionDef& a : base_domain.actions) base_names.insert(a.name);
          for (const std::string& name : exploration.applicable_actions) {
            std::string schema = name.substr(1, name.find_first_of(" )") - 1);
            if (base_names.count(schema) == 0) new_action_applicable = true;
          }
        }
      }

      line["verdict"] = to_string(worst);
      line["evidence"] = evidence;
      line["stateCount"] = state_count;
      if (plan_length) {
        line["planLength"] = *plan_length;
      } else {
        line["planLength"] = nullptr;
      }

      if (entry.category == "SSC") {
        if (worst != Verdict::Equivalent) gate_failed = true;
      } else if (entry.category == "MRC") {
        if (worst == Verdict::Deviating) gate_failed = true;
      } else if (entry.category == "TDC") {
        bool deviates = worst != Verdict::Equivalent;
        if (entry.mechanism == "TDC-RPD") {
          bool has_dead_end = dead_ends >= 1;
          if (!has_dead_end && !entry.degenerate) gate_failed = true;
          line["deadEndCount"] = dead_ends;
        } else if (!deviates) {
          // The edit applied but cannot manifest on this instance set, e.g. a
          // composed action with no applicable instance in any reachable state.
          if (new_action_applicable) {
            gate_failed = true;
          } else {
            line["verdict"] = "degenerate";
            line["evidence"] =
                "introduced actions have no applicable instance in any "
                "reachable state";
          }
        }
      }
    } catch (const GroundingCapExceededError& e) {
      line["verdict"] = "inconclusive";
      line["evidence"] = e.what();
      inconclusive = true;
    } catch (const StateCapExceededError& e) {
      line["verdict"] = "inconclusive";
      line["evidence"] = e.what();
      inconclusive = true;
    }
    *out << line.dump() << "\n";
  }

  if (gate_failed) return 1;
  if (inconclusive) return 4;
  return 0;
}

int cmd_bench(const std::string& manifest_path, const std::string& planners_path,
              const CampaignOptions& options) {
  Manifest manifest = read_manifest(manifest_path);
  std::vector<PlannerSpec> planners = parse_planner_config(planners_path);
  CampaignSummary summary = run_campaign(manifest, planners, options);
  std::cout << "new records: " << summary.new_records << "\n";
  std::cout << "already present: " << summary.skipped_existing << "\n";
  for (const std::string& variant : summary.skipped_variants) {
    std::cout << "variant skipped (not generated): " << variant << "\n";
  }
  for (const std::string& planner : summary.skipped_planners) {
    std::cout << "planner skipped: " << planner << "\n";
  }
  return summary.skipped_planners.empty() ? 0 : 1;
}

int cmd_report(const std::string& in_path, const std::string& baseline,
               const std::string& format, const std::string& out_path) {
  std::vector<RunRecord> records = read_results(in_path);
  if (records.empty()) {
    std::cerr << "no records in '" << in_path << "'\n";
    return 1;
  }
  std::vector<SummaryStats> stats = summarize(records);
  std::vector<CorrelationResult> correlations = correlate(records, baseline);
  std::string document = format == "csv"
                             ? emit_csv(stats, correlations)
                             : emit_markdown(stats, correlations, baseline);
  if (out_path.empty() || out_path == "-") {
    std::cout << document;
  } else {
    std::ofstream out(out_path);
    out << document;
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return 1;
    }
  }
  return 0;
}

int cmd_mechanisms() {
  std::printf("%-10s %s\n", "Mechanism", "Transformation");
  for (const MechanismInfo& info : mechanism_catalogue()) {
    std::printf("%-10s %s\n", to_string(info.id).c_str(),
                info.description.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domain model configuration toolkit: variant generation, "
               "semantic certification, and energy benchmarking for "
               "STRIPS-level PDDL domains"};
  app.require_subcommand(1);

  // generate
  std::string domain_path, problems_glob, outdir = "suite";
  double ratio = 0.10;
  std::string prefix = "dmc-dummy";
  CLI::App* generate = app.add_subcommand("generate", "Generate the 32-variant suite");
  generate->add_option("--domain", domain_path, "Domain PDDL file")->required();
  generate->add_option("--problems", problems_glob, "Problem file glob")->required();
  generate->add_option("--out", outdir, "Output directory");
  generate->add_option("--ratio", ratio, "Redundancy ratio (default 0.10)");
  generate->add_option("--prefix", prefix, "Dummy name prefix");

  // oracle-check
  std::string manifest_path, oracle_out;
  std::string oracle_prefix = "dmc-dummy";
  std::size_t fallback_bound = 4;
  std::uint64_t state_cap = 1'000'000;
  std::uint64_t ground_cap = 1'000'000;
  CLI::App* oracle =
      app.add_subcommand("oracle-check", "Certify variant semantics by exhaustive search");
  oracle->add_option("--manifest", manifest_path, "suite-manifest.json")->required();
  oracle->add_option("--bound", fallback_bound,
                     "Plan bound fallback for unsolvable baselines");
  oracle->add_option("--state-cap", state_cap, "Reachable state cap");
  oracle->add_option("--ground-cap", ground_cap, "Instantiation cap");
  oracle->add_option("--out", oracle_out, "Verdict report path (default stdout)");
  oracle->add_option("--prefix", oracle_prefix, "Dummy prefix projected away");

  // bench
  std::string bench_manifest, planners_path, mem_text = "8g", instances_glob;
  CampaignOptions campaign;
  std::int64_t max_records = -1;
  bool no_energy = false;
  CLI::App* bench = app.add_subcommand("bench", "Run the measurement campaign");
  bench->add_option("--suite", bench_manifest, "suite-manifest.json")->required();
  bench->add_option("--planners", planners_path, "Planner config (INI)")->required();
  bench->add_option("--instances", instances_glob, "Instance id glob filter");
  bench->add_option("--reps", campaign.limits.repetitions, "Repetitions (default 30)");
  bench->add_option("--timeout", campaign.limits.timeout_seconds,
                    "Wall-clock timeout seconds (default 300)");
  bench->add_option("--mem", mem_text, "Memory ceiling, e.g. 8g");
  bench->add_option("--core", campaign.limits.first_core, "First pinned CPU core");
  bench->add_option("--cores", campaign.limits.cpu_cores, "Number of pinned cores");
  bench->add_option("--out", campaign.results_path, "Results JSONL path");
  bench->add_option("--log-dir", campaign.log_dir, "Per-run log directory");
  bench->add_option("--max-records", max_records, "Stop after N new records");
  bench->add_flag("--no-energy", no_energy, "Skip energy measurement");

  // report
  std::string report_in, report_baseline = "original", report_format = "markdown";
  std::string report_out;
  CLI::App* report = app.add_subcommand("report", "Aggregate results into tables");
  report->add_option("--in", report_in, "Results JSONL")->required();
  report->add_option("--baseline", report_baseline, "Baseline mechanism id");
  report->add_option("--format", report_format, "markdown|csv")
      ->check(CLI::IsMember({"markdown", "csv"}));
  report->add_option("--out", report_out, "Output path (default stdout)");

  CLI::App* mechanisms =
      app.add_subcommand("mechanisms", "Print the mechanism catalogue");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return cmd_generate(domain_path, problems_glob, outdir, ratio, prefix);
    }
    if (oracle->parsed()) {
      return cmd_oracle_check(manifest_path, fallback_bound, state_cap,
                              ground_cap, oracle_out, oracle_prefix);
    }
    if (bench->parsed()) {
      campaign.limits.memory_bytes = parse_memory(mem_text);
      if (!instances_glob.empty()) campaign.instance_glob = instances_glob;
      if (max_records >= 0) {
        campaign.max_new_records = static_cast<std::uint64_t>(max_records);
      }
      campaign.use_energy_meter = !no_energy;
      return cmd_bench(bench_manifest, planners_path, campaign);
    }
    if (report->parsed()) {
      return cmd_report(report_in, report_baseline, report_format, report_out);
    }
    if (mechanisms->parsed()) {
      return cmd_mechanisms();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
