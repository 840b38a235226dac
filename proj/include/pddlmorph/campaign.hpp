#ifndef PDDLMORPH_CAMPAIGN_HPP
#define PDDLMORPH_CAMPAIGN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pddlmorph/runner.hpp"
#include "pddlmorph/suite.hpp"

namespace pddlmorph {

struct CampaignOptions {
  HarnessLimits limits;
  std::string results_path = "results.jsonl";
  std::string log_dir = "run-logs";
  std::optional<std::string> instance_glob;  // basename filter
  // Stop after this many new records (smoke runs / resumability tests).
  std::optional<std::uint64_t> max_new_records;
  bool use_energy_meter = true;
};

struct CampaignSummary {
  std::uint64_t new_records = 0;
  std::uint64_t skipped_existing = 0;
  std::vector<std::string> skipped_planners;  // spawn failures
  std::vector<std::string> skipped_variants;  // manifest skips
};

// One JSON line per RunRecord, append-only:
// {planner, domain, mechanism, instance, rep, energy_j, duration_s, outcome,
//  exit_code, started_at}
std::string run_record_to_json(const RunRecord& record);
RunRecord run_record_from_json(const std::string& line);
std::vector<RunRecord> read_results(const std::string& path);

// Runs planner x variant x instance strictly sequentially, repetitions
// round-robin across variants. Resumable: (planner, mechanism, instance, rep)
// keys already in the results file are skipped.
CampaignSummary run_campaign(const Manifest& manifest,
                             const std::vector<PlannerSpec>& planners,
                             const CampaignOptions& options);

}  // namespace pddlmorph

#endif
