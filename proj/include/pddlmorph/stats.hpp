#ifndef PDDLMORPH_STATS_HPP
#define PDDLMORPH_STATS_HPP

#include <optional>
#include <string>
#include <vector>

#include "pddlmorph/campaign.hpp"

namespace pddlmorph {

struct SummaryStats {
  std::string planner;
  std::string domain;
  std::string mechanism;
  std::optional<double> mu_j;     // mean energy, null in duration-only mode
  std::optional<double> sigma_j;  // sample (n-1) standard deviation
  double t_s = 0.0;               // mean duration
  std::size_t n = 0;              // included runs
  bool singleton = false;         // sigma of one run is defined as 0, flagged
};

struct CorrelationResult {
  std::string planner;
  std::string domain;
  std::string mechanism;
  std::optional<double> r;  // undefined when <2 shared instances or 0 variance
  std::size_t instances_used = 0;
};

// Inclusion rule: outcome in {PlanFound, Failure}. Timeouts and crashes never
// enter the aggregates. Idempotent on already-filtered inputs.
std::vector<RunRecord> filter_included(const std::vector<RunRecord>& records);

// One row per planner x domain x mechanism; mu/sigma pool energies over
// instances and repetitions. Groups with zero included runs are omitted.
std::vector<SummaryStats> summarize(const std::vector<RunRecord>& records);

// Pearson r over paired per-instance mean energies, x = variant, y = baseline.
std::optional<double> pearson(const std::vector<double>& x,
                              const std::vector<double>& y);

// r per planner x domain x mechanism against the baseline mechanism
// (normally "original"), paired by problem instance.
std::vector<CorrelationResult> correlate(const std::vector<RunRecord>& records,
                                         const std::string& baseline_mechanism);

}  // namespace pddlmorph

#endif
