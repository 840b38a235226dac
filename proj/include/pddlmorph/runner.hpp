#ifndef PDDLMORPH_RUNNER_HPP
#define PDDLMORPH_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pddlmorph/rapl.hpp"

namespace pddlmorph {

struct PlannerSpec {
  std::string id;
  // argv with {domain}, {problem}, {plan-out} placeholders; {domain} and
  // {problem} must each occur exactly once across the template.
  std::vector<std::string> command;
  std::set<int> success_exit_codes = {0};
  std::set<int> unsolvable_exit_codes;
  bool plan_file_expected = true;
};

void validate_spec(const PlannerSpec& spec);  // throws std::invalid_argument

struct HarnessLimits {
  int first_core = 0;
  int cpu_cores = 1;
  std::uint64_t memory_bytes = 8ull << 30;
  double timeout_seconds = 300.0;
  int repetitions = 30;
};

enum class Outcome {
  PlanFound,
  ProvedUnsolvable,
  Failure,
  Timeout,
  MemoryExceeded,
  CrashError,
};

std::string to_string(Outcome outcome);
std::optional<Outcome> outcome_from_string(const std::string& name);

struct RunRecord {
  std::string planner;
  std::string domain;
  std::string mechanism;
  std::string instance;
  int rep = 0;
  std::optional<double> energy_j;
  double duration_s = 0.0;
  Outcome outcome = Outcome::CrashError;
  int exit_code = -1;
  double started_at = 0.0;  // seconds since the Unix epoch
};

// Spawns the planner pinned to the configured cores with a memory ceiling and
// a wall-clock kill at the timeout; samples energy around the child's
// lifetime; classifies the outcome from exit status plus plan-file presence.
// Child stdout/stderr go to `log_path`. Throws SpawnError only when the
// binary cannot be executed; everything else becomes a record.
RunRecord run_planner_once(const PlannerSpec& spec,
                           const std::string& domain_file,
                           const std::string& problem_file,
                           const HarnessLimits& limits,
                           const std::string& log_path,
                           EnergyMeter* meter);

// Parses an INI-style planner configuration:
//   [planner.fdssa]
//   command = /path/fd {domain} {problem} --plan-file {plan-out}
//   success_exit_codes = 0 1
//   unsolvable_exit_codes = 12
//   plan_file_expected = true
std::vector<PlannerSpec> parse_planner_config(const std::string& path);

}  // namespace pddlmorph

#endif
