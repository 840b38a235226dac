#ifndef PDDLMORPH_SEARCH_HPP
#define PDDLMORPH_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pddlmorph/ground.hpp"

namespace pddlmorph {

struct OracleReport {
  bool solvable = false;
  std::optional<std::size_t> shortest_plan_length;
  std::size_t reachable_state_count = 0;
  std::size_t dead_end_count = 0;  // reachable states with unreachable goal
  std::uint64_t plan_set_hash = 0; // digest of all plans up to the bound
};

// Full exploration result; `report` is the public summary, the sets feed
// task-to-task comparison.
struct Exploration {
  OracleReport report;
  // Reachable states as sorted fluent-atom name sets.
  std::set<std::vector<std::string>> states;
  // All goal-reaching action-name sequences of length <= bound,
  // enumerated in deterministic ground-action order.
  std::set<std::vector<std::string>> plans;
  // Ground action names applicable in at least one reachable state.
  std::set<std::string> applicable_actions;
};

struct SearchOptions {
  std::uint64_t state_cap = 1'000'000;
  std::uint64_t enumeration_cap = 4'000'000;
};

// Exhaustive BFS from init. Exact shortest plan length; dead ends computed by
// backward reachability from goal states over the reachable sub-graph.
// Throws StateCapExceededError.
Exploration explore(const GroundTask& task, std::size_t plan_bound,
                    const SearchOptions& options = {});

inline OracleReport solve_bfs(const GroundTask& task, std::size_t plan_bound,
                              const SearchOptions& options = {}) {
  return explore(task, plan_bound, options).report;
}

// True iff each named action is applicable in sequence and the final state
// satisfies the goal. Ground actions sharing a name (RPR disjuncts) have
// identical effects, so any applicable one may fire.
bool validate_plan(const GroundTask& task,
                   const std::vector<std::string>& plan);

enum class Verdict { Equivalent, SolvabilityPreserving, Deviating };

std::string to_string(Verdict verdict);

struct ComparisonVerdict {
  Verdict verdict = Verdict::Deviating;
  std::string witness;  // evidence for the verdict
  OracleReport baseline;
  OracleReport candidate;
};

// Compares two ground tasks after projecting out atoms whose predicate, and
// arguments which, carry the dummy prefix. Plan-set comparison is bounded at
// the baseline's shortest length + 2 (or `fallback_bound` when unsolvable).
ComparisonVerdict compare_tasks(const GroundTask& baseline,
                                const GroundTask& candidate,
                                const std::string& dummy_prefix,
                                std::size_t fallback_bound = 4,
                                const SearchOptions& options = {});

}  // namespace pddlmorph

#endif
