#ifndef PDDLMORPH_MECHANISMS_HPP
#define PDDLMORPH_MECHANISMS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pddlmorph/ast.hpp"

namespace pddlmorph {

enum class Category { SSC, MRC, TDC };

std::string to_string(Category category);

// Identity of one configuration mechanism, e.g. {SSC, "PDU1"} -> "SSC-PDU1".
// MRC-RPD and TDC-RPD are distinct mechanisms distinguished by category.
struct MechanismId {
  Category category;
  std::string code;

  bool operator==(const MechanismId&) const = default;
};

std::string to_string(const MechanismId& id);

struct MechanismInfo {
  MechanismId id;
  std::string description;
};

// The full catalogue in table row order: 20 SSC, 7 MRC, 4 TDC.
const std::vector<MechanismInfo>& mechanism_catalogue();

struct GeneratorConfig {
  double redundancy_ratio = 0.10;
  std::string dummy_name_prefix = "dmc-dummy";
  std::optional<ProblemAst> reference_problem;  // supplies goal symbols for TDC
};

enum class SortDirection { Descending, Ascending };
enum class PredicateSortKey { UsageFrequency, Alphabetical };
enum class ActionSortKey {
  EffectCount,
  NegativeEffectCount,
  PreconditionCount,
  ParameterCount,
  EffectPreconditionRatio,
  Name,
};
enum class ActionBodyPart { Preconditions, Effects };

// --- SSC: reorderings (stable, original order breaks ties) ---

// Usage frequency counts every occurrence of the predicate symbol across all
// action preconditions and effects.
DomainAst reorder_predicates(const DomainAst& d, PredicateSortKey key,
                             SortDirection direction);

// Throws RatioUndefinedError for the ratio key when any action has zero
// precondition literals.
DomainAst reorder_actions(const DomainAst& d, ActionSortKey key,
                          SortDirection direction);

// Sorts the chosen literal list within every action by the literal's canonical
// printed form; negative literals are keyed by the inner atom with `not` as a
// final tie-key.
DomainAst reorder_action_body(const DomainAst& d, ActionBodyPart part,
                              SortDirection direction);

// --- MRC: semantically inert additions ---

ProblemAst add_dummy_objects(const ProblemAst& p, const DomainAst& d,
                             const GeneratorConfig& cfg);

DomainAst add_dummy_predicates(const DomainAst& d, const GeneratorConfig& cfg);

std::pair<DomainAst, std::vector<ProblemAst>> inflate_predicate_arity(
    const DomainAst& d, const std::vector<ProblemAst>& problems,
    const GeneratorConfig& cfg);

DomainAst add_inapplicable_duplicate(const DomainAst& d,
                                     const GeneratorConfig& cfg);

DomainAst add_dummy_action_parameters(const DomainAst& d,
                                      const GeneratorConfig& cfg);

DomainAst add_disjunctive_dummy_precondition(const DomainAst& d,
                                             const GeneratorConfig& cfg);

DomainAst add_dummy_effect(const DomainAst& d, const GeneratorConfig& cfg);

// --- TDC: solvability-affecting edits ---
// All throw NoGoalAchievingEffectError when no action has a positive effect
// whose predicate symbol occurs in the reference problem's goal.

DomainAst make_def_variant(const DomainAst& d, const GeneratorConfig& cfg);

// Returns the variant plus a degenerate flag (single-action domains have no
// other actions to block).
struct RpdDeadendResult {
  DomainAst domain;
  std::vector<ProblemAst> problems;
  bool degenerate = false;
};
RpdDeadendResult make_rpd_deadend_variant(const DomainAst& d,
                                          const std::vector<ProblemAst>& problems,
                                          const GeneratorConfig& cfg);

DomainAst make_apd_variant(const DomainAst& d, const GeneratorConfig& cfg);

DomainAst make_cop_variant(const DomainAst& d, const GeneratorConfig& cfg);

}  // namespace pddlmorph

#endif
