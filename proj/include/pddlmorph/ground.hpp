#ifndef PDDLMORPH_GROUND_HPP
#define PDDLMORPH_GROUND_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pddlmorph/ast.hpp"

namespace pddlmorph {

// Propositional STRIPS task over fluent atoms only: predicates never occurring
// in any effect are static and resolved against init during instantiation.
struct GroundAction {
  std::string name;  // "(move rooma roomb)"; disjuncts of one schema share it
  std::vector<int> pre_pos;
  std::vector<int> pre_neg;
  std::vector<int> add;
  std::vector<int> del;
};

struct GroundTask {
  std::vector<std::string> atom_names;
  std::map<std::string, int> atom_index;
  std::vector<int> init;
  std::vector<int> goal;
  std::vector<GroundAction> actions;
  bool static_goal_violated = false;  // a static goal atom is false in init
};

struct GroundOptions {
  std::uint64_t instantiation_cap = 1'000'000;
};

// Instantiates every action schema over all object tuples, pruning instances
// whose static precondition literals fail against init. A disjunctive
// precondition expands into one ground action per disjunct.
// Throws GroundingCapExceededError.
GroundTask ground(const DomainAst& d, const ProblemAst& p,
                  const GroundOptions& options = {});

}  // namespace pddlmorph

#endif
