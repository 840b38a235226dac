#include "pddlmorph/ground.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "pddlmorph/errors.hpp"
#include "pddlmorph/printer.hpp"

namespace pddlmorph {

namespace {

struct Grounder {
  const DomainAst& domain;
  const ProblemAst& problem;
  const GroundOptions& options;

  std::unordered_set<std::string> static_predicates;
  std::set<GroundAtom> init_atoms;
  GroundTask task;
  std::uint64_t instantiations = 0;

  int atom_id(const GroundAtom& atom) {
    std::string name = print_atom(atom);
    auto it = task.atom_index.find(name);
    if (it != task.atom_index.end()) return it->second;
    int id = static_cast<int>(task.atom_names.size());
    task.atom_names.push_back(name);
    task.atom_index.emplace(std::move(name), id);
    return id;
  }

  GroundAtom substitute(const Literal& lit,
                        const std::vector<std::string>& params,
                        const std::vector<std::string>& binding) const {
    GroundAtom atom;
    atom.predicate = lit.predicate;
    for (const std::string& term : lit.arguments) {
      if (!term.empty() && term[0] == '?') {
        auto it = std::find(params.begin(), params.end(), term);
        atom.arguments.push_back(binding[static_cast<std::size_t>(
            std::distance(params.begin(), it))]);
      } else {
        atom.arguments.push_back(term);
      }
    }
    return atom;
  }

  void run() {
    for (const ActionDef& action : domain.actions) {
      for (const Literal& effect : action.effects) {
        // any predicate touched by an effect is fluent
        fluent_predicates.insert(effect.predicate);
      }
    }
    for (const PredicateDecl& pred : domain.predicates) {
      if (fluent_predicates.count(pred.name) == 0) {
        static_predicates.insert(pred.name);
      }
    }
    init_atoms.insert(problem.init.begin(), problem.init.end());

    for (const GroundAtom& atom : problem.init) {
      if (static_predicates.count(atom.predicate) == 0) {
        task.init.push_back(atom_id(atom));
      }
    }
    for (const GroundAtom& atom : problem.goal) {
      if (static_predicates.count(atom.predicate) != 0) {
        if (init_atoms.count(atom) == 0) task.static_goal_violated = true;
      } else {
        task.goal.push_back(atom_id(atom));
      }
    }

    for (const ActionDef& action : domain.actions) {
      std::vector<std::string> binding(action.parameters.size());
      instantiate(action, 0, binding);
    }

    std::sort(task.init.begin(), task.init.end());
    std::sort(task.goal.begin(), task.goal.end());
    task.goal.erase(std::unique(task.goal.begin(), task.goal.end()),
                    task.goal.end());
  }

  void instantiate(const ActionDef& action, std::size_t depth,
                   std::vector<std::string>& binding) {
    if (depth == action.parameters.size()) {
      if (++instantiations > options.instantiation_cap) {
        throw GroundingCapExceededError(
            "more than " + std::to_string(options.instantiation_cap) +
            " action instantiations");
      }
      emit(action, binding);
      return;
    }
    for (const std::string& obj : problem.objects) {
      binding[depth] = obj;
      instantiate(action, depth + 1, binding);
    }
  }

  void emit(const ActionDef& action, const std::vector<std::string>& binding) {
    GroundAction ga;
    ga.name = "(" + action.name;
    for (const std::string& obj : binding) ga.name += " " + obj;
    ga.name += ")";

    for (const Literal& lit : action.precondition.literals) {
      GroundAtom atom = substitute(lit, action.parameters, binding);
      if (static_predicates.count(atom.predicate) != 0) {
        bool holds = init_atoms.count(atom) != 0;
        if (holds != lit.positive) return;  // statically unsatisfiable
        continue;
      }
      (lit.positive ? ga.pre_pos : ga.pre_neg).push_back(atom_id(atom));
    }
    for (const Literal& lit : action.effects) {
      GroundAtom atom = substitute(lit, action.parameters, binding);
      if (static_predicates.count(atom.predicate) != 0) continue;  // unreachable
      (lit.positive ? ga.add : ga.del).push_back(atom_id(atom));
    }
    for (std::vector<int>* v : {&ga.pre_pos, &ga.pre_neg, &ga.add, &ga.del}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    // PDDL add-wins semantics keeps add/del disjoint per action.
    std::vector<int> del;
    std::set_difference(ga.del.begin(), ga.del.end(), ga.add.begin(),
                        ga.add.end(), std::back_inserter(del));
    ga.del = std::move(del);

    if (action.precondition.or_dummy) {
      // One ground action per disjunct, same name.
      GroundAtom q{*action.precondition.or_dummy, {}};
      GroundAction alt;
      alt.name = ga.name;
      alt.add = ga.add;
      alt.del = ga.del;
      bool keep_alt = true;
      if (static_predicates.count(q.predicate) != 0) {
        keep_alt = init_atoms.count(q) != 0;
      } else {
        alt.pre_pos.push_back(atom_id(q));
      }
      task.actions.push_back(std::move(ga));
      if (keep_alt) task.actions.push_back(std::move(alt));
    } else {
      task.actions.push_back(std::move(ga));
    }
  }

  std::unordered_set<std::string> fluent_predicates;
};

}  // namespace

GroundTask ground(const DomainAst& d, const ProblemAst& p,
                  const GroundOptions& options) {
  Grounder grounder{d, p, options};
  grounder.run();
  return std::move(grounder.task);
}

}  // namespace pddlmorph
