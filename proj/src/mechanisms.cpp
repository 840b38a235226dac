#include "pddlmorph/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "pddlmorph/errors.hpp"
#include "pddlmorph/printer.hpp"

namespace pddlmorph {

std::string to_string(Category category) {
  switch (category) {
    case Category::SSC: return "SSC";
    case Category::MRC: return "MRC";
    case Category::TDC: return "TDC";
  }
  return "?";
}

std::string to_string(const MechanismId& id) {
  return to_string(id.category) + "-" + id.code;
}

const std::vector<MechanismInfo>& mechanism_catalogue() {
  static const std::vector<MechanismInfo> catalogue = {
      {{Category::SSC, "PDU1"}, "Reorder predicate declarations by usage frequency, descending"},
      {{Category::SSC, "PDU2"}, "Reorder predicate declarations by usage frequency, ascending"},
      {{Category::SSC, "PDA1"}, "Reorder predicate declarations alphabetically, A-Z"},
      {{Category::SSC, "PDA2"}, "Reorder predicate declarations alphabetically, Z-A"},
      {{Category::SSC, "OEF1"}, "Sort actions by number of effect literals, descending"},
      {{Category::SSC, "OEF2"}, "Sort actions by number of effect literals, ascending"},
      {{Category::SSC, "ONE1"}, "Sort actions by number of negative effects, descending"},
      {{Category::SSC, "ONE2"}, "Sort actions by number of negative effects, ascending"},
      {{Category::SSC, "OPR1"}, "Sort actions by number of preconditions, descending"},
      {{Category::SSC, "OPR2"}, "Sort actions by number of preconditions, ascending"},
      {{Category::SSC, "OPA1"}, "Sort actions by number of parameters, descending"},
      {{Category::SSC, "OPA2"}, "Sort actions by number of parameters, ascending"},
      {{Category::SSC, "ORA1"}, "Sort actions by ratio of effects to preconditions, descending"},
      {{Category::SSC, "ORA2"}, "Sort actions by ratio of effects to preconditions, ascending"},
      {{Category::SSC, "OAN1"}, "Sort actions alphabetically by action name, A-Z"},
      {{Category::SSC, "OAN2"}, "Sort actions alphabetically by action name, Z-A"},
      {{Category::SSC, "PRA1"}, "Sort preconditions within actions alphabetically, A-Z"},
      {{Category::SSC, "PRA2"}, "Sort preconditions within actions alphabetically, Z-A"},
      {{Category::SSC, "EFA1"}, "Sort effect literals alphabetically within actions, A-Z"},
      {{Category::SSC, "EFA2"}, "Sort effect literals alphabetically within actions, Z-A"},
      {{Category::MRC, "ROB"}, "Add 10% additional dummy objects to the problem file"},
      {{Category::MRC, "RPD"}, "Insert 10% dummy predicates declared without parameters"},
      {{Category::MRC, "RPA"}, "Increase predicate arity by adding a dummy parameter"},
      {{Category::MRC, "ROP"}, "Duplicate an action; make it inapplicable via contradictory preconditions"},
      {{Category::MRC, "ROA"}, "Add an unused dummy parameter to all action definitions"},
      {{Category::MRC, "RPR"}, "Add one dummy predicate to every action precondition (disjunctively)"},
      {{Category::MRC, "REF"}, "Add a dummy predicate to action effects (positive and negative literals)"},
      {{Category::TDC, "DEF"}, "Duplicate an action and remove one goal-achieving effect"},
      {{Category::TDC, "RPD"}, "Introduce an unremovable dummy predicate that marks dead-end states"},
      {{Category::TDC, "APD"}, "Duplicate an action; remove a goal-relevant effect; alternate predicates"},
      {{Category::TDC, "COP"}, "Compose two actions such that goal-relevant effects are removed"},
  };
  return catalogue;
}

namespace {

// Collects every identifier already present so mechanism-introduced names can
// be guaranteed fresh (auto-suffixed with an integer until fresh).
class NamePool {
 public:
  explicit NamePool(const DomainAst& d,
                    const std::vector<ProblemAst>& problems = {}) {
    add(d.name);
    for (const PredicateDecl& p : d.predicates) {
      add(p.name);
      for (const std::string& v : p.parameters) add(strip(v));
    }
    for (const ActionDef& a : d.actions) {
      add(a.name);
      for (const std::string& v : a.parameters) add(strip(v));
      for (const Literal& l : a.precondition.literals) add_literal(l);
      if (a.precondition.or_dummy) add(*a.precondition.or_dummy);
      for (const Literal& l : a.effects) add_literal(l);
    }
    for (const ProblemAst& p : problems) {
      add(p.name);
      for (const std::string& o : p.objects) add(o);
    }
  }

  std::string fresh(const std::string& base) {
    if (names_.insert(base).second) return base;
    for (int i = 2;; ++i) {
      std::string candidate = base + "-" + std::to_string(i);
      if (names_.insert(candidate).second) return candidate;
    }
  }

  std::string fresh_variable(const std::string& base) {
    return "?" + fresh(base);
  }

 private:
  static std::string strip(const std::string& v) {
    return v.empty() || v[0] != '?' ? v : v.substr(1);
  }
  void add(const std::string& name) { names_.insert(name); }
  void add_literal(const Literal& l) {
    add(l.predicate);
    for (const std::string& t : l.arguments) add(strip(t));
  }
  std::unordered_set<std::string> names_;
};

std::size_t ceil_fraction(double ratio, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n)));
}

std::size_t precondition_literal_count(const ActionDef& a) {
  // A disjunctive precondition counts its contained literals.
  return a.precondition.literals.size() + (a.precondition.or_dummy ? 1 : 0);
}

template <typename Key>
void stable_sort_by(std::vector<std::size_t>& order, SortDirection direction,
                    const std::vector<Key>& keys) {
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return direction == SortDirection::Ascending ? keys[a] < keys[b]
                                                 : keys[b] < keys[a];
  });
}

template <typename T, typename Key>
std::vector<T> stable_sorted(const std::vector<T>& items, SortDirection direction,
                             const std::vector<Key>& keys) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  stable_sort_by(order, direction, keys);
  std::vector<T> out;
  out.reserve(items.size());
  for (std::size_t i : order) out.push_back(items[i]);
  return out;
}

void add_requirement(DomainAst& d, const std::string& flag) {
  if (std::find(d.requirements.begin(), d.requirements.end(), flag) ==
      d.requirements.end()) {
    d.requirements.push_back(flag);
  }
}

PredicateDecl zero_arity(const std::string& name) { return {name, {}}; }

Literal nullary_literal(const std::string& predicate, bool positive) {
  return {positive, predicate, {}};
}

std::unordered_set<std::string> goal_predicates(const GeneratorConfig& cfg) {
  std::unordered_set<std::string> preds;
  if (cfg.reference_problem) {
    for (const GroundAtom& atom : cfg.reference_problem->goal) {
      preds.insert(atom.predicate);
    }
  }
  return preds;
}

// First action in declaration order with a positive effect whose predicate
// symbol occurs in the reference goal; also reports the first such effect.
std::pair<std::size_t, std::size_t> find_goal_achieving_action(
    const DomainAst& d, const GeneratorConfig& cfg) {
  auto goals = goal_predicates(cfg);
  for (std::size_t i = 0; i < d.actions.size(); ++i) {
    const ActionDef& a = d.actions[i];
    for (std::size_t j = 0; j < a.effects.size(); ++j) {
      if (a.effects[j].positive && goals.count(a.effects[j].predicate) != 0) {
        return {i, j};
      }
    }
  }
  throw NoGoalAchievingEffectError(
      "no action has a positive effect on a goal predicate of '" +
      (cfg.reference_problem ? cfg.reference_problem->name : std::string("<none>")) +
      "'");
}

}  // namespace

DomainAst reorder_predicates(const DomainAst& d, PredicateSortKey key,
                             SortDirection direction) {
  DomainAst out = d;
  if (key == PredicateSortKey::Alphabetical) {
    std::vector<std::string> keys;
    for (const PredicateDecl& p : d.predicates) keys.push_back(p.name);
    out.predicates = stable_sorted(d.predicates, direction, keys);
    return out;
  }
  std::unordered_map<std::string, std::size_t> usage;
  for (const ActionDef& a : d.actions) {
    for (const Literal& l : a.precondition.literals) ++usage[l.predicate];
    if (a.precondition.or_dummy) ++usage[*a.precondition.or_dummy];
    for (const Literal& l : a.effects) ++usage[l.predicate];
  }
  std::vector<std::size_t> keys;
  for (const PredicateDecl& p : d.predicates) keys.push_back(usage[p.name]);
  out.predicates = stable_sorted(d.predicates, direction, keys);
  return out;
}

DomainAst reorder_actions(const DomainAst& d, ActionSortKey key,
                          SortDirection direction) {
  DomainAst out = d;
  switch (key) {
    case ActionSortKey::Name: {
      std::vector<std::string> keys;
      for (const ActionDef& a : d.actions) keys.push_back(a.name);
      out.actions = stable_sorted(d.actions, direction, keys);
      return out;
    }
    case ActionSortKey::EffectPreconditionRatio: {
      std::vector<double> keys;
      for (const ActionDef& a : d.actions) {
        std::size_t pre = precondition_literal_count(a);
        if (pre == 0) {
          throw RatioUndefinedError("action '" + a.name +
                                    "' has zero precondition literals");
        }
        keys.push_back(static_cast<double>(a.effects.size()) /
                       static_cast<double>(pre));
      }
      out.actions = stable_sorted(d.actions, direction, keys);
      return out;
    }
    default: {
      std::vector<std::size_t> keys;
      for (const ActionDef& a : d.actions) {
        switch (key) {
          case ActionSortKey::EffectCount:
            keys.push_back(a.effects.size());
            break;
          case ActionSortKey::NegativeEffectCount:
            keys.push_back(static_cast<std::size_t>(
                std::count_if(a.effects.begin(), a.effects.end(),
                              [](const Literal& l) { return !l.positive; })));
            break;
          case ActionSortKey::PreconditionCount:
            keys.push_back(precondition_literal_count(a));
            break;
          case ActionSortKey::ParameterCount:
            keys.push_back(a.parameters.size());
            break;
          default:
            break;
        }
      }
      out.actions = stable_sorted(d.actions, direction, keys);
      return out;
    }
  }
}

DomainAst reorder_action_body(const DomainAst& d, ActionBodyPart part,
                              SortDirection direction) {
  DomainAst out = d;
  for (ActionDef& a : out.actions) {
    std::vector<Literal>& literals = part == ActionBodyPart::Preconditions
                                         ? a.precondition.literals
                                         : a.effects;
    std::vector<std::pair<std::string, int>> keys;
    for (const Literal& l : literals) {
      Literal inner = l;
      inner.positive = true;
      keys.emplace_back(print_literal(inner), l.positive ? 0 : 1);
    }
    literals = stable_sorted(literals, direction, keys);
  }
  return out;
}

ProblemAst add_dummy_objects(const ProblemAst& p, const DomainAst& d,
                             const GeneratorConfig& cfg) {
  ProblemAst out = p;
  NamePool pool(d, {p});
  std::size_t count = ceil_fraction(cfg.redundancy_ratio, p.objects.size());
  for (std::size_t i = 0; i < count; ++i) {
    out.objects.push_back(
        pool.fresh(cfg.dummy_name_prefix + "-o" + std::to_string(i + 1)));
  }
  return out;
}

DomainAst add_dummy_predicates(const DomainAst& d, const GeneratorConfig& cfg) {
  DomainAst out = d;
  NamePool pool(d);
  std::size_t count = ceil_fraction(cfg.redundancy_ratio, d.predicates.size());
  for (std::size_t i = 0; i < count; ++i) {
    out.predicates.push_back(zero_arity(
        pool.fresh(cfg.dummy_name_prefix + "-p" + std::to_string(i + 1))));
  }
  return out;
}

std::pair<DomainAst, std::vector<ProblemAst>> inflate_predicate_arity(
    const DomainAst& d, const std::vector<ProblemAst>& problems,
    const GeneratorConfig& cfg) {
  DomainAst out = d;
  NamePool pool(d, problems);
  std::string var = pool.fresh_variable(cfg.dummy_name_prefix + "-v");
  std::string constant = pool.fresh(cfg.dummy_name_prefix + "-c");

  for (PredicateDecl& p : out.predicates) p.parameters.push_back(var);
  for (ActionDef& a : out.actions) {
    bool uses_any = !a.precondition.literals.empty() || !a.effects.empty() ||
                    a.precondition.or_dummy.has_value();
    if (!uses_any) continue;
    a.parameters.push_back(var);
    for (Literal& l : a.precondition.literals) l.arguments.push_back(var);
    for (Literal& l : a.effects) l.arguments.push_back(var);
    // A zero-arity disjunct would become unary; fold it into the conjunction
    // shape is not representable, so reject (baseline domains have none).
    if (a.precondition.or_dummy) {
      throw UnsupportedFeatureError(
          "arity inflation over a disjunctive precondition");
    }
  }

  std::vector<ProblemAst> out_problems;
  bool any_atom = false;
  for (const ProblemAst& p : problems) {
    if (!p.init.empty() || !p.goal.empty()) any_atom = true;
  }
  for (const ProblemAst& p : problems) {
    ProblemAst q = p;
    for (GroundAtom& atom : q.init) atom.arguments.push_back(constant);
    for (GroundAtom& atom : q.goal) atom.arguments.push_back(constant);
    if (any_atom || !d.predicates.empty()) q.objects.push_back(constant);
    out_problems.push_back(std::move(q));
  }
  return {out, out_problems};
}

DomainAst add_inapplicable_duplicate(const DomainAst& d,
                                     const GeneratorConfig& cfg) {
  if (d.actions.empty()) throw TooFewActionsError("domain has no actions");
  DomainAst out = d;
  NamePool pool(d);
  std::string q = pool.fresh(cfg.dummy_name_prefix + "-rop");
  out.predicates.push_back(zero_arity(q));

  ActionDef copy = d.actions.front();
  copy.name = pool.fresh(copy.name + "-dmc-copy");
  copy.precondition.literals.push_back(nullary_literal(q, true));
  copy.precondition.literals.push_back(nullary_literal(q, false));
  out.actions.push_back(std::move(copy));
  add_requirement(out, ":negative-preconditions");
  return out;
}

DomainAst add_dummy_action_parameters(const DomainAst& d,
                                      const GeneratorConfig& cfg) {
  DomainAst out = d;
  NamePool pool(d);
  std::string var = pool.fresh_variable(cfg.dummy_name_prefix + "-p");
  for (ActionDef& a : out.actions) a.parameters.push_back(var);
  return out;
}

DomainAst add_disjunctive_dummy_precondition(const DomainAst& d,
                                             const GeneratorConfig& cfg) {
  DomainAst out = d;
  NamePool pool(d);
  std::string q = pool.fresh(cfg.dummy_name_prefix + "-rpr");
  out.predicates.push_back(zero_arity(q));
  for (ActionDef& a : out.actions) {
    if (a.precondition.or_dummy) {
      throw UnsupportedFeatureError(
          "precondition already carries a disjunction");
    }
    a.precondition.or_dummy = q;
  }
  add_requirement(out, ":disjunctive-preconditions");
  return out;
}

DomainAst add_dummy_effect(const DomainAst& d, const GeneratorConfig& cfg) {
  DomainAst out = d;
  NamePool pool(d);
  std::string q = pool.fresh(cfg.dummy_name_prefix + "-ref");
  out.predicates.push_back(zero_arity(q));
  // Polarity alternates by declaration index so both orientations occur
  // without a contradictory effect inside one action.
  for (std::size_t i = 0; i < out.actions.size(); ++i) {
    out.actions[i].effects.push_back(nullary_literal(q, i % 2 == 0));
  }
  return out;
}

DomainAst make_def_variant(const DomainAst& d, const GeneratorConfig& cfg) {
  auto [action_idx, effect_idx] = find_goal_achieving_action(d, cfg);
  DomainAst out = d;
  NamePool pool(d);
  ActionDef dup = d.actions[action_idx];
  dup.name = pool.fresh(dup.name + "-dmc-def");
  dup.effects.erase(dup.effects.begin() + static_cast<std::ptrdiff_t>(effect_idx));
  out.actions.push_back(std::move(dup));
  return out;
}

RpdDeadendResult make_rpd_deadend_variant(const DomainAst& d,
                                          const std::vector<ProblemAst>& problems,
                                          const GeneratorConfig& cfg) {
  if (d.actions.empty()) throw TooFewActionsError("domain has no actions");
  RpdDeadendResult result;
  result.domain = d;
  result.problems = problems;  // init never contains the marker
  result.degenerate = d.actions.size() < 2;

  NamePool pool(d, problems);
  std::string dead = pool.fresh("dead");
  result.domain.predicates.push_back(zero_arity(dead));
  result.domain.actions.front().effects.push_back(nullary_literal(dead, true));
  for (std::size_t i = 1; i < result.domain.actions.size(); ++i) {
    result.domain.actions[i].precondition.literals.push_back(
        nullary_literal(dead, false));
  }
  add_requirement(result.domain, ":negative-preconditions");
  return result;
}

DomainAst make_apd_variant(const DomainAst& d, const GeneratorConfig& cfg) {
  auto [action_idx, effect_idx] = find_goal_achieving_action(d, cfg);
  DomainAst out = d;
  NamePool pool(d);
  std::string ph_a = pool.fresh("ph-a");
  std::string ph_b = pool.fresh("ph-b");
  out.predicates.push_back(zero_arity(ph_a));
  out.predicates.push_back(zero_arity(ph_b));

  ActionDef base = d.actions[action_idx];
  base.effects.erase(base.effects.begin() + static_cast<std::ptrdiff_t>(effect_idx));

  ActionDef first = base;
  first.name = pool.fresh(base.name + "-dmc-apd1");
  first.effects.push_back(nullary_literal(ph_a, true));
  first.effects.push_back(nullary_literal(ph_b, false));

  ActionDef second = base;
  second.name = pool.fresh(base.name + "-dmc-apd2");
  second.effects.push_back(nullary_literal(ph_b, true));
  second.effects.push_back(nullary_literal(ph_a, false));

  out.actions.push_back(std::move(first));
  out.actions.push_back(std::move(second));
  return out;
}

DomainAst make_cop_variant(const DomainAst& d, const GeneratorConfig& cfg) {
  if (d.actions.size() < 2) {
    throw TooFewActionsError("composition needs at least two actions");
  }
  auto [a_idx, effect_idx] = find_goal_achieving_action(d, cfg);
  (void)effect_idx;
  std::size_t b_idx = a_idx == 0 ? 1 : a_idx - 1;
  const ActionDef& a = d.actions[a_idx];
  const ActionDef& b = d.actions[b_idx];

  DomainAst out = d;
  NamePool pool(d);
  ActionDef composed;
  composed.name = pool.fresh(a.name + "-" + b.name + "-dmc-cop");

  // Parameters merge by name: a variable shared by A and B denotes the same
  // object in the composition (cf. the gripper drop/pick worked example).
  composed.parameters = a.parameters;
  for (const std::string& v : b.parameters) {
    if (std::find(composed.parameters.begin(), composed.parameters.end(), v) ==
        composed.parameters.end()) {
      composed.parameters.push_back(v);
    }
  }

  composed.precondition.literals = a.precondition.literals;
  for (const Literal& l : b.precondition.literals) {
    if (std::find(composed.precondition.literals.begin(),
                  composed.precondition.literals.end(),
                  l) == composed.precondition.literals.end()) {
      composed.precondition.literals.push_back(l);
    }
  }

  // Sequential composition: A's effects first, conflicting B effects override.
  std::vector<Literal> effects = a.effects;
  for (const Literal& l : b.effects) {
    auto same_atom = [&](const Literal& other) {
      return other.predicate == l.predicate && other.arguments == l.arguments;
    };
    effects.erase(std::remove_if(effects.begin(), effects.end(), same_atom),
                  effects.end());
    effects.push_back(l);
  }
  auto goals = goal_predicates(cfg);
  effects.erase(std::remove_if(effects.begin(), effects.end(),
                               [&](const Literal& l) {
                                 return l.positive &&
                                        goals.count(l.predicate) != 0;
                               }),
                effects.end());
  composed.effects = std::move(effects);

  out.actions.push_back(std::move(composed));
  return out;
}

}  // namespace pddlmorph
