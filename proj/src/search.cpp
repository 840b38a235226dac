#include "pddlmorph/search.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "pddlmorph/errors.hpp"

namespace pddlmorph {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_state(std::size_t atom_count, const std::vector<int>& atoms) {
  Bits state((atom_count + 63) / 64, 0);
  for (int a : atoms) state[static_cast<std::size_t>(a) / 64] |= 1ull << (a % 64);
  return state;
}

bool test_bit(const Bits& state, int a) {
  return (state[static_cast<std::size_t>(a) / 64] >> (a % 64)) & 1u;
}

bool applicable(const Bits& state, const GroundAction& action) {
  for (int a : action.pre_pos) {
    if (!test_bit(state, a)) return false;
  }
  for (int a : action.pre_neg) {
    if (test_bit(state, a)) return false;
  }
  return true;
}

Bits apply_action(const Bits& state, const GroundAction& action) {
  Bits next = state;
  for (int a : action.del) next[static_cast<std::size_t>(a) / 64] &= ~(1ull << (a % 64));
  for (int a : action.add) next[static_cast<std::size_t>(a) / 64] |= 1ull << (a % 64);
  return next;
}

bool satisfies_goal(const Bits& state, const GroundTask& task) {
  if (task.static_goal_violated) return false;
  for (int a : task.goal) {
    if (!test_bit(state, a)) return false;
  }
  return true;
}

std::vector<std::string> state_atoms(const Bits& state, const GroundTask& task) {
  std::vector<std::string> names;
  for (std::size_t a = 0; a < task.atom_names.size(); ++a) {
    if (test_bit(state, static_cast<int>(a))) names.push_back(task.atom_names[a]);
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::uint64_t hash_plan_set(const std::set<std::vector<std::string>>& plans) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  };
  for (const std::vector<std::string>& plan : plans) {
    for (const std::string& step : plan) {
      for (char c : step) mix(c);
      mix(';');
    }
    mix('\n');
  }
  return h;
}

// Splits "(name arg1 arg2)" into tokens.
std::vector<std::string> tokenize_ground_name(const std::string& name) {
  std::string inner = name.substr(1, name.size() - 2);
  std::istringstream in(inner);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

bool has_prefix(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

Exploration explore(const GroundTask& task, std::size_t plan_bound,
                    const SearchOptions& options) {
  Exploration out;
  const std::size_t atom_count = task.atom_names.size();
  Bits init = make_state(atom_count, task.init);

  std::map<Bits, std::size_t> ids;
  std::vector<Bits> states;
  std::vector<std::vector<std::size_t>> successors;  // forward edges
  std::deque<std::pair<std::size_t, std::size_t>> frontier;  // (id, depth)
  std::vector<std::size_t> depth;

  auto intern = [&](const Bits& s) -> std::pair<std::size_t, bool> {
    auto [it, inserted] = ids.emplace(s, states.size());
    if (inserted) {
      if (states.size() >= options.state_cap) {
        throw StateCapExceededError("more than " +
                                    std::to_string(options.state_cap) +
                                    " reachable states");
      }
      states.push_back(s);
      successors.emplace_back();
      depth.push_back(0);
    }
    return {it->second, inserted};
  };

  intern(init);
  frontier.emplace_back(0, 0);
  std::optional<std::size_t> shortest;
  std::vector<bool> is_goal_state;

  while (!frontier.empty()) {
    auto [id, d] = frontier.front();
    frontier.pop_front();
    if (satisfies_goal(states[id], task) && !shortest) shortest = d;
    for (const GroundAction& action : task.actions) {
      if (!applicable(states[id], action)) continue;
      out.applicable_actions.insert(action.name);
      Bits next = apply_action(states[id], action);
      auto [next_id, inserted] = intern(next);
      successors[id].push_back(next_id);
      if (inserted) {
        depth[next_id] = d + 1;
        frontier.emplace_back(next_id, d + 1);
      }
    }
  }

  out.report.reachable_state_count = states.size();
  out.report.solvable = shortest.has_value();
  out.report.shortest_plan_length = shortest;

  // Backward reachability from goal states over the reachable sub-graph.
  std::vector<std::vector<std::size_t>> predecessors(states.size());
  for (std::size_t id = 0; id < states.size(); ++id) {
    for (std::size_t succ : successors[id]) predecessors[succ].push_back(id);
  }
  std::vector<bool> can_reach_goal(states.size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t id = 0; id < states.size(); ++id) {
    if (satisfies_goal(states[id], task)) {
      can_reach_goal[id] = true;
      queue.push_back(id);
    }
  }
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    for (std::size_t pred : predecessors[id]) {
      if (!can_reach_goal[pred]) {
        can_reach_goal[pred] = true;
        queue.push_back(pred);
      }
    }
  }
  for (std::size_t id = 0; id < states.size(); ++id) {
    if (!can_reach_goal[id]) ++out.report.dead_end_count;
  }

  for (const Bits& s : states) out.states.insert(state_atoms(s, task));

  // Deterministic plan enumeration: DFS over ground actions in index order.
  std::uint64_t visited_nodes = 0;
  std::vector<std::string> stack;
  auto enumerate = [&](auto&& self, const Bits& state, std::size_t remaining) -> void {
    if (++visited_nodes > options.enumeration_cap) {
      throw StateCapExceededError("plan enumeration exceeded " +
                                  std::to_string(options.enumeration_cap) +
                                  " nodes");
    }
    if (satisfies_goal(state, task)) out.plans.insert(stack);
    if (remaining == 0) return;
    for (const GroundAction& action : task.actions) {
      if (!applicable(state, action)) continue;
      stack.push_back(action.name);
      self(self, apply_action(state, action), remaining - 1);
      stack.pop_back();
    }
  };
  enumerate(enumerate, init, plan_bound);
  out.report.plan_set_hash = hash_plan_set(out.plans);
  return out;
}

bool validate_plan(const GroundTask& task,
                   const std::vector<std::string>& plan) {
  Bits state = make_state(task.atom_names.size(), task.init);
  for (const std::string& name : plan) {
    bool fired = false;
    for (const GroundAction& action : task.actions) {
      if (action.name == name && applicable(state, action)) {
        state = apply_action(state, action);
        fired = true;
        break;
      }
    }
    if (!fired) return false;
  }
  return satisfies_goal(state, task);
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Equivalent: return "equivalent";
    case Verdict::SolvabilityPreserving: return "solvability-preserving";
    case Verdict::Deviating: return "deviating";
  }
  return "?";
}

namespace {

// Drops atoms whose predicate carries the prefix; removes prefixed arguments.
std::optional<std::string> project_ground(const std::string& name,
                                          const std::string& prefix) {
  std::vector<std::string> tokens = tokenize_ground_name(name);
  if (tokens.empty() || has_prefix(tokens[0], prefix)) return std::nullopt;
  std::string out = "(" + tokens[0];
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (!has_prefix(tokens[i], prefix)) out += " " + tokens[i];
  }
  out += ")";
  return out;
}

std::set<std::vector<std::string>> project_set(
    const std::set<std::vector<std::string>>& sets, const std::string& prefix) {
  std::set<std::vector<std::string>> out;
  for (const std::vector<std::string>& items : sets) {
    std::vector<std::string> projected;
    for (const std::string& item : items) {
      if (auto p = project_ground(item, prefix)) projected.push_back(*p);
    }
    std::sort(projected.begin(), projected.end());
    out.insert(std::move(projected));
  }
  return out;
}

std::set<std::vector<std::string>> project_plans(
    const std::set<std::vector<std::string>>& plans, const std::string& prefix) {
  std::set<std::vector<std::string>> out;
  for (const std::vector<std::string>& plan : plans) {
    std::vector<std::string> projected;
    for (const std::string& step : plan) {
      if (auto p = project_ground(step, prefix)) projected.push_back(*p);
    }
    out.insert(std::move(projected));  // order kept: plans are sequences
  }
  return out;
}

template <typename Set>
std::string first_difference(const Set& a, const Set& b) {
  for (const auto& item : b) {
    if (a.count(item) == 0) {
      std::string joined;
      for (const auto& part : item) joined += (joined.empty() ? "" : " ") + part;
      return joined.empty() ? "<empty>" : joined;
    }
  }
  for (const auto& item : a) {
    if (b.count(item) == 0) {
      std::string joined;
      for (const auto& part : item) joined += (joined.empty() ? "" : " ") + part;
      return joined.empty() ? "<empty>" : joined;
    }
  }
  return "";
}

}  // namespace

ComparisonVerdict compare_tasks(const GroundTask& baseline,
                                const GroundTask& candidate,
                                const std::string& dummy_prefix,
                                std::size_t fallback_bound,
                                const SearchOptions& options) {
  Exploration base = explore(baseline, 0, options);
  std::size_t bound = base.report.shortest_plan_length
                          ? *base.report.shortest_plan_length + 2
                          : fallback_bound;
  base = explore(baseline, bound, options);
  Exploration cand = explore(candidate, bound, options);

  ComparisonVerdict result;
  result.baseline = base.report;
  result.candidate = cand.report;

  auto base_states = project_set(base.states, dummy_prefix);
  auto cand_states = project_set(cand.states, dummy_prefix);
  auto base_plans = project_plans(base.plans, dummy_prefix);
  auto cand_plans = project_plans(cand.plans, dummy_prefix);

  if (base_states == cand_states && base_plans == cand_plans) {
    result.verdict = Verdict::Equivalent;
    result.witness = "projected reachable state sets and plan sets identical";
    return result;
  }
  if (base.report.solvable == cand.report.solvable &&
      (!base.report.solvable ||
       base.report.shortest_plan_length == cand.report.shortest_plan_length)) {
    result.verdict = Verdict::SolvabilityPreserving;
    if (base_states != cand_states) {
      result.witness = "state sets differ: " +
                       first_difference(base_states, cand_states);
    } else {
      result.witness = "plan sets differ: " +
                       first_difference(base_plans, cand_plans);
    }
    return result;
  }
  result.verdict = Verdict::Deviating;
  if (base.report.solvable != cand.report.solvable) {
    result.witness = std::string("solvability changed: baseline ") +
                     (base.report.solvable ? "solvable" : "unsolvable") +
                     ", candidate " +
                     (cand.report.solvable ? "solvable" : "unsolvable");
  } else {
    result.witness =
        "shortest plan length changed: " +
        std::to_string(*base.report.shortest_plan_length) + " vs " +
        std::to_string(*cand.report.shortest_plan_length);
  }
  return result;
}

}  // namespace pddlmorph
