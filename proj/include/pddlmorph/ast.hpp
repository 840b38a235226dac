#ifndef PDDLMORPH_AST_HPP
#define PDDLMORPH_AST_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pddlmorph {

// Order-preserving STRIPS-level PDDL 1.2 representation. List order is the
// experimental variable, so nothing here normalises or sorts.

struct PredicateDecl {
  std::string name;
  std::vector<std::string> parameters;  // "?x" style, unique within the decl

  std::size_t arity() const { return parameters.size(); }
  bool operator==(const PredicateDecl&) const = default;
};

struct Literal {
  bool positive = true;
  std::string predicate;
  std::vector<std::string> arguments;  // variables ("?x") or constants

  bool operator==(const Literal&) const = default;
};

// A conjunction of literals. When `or_dummy` is set the precondition is the
// disjunction (or (and <literals>) (<or_dummy>)) with a zero-arity second
// disjunct; this is the only disjunctive shape the subset admits.
struct PreconditionExpr {
  std::vector<Literal> literals;
  std::optional<std::string> or_dummy;

  bool operator==(const PreconditionExpr&) const = default;
};

struct ActionDef {
  std::string name;
  std::vector<std::string> parameters;
  PreconditionExpr precondition;
  std::vector<Literal> effects;

  bool operator==(const ActionDef&) const = default;
};

struct DomainAst {
  std::string name;
  std::vector<std::string> requirements;  // ":strips" etc., source order
  std::vector<PredicateDecl> predicates;
  std::vector<ActionDef> actions;

  bool operator==(const DomainAst&) const = default;
};

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> arguments;

  bool operator==(const GroundAtom&) const = default;
  auto operator<=>(const GroundAtom&) const = default;
};

struct ProblemAst {
  std::string name;
  std::string domain_name;
  std::vector<std::string> objects;
  std::vector<GroundAtom> init;
  std::vector<GroundAtom> goal;  // conjunctive, possibly empty

  bool operator==(const ProblemAst&) const = default;
};

inline bool structural_equal(const DomainAst& a, const DomainAst& b) {
  return a == b;
}
inline bool structural_equal(const ProblemAst& a, const ProblemAst& b) {
  return a == b;
}

}  // namespace pddlmorph

#endif
