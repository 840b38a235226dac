#include "pddlmorph/printer.hpp"

#include <sstream>

namespace pddlmorph {

namespace {

std::string print_sexp_atom(const std::string& predicate,
                            const std::vector<std::string>& args) {
  std::string out = "(" + predicate;
  for (const std::string& arg : args) {
    out += " ";
    out += arg;
  }
  out += ")";
  return out;
}

std::string print_conjunction(const std::vector<Literal>& literals) {
  std::string out = "(and";
  for (const Literal& lit : literals) {
    out += " ";
    out += print_literal(lit);
  }
  out += ")";
  return out;
}

}  // namespace

std::string print_literal(const Literal& literal) {
  std::string atom = print_sexp_atom(literal.predicate, literal.arguments);
  return literal.positive ? atom : "(not " + atom + ")";
}

std::string print_atom(const GroundAtom& atom) {
  return print_sexp_atom(atom.predicate, atom.arguments);
}

std::string print_domain(const DomainAst& domain) {
  std::ostringstream out;
  out << "(define (domain " << domain.name << ")\n";
  if (!domain.requirements.empty()) {
    out << "  (:requirements";
    for (const std::string& flag : domain.requirements) out << " " << flag;
    out << ")\n";
  }
  out << "  (:predicates";
  for (const PredicateDecl& pred : domain.predicates) {
    out << "\n    " << print_sexp_atom(pred.name, pred.parameters);
  }
  out << ")\n";
  for (const ActionDef& action : domain.actions) {
    out << "  (:action " << action.name << "\n";
    out << "    :parameters (";
    for (std::size_t i = 0; i < action.parameters.size(); ++i) {
      if (i != 0) out << " ";
      out << action.parameters[i];
    }
    out << ")\n";
    out << "    :precondition ";
    std::string conj = print_conjunction(action.precondition.literals);
    if (action.precondition.or_dummy) {
      out << "(or " << conj << " (" << *action.precondition.or_dummy << "))";
    } else {
      out << conj;
    }
    out << "\n";
    out << "    :effect " << print_conjunction(action.effects) << ")\n";
  }
  out << ")\n";
  return out.str();
}

std::string print_problem(const ProblemAst& problem) {
  std::ostringstream out;
  out << "(define (problem " << problem.name << ")\n";
  out << "  (:domain " << problem.domain_name << ")\n";
  out << "  (:objects";
  for (const std::string& obj : problem.objects) out << " " << obj;
  out << ")\n";
  out << "  (:init";
  for (const GroundAtom& atom : problem.init) {
    out << "\n    " << print_atom(atom);
  }
  out << ")\n";
  out << "  (:goal (and";
  for (const GroundAtom& atom : problem.goal) {
    out << " " << print_atom(atom);
  }
  out << ")))\n";
  return out.str();
}

}  // namespace pddlmorph
