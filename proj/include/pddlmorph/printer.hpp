#ifndef PDDLMORPH_PRINTER_HPP
#define PDDLMORPH_PRINTER_HPP

#include <string>

#include "pddlmorph/ast.hpp"

namespace pddlmorph {

// Deterministic byte-for-byte printing; element order in the text equals AST
// order. Output reparses to a structurally identical AST.
std::string print_domain(const DomainAst& domain);
std::string print_problem(const ProblemAst& problem);

// Canonical inline form of a literal / ground atom, used both by the printer
// and as the alphabetical sort key for within-action reorderings.
std::string print_literal(const Literal& literal);
std::string print_atom(const GroundAtom& atom);

}  // namespace pddlmorph

#endif
