#ifndef PDDLMORPH_PARSER_HPP
#define PDDLMORPH_PARSER_HPP

#include <string>
#include <string_view>

#include "pddlmorph/ast.hpp"

namespace pddlmorph {

// Parses a STRIPS-level PDDL 1.2 domain. Identifiers are case-folded to
// lower case; comments and whitespace are discarded; element order is kept.
// Throws SyntaxError, UnsupportedFeatureError, ArityMismatchError,
// CrossRefError.
DomainAst parse_domain(std::string_view text);

// Parses a problem file and cross-checks it against its domain.
// Additionally throws CrossRefError when init/goal reference undeclared
// objects or predicates.
ProblemAst parse_problem(std::string_view text, const DomainAst& domain);

DomainAst parse_domain_file(const std::string& path);
ProblemAst parse_problem_file(const std::string& path, const DomainAst& domain);

}  // namespace pddlmorph

#endif
