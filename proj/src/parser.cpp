#include "pddlmorph/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pddlmorph/errors.hpp"

namespace pddlmorph {
namespace {

struct Sexp {
  bool is_atom = false;
  std::string atom;          // lower-cased
  std::vector<Sexp> items;   // when !is_atom
  int line = 0;
  int column = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Sexp read_document() {
    Sexp top = read_sexp();
    skip_trivia();
    if (pos_ != text_.size()) {
      fail("trailing content after top-level form");
    }
    return top;
  }

 private:
  Sexp read_sexp() {
    skip_trivia();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    Sexp out;
    out.line = line_;
    out.column = column_;
    char c = text_[pos_];
    if (c == '(') {
      advance();
      for (;;) {
        skip_trivia();
        if (pos_ >= text_.size()) fail("unclosed '('");
        if (text_[pos_] == ')') {
          advance();
          return out;
        }
        out.items.push_back(read_sexp());
      }
    }
    if (c == ')') fail("unexpected ')'");
    out.is_atom = true;
    while (pos_ < text_.size() && !is_delim(text_[pos_])) {
      out.atom.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_]))));
      advance();
    }
    return out;
  }

  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == ';' ||
           std::isspace(static_cast<unsigned char>(c)) != 0;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(line_, column_, what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

[[noreturn]] void syntax_fail(const Sexp& at, const std::string& what) {
  throw SyntaxError(at.line, at.column, what);
}

bool is_variable(const std::string& s) { return !s.empty() && s[0] == '?'; }

const std::set<std::string> kAllowedRequirements = {
    ":strips", ":negative-preconditions", ":disjunctive-preconditions"};

std::vector<std::string> parse_parameter_list(const Sexp& list) {
  if (list.is_atom) syntax_fail(list, "expected parameter list");
  std::vector<std::string> params;
  std::unordered_set<std::string> seen;
  for (const Sexp& item : list.items) {
    if (!item.is_atom) syntax_fail(item, "expected variable name");
    if (item.atom == "-") {
      throw UnsupportedFeatureError("typed parameters (':typing')");
    }
    if (!is_variable(item.atom)) {
      syntax_fail(item, "parameters must be '?'-variables, got '" + item.atom + "'");
    }
    if (!seen.insert(item.atom).second) {
      throw CrossRefError("duplicate parameter '" + item.atom + "'");
    }
    params.push_back(item.atom);
  }
  return params;
}

Literal parse_atom_literal(const Sexp& form, bool positive) {
  if (form.is_atom || form.items.empty() || !form.items[0].is_atom) {
    syntax_fail(form, "expected atom '(pred args...)'");
  }
  Literal lit;
  lit.positive = positive;
  lit.predicate = form.items[0].atom;
  for (std::size_t i = 1; i < form.items.size(); ++i) {
    if (!form.items[i].is_atom) syntax_fail(form.items[i], "expected term");
    if (form.items[i].atom == "-") {
      throw UnsupportedFeatureError("typed terms (':typing')");
    }
    lit.arguments.push_back(form.items[i].atom);
  }
  return lit;
}

// Accepts: atom | (not atom) | (and literal*)
std::vector<Literal> parse_conjunction(const Sexp& form) {
  std::vector<Literal> out;
  if (form.is_atom) syntax_fail(form, "expected formula");
  if (!form.items.empty() && form.items[0].is_atom && form.items[0].atom == "and") {
    for (std::size_t i = 1; i < form.items.size(); ++i) {
      const Sexp& item = form.items[i];
      if (!item.is_atom && !item.items.empty() && item.items[0].is_atom &&
          item.items[0].atom == "not") {
        if (item.items.size() != 2) syntax_fail(item, "'not' takes one atom");
        out.push_back(parse_atom_literal(item.items[1], false));
      } else {
        out.push_back(parse_atom_literal(item, true));
      }
    }
    return out;
  }
  if (!form.items.empty() && form.items[0].is_atom && form.items[0].atom == "not") {
    if (form.items.size() != 2) syntax_fail(form, "'not' takes one atom");
    out.push_back(parse_atom_literal(form.items[1], false));
    return out;
  }
  out.push_back(parse_atom_literal(form, true));
  return out;
}

const std::set<std::string> kRejectedConnectives = {
    "forall", "exists", "when", "imply", "increase", "decrease", "assign",
    "oneof", "either", "="};

void reject_unsupported_connective(const Sexp& form) {
  if (!form.is_atom && !form.items.empty() && form.items[0].is_atom &&
      kRejectedConnectives.count(form.items[0].atom) != 0) {
    throw UnsupportedFeatureError("'" + form.items[0].atom + "' construct");
  }
}

void reject_unsupported_recursively(const Sexp& form) {
  reject_unsupported_connective(form);
  for (const Sexp& item : form.items) reject_unsupported_recursively(item);
}

PreconditionExpr parse_precondition(const Sexp& form, bool allow_negative,
                                    bool allow_disjunctive) {
  reject_unsupported_recursively(form);
  PreconditionExpr pre;
  if (!form.is_atom && !form.items.empty() && form.items[0].is_atom &&
      form.items[0].atom == "or") {
    if (!allow_disjunctive) {
      throw UnsupportedFeatureError(
          "disjunctive precondition without ':disjunctive-preconditions'");
    }
    // Only (or <conjunction> <zero-arity atom>) is representable.
    if (form.items.size() != 3) {
      throw UnsupportedFeatureError("general 'or' precondition shape");
    }
    const Sexp& dummy = form.items[2];
    if (dummy.is_atom || dummy.items.size() != 1 || !dummy.items[0].is_atom) {
      throw UnsupportedFeatureError(
          "'or' second disjunct must be a zero-arity atom");
    }
    pre.literals = parse_conjunction(form.items[1]);
    pre.or_dummy = dummy.items[0].atom;
  } else {
    pre.literals = parse_conjunction(form);
  }
  if (!allow_negative) {
    for (const Literal& lit : pre.literals) {
      if (!lit.positive) {
        throw UnsupportedFeatureError(
            "negative precondition without ':negative-preconditions'");
      }
    }
  }
  return pre;
}

void check_action_semantics(const DomainAst& domain, const ActionDef& action) {
  std::unordered_map<std::string, std::size_t> arity;
  for (const PredicateDecl& p : domain.predicates) arity[p.name] = p.arity();
  std::unordered_set<std::string> bound(action.parameters.begin(),
                                        action.parameters.end());
  auto check_literal = [&](const Literal& lit) {
    auto it = arity.find(lit.predicate);
    if (it == arity.end()) {
      throw CrossRefError("action '" + action.name +
                          "' uses undeclared predicate '" + lit.predicate + "'");
    }
    if (lit.arguments.size() != it->second) {
      throw ArityMismatchError("'" + lit.predicate + "' declared with arity " +
                               std::to_string(it->second) + ", used with " +
                               std::to_string(lit.arguments.size()) +
                               " in action '" + action.name + "'");
    }
    for (const std::string& arg : lit.arguments) {
      if (is_variable(arg) && bound.count(arg) == 0) {
        throw CrossRefError("unbound variable '" + arg + "' in action '" +
                            action.name + "'");
      }
    }
  };
  for (const Literal& lit : action.precondition.literals) check_literal(lit);
  if (action.precondition.or_dummy) {
    auto it = arity.find(*action.precondition.or_dummy);
    if (it == arity.end() || it->second != 0) {
      throw CrossRefError("disjunct '" + *action.precondition.or_dummy +
                          "' is not a declared zero-arity predicate");
    }
  }
  for (const Literal& lit : action.effects) check_literal(lit);
}

}  // namespace

DomainAst parse_domain(std::string_view text) {
  Sexp top = Lexer(text).read_document();
  if (top.is_atom || top.items.size() < 2 || !top.items[0].is_atom ||
      top.items[0].atom != "define") {
    syntax_fail(top, "expected '(define (domain ...) ...)'");
  }
  const Sexp& head = top.items[1];
  if (head.is_atom || head.items.size() != 2 || !head.items[0].is_atom ||
      head.items[0].atom != "domain" || !head.items[1].is_atom) {
    syntax_fail(head, "expected '(domain <name>)'");
  }

  DomainAst domain;
  domain.name = head.items[1].atom;

  bool allow_negative = false;
  bool allow_disjunctive = false;

  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const Sexp& section = top.items[i];
    if (section.is_atom || section.items.empty() || !section.items[0].is_atom) {
      syntax_fail(section, "expected domain section");
    }
    const std::string& tag = section.items[0].atom;
    if (tag == ":requirements") {
      for (std::size_t j = 1; j < section.items.size(); ++j) {
        if (!section.items[j].is_atom) syntax_fail(section.items[j], "expected flag");
        const std::string& flag = section.items[j].atom;
        if (kAllowedRequirements.count(flag) == 0) {
          throw UnsupportedFeatureError("requirement '" + flag + "'");
        }
        domain.requirements.push_back(flag);
        if (flag == ":negative-preconditions") allow_negative = true;
        if (flag == ":disjunctive-preconditions") allow_disjunctive = true;
      }
    } else if (tag == ":predicates") {
      for (std::size_t j = 1; j < section.items.size(); ++j) {
        const Sexp& decl = section.items[j];
        if (decl.is_atom || decl.items.empty() || !decl.items[0].is_atom) {
          syntax_fail(decl, "expected predicate declaration");
        }
        PredicateDecl pred;
        pred.name = decl.items[0].atom;
        Sexp params;
        params.items.assign(decl.items.begin() + 1, decl.items.end());
        pred.parameters = parse_parameter_list(params);
        for (const PredicateDecl& existing : domain.predicates) {
          if (existing.name == pred.name) {
            throw CrossRefError("duplicate predicate '" + pred.name + "'");
          }
        }
        domain.predicates.push_back(std::move(pred));
      }
    } else if (tag == ":action") {
      if (section.items.size() < 2 || !section.items[1].is_atom) {
        syntax_fail(section, "expected action name");
      }
      ActionDef action;
      action.name = section.items[1].atom;
      for (std::size_t j = 2; j + 1 < section.items.size(); j += 2) {
        const Sexp& key = section.items[j];
        const Sexp& value = section.items[j + 1];
        if (!key.is_atom) syntax_fail(key, "expected ':parameters'/':precondition'/':effect'");
        if (key.atom == ":parameters") {
          action.parameters = parse_parameter_list(value);
        } else if (key.atom == ":precondition") {
          action.precondition =
              parse_precondition(value, allow_negative, allow_disjunctive);
        } else if (key.atom == ":effect") {
          reject_unsupported_recursively(value);
          action.effects = parse_conjunction(value);
        } else {
          throw UnsupportedFeatureError("action keyword '" + key.atom + "'");
        }
      }
      for (const ActionDef& existing : domain.actions) {
        if (existing.name == action.name) {
          throw CrossRefError("duplicate action '" + action.name + "'");
        }
      }
      domain.actions.push_back(std::move(action));
    } else if (tag == ":types" || tag == ":constants" || tag == ":functions" ||
               tag == ":axiom" || tag == ":derived" || tag == ":timeless") {
      throw UnsupportedFeatureError("domain section '" + tag + "'");
    } else {
      syntax_fail(section, "unknown domain section '" + tag + "'");
    }
  }

  for (const ActionDef& action : domain.actions) {
    check_action_semantics(domain, action);
  }
  return domain;
}

ProblemAst parse_problem(std::string_view text, const DomainAst& dom) {
  Sexp top = Lexer(text).read_document();
  if (top.is_atom || top.items.size() < 2 || !top.items[0].is_atom ||
      top.items[0].atom != "define") {
    syntax_fail(top, "expected '(define (problem ...) ...)'");
  }
  const Sexp& head = top.items[1];
  if (head.is_atom || head.items.size() != 2 || !head.items[0].is_atom ||
      head.items[0].atom != "problem" || !head.items[1].is_atom) {
    syntax_fail(head, "expected '(problem <name>)'");
  }

  ProblemAst problem;
  problem.name = head.items[1].atom;

  std::unordered_map<std::string, std::size_t> arity;
  for (const PredicateDecl& p : dom.predicates) arity[p.name] = p.arity();

  auto parse_ground_atom = [&](const Sexp& form) {
    reject_unsupported_recursively(form);
    Literal lit = parse_atom_literal(form, true);
    auto it = arity.find(lit.predicate);
    if (it == arity.end()) {
      throw CrossRefError("undeclared predicate '" + lit.predicate + "'");
    }
    if (lit.arguments.size() != it->second) {
      throw ArityMismatchError("'" + lit.predicate + "' declared with arity " +
                               std::to_string(it->second) + ", used with " +
                               std::to_string(lit.arguments.size()));
    }
    GroundAtom atom{lit.predicate, lit.arguments};
    for (const std::string& arg : atom.arguments) {
      if (is_variable(arg)) {
        throw CrossRefError("variable '" + arg + "' in ground atom");
      }
      if (std::find(problem.objects.begin(), problem.objects.end(), arg) ==
          problem.objects.end()) {
        throw CrossRefError("undeclared object '" + arg + "'");
      }
    }
    return atom;
  };

  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const Sexp& section = top.items[i];
    if (section.is_atom || section.items.empty() || !section.items[0].is_atom) {
      syntax_fail(section, "expected problem section");
    }
    const std::string& tag = section.items[0].atom;
    if (tag == ":domain") {
      if (section.items.size() != 2 || !section.items[1].is_atom) {
        syntax_fail(section, "expected '(:domain <name>)'");
      }
      problem.domain_name = section.items[1].atom;
      if (problem.domain_name != dom.name) {
        throw CrossRefError("problem references domain '" + problem.domain_name +
                            "', parsed domain is '" + dom.name + "'");
      }
    } else if (tag == ":objects") {
      std::unordered_set<std::string> seen;
      for (std::size_t j = 1; j < section.items.size(); ++j) {
        if (!section.items[j].is_atom) syntax_fail(section.items[j], "expected object");
        const std::string& obj = section.items[j].atom;
        if (obj == "-") throw UnsupportedFeatureError("typed objects (':typing')");
        if (!seen.insert(obj).second) {
          throw CrossRefError("duplicate object '" + obj + "'");
        }
        problem.objects.push_back(obj);
      }
    } else if (tag == ":init") {
      for (std::size_t j = 1; j < section.items.size(); ++j) {
        problem.init.push_back(parse_ground_atom(section.items[j]));
      }
    } else if (tag == ":goal") {
      if (section.items.size() != 2) syntax_fail(section, "expected one goal formula");
      reject_unsupported_recursively(section.items[1]);
      std::vector<Literal> lits = parse_conjunction(section.items[1]);
      for (const Literal& lit : lits) {
        if (!lit.positive) {
          throw UnsupportedFeatureError("negative goal literal");
        }
        Sexp atom_form;  // re-check through the ground-atom path
        atom_form.items.emplace_back();
        atom_form.items.back().is_atom = true;
        atom_form.items.back().atom = lit.predicate;
        for (const std::string& arg : lit.arguments) {
          atom_form.items.emplace_back();
          atom_form.items.back().is_atom = true;
          atom_form.items.back().atom = arg;
        }
        problem.goal.push_back(parse_ground_atom(atom_form));
      }
    } else {
      throw UnsupportedFeatureError("problem section '" + tag + "'");
    }
  }
  return problem;
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}
}  // namespace

DomainAst parse_domain_file(const std::string& path) {
  return parse_domain(slurp(path));
}

ProblemAst parse_problem_file(const std::string& path, const DomainAst& domain) {
  return parse_problem(slurp(path), domain);
}

}  // namespace pddlmorph
