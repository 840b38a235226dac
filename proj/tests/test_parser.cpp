#include <doctest.h>

#include <algorithm>
#include <random>

#include "pddlmorph/errors.hpp"
#include "pddlmorph/parser.hpp"
#include "pddlmorph/printer.hpp"

using namespace pddlmorph;

namespace {
const std::string kDomainPath = std::string(FIXTURE_DIR) + "/gripper.pddl";
const std::string kProblemPath = std::string(FIXTURE_DIR) + "/gripper-p1.pddl";
}  // namespace

TEST_CASE("gripper fixture parses in source order") {
  DomainAst d = parse_domain_file(kDomainPath);
  CHECK(d.name == "gripper");
  REQUIRE(d.predicates.size() == 7);
  CHECK(d.predicates[0].name == "room");
  CHECK(d.predicates[3].name == "at-robby");
  CHECK(d.predicates[6].name == "carry");
  REQUIRE(d.actions.size() == 3);
  CHECK(d.actions[0].name == "move");
  CHECK(d.actions[1].name == "pick");
  CHECK(d.actions[2].name == "drop");
  CHECK(d.actions[1].precondition.literals.size() == 6);
  CHECK(d.actions[0].effects.size() == 2);
  CHECK_FALSE(d.actions[0].effects[1].positive);
}

TEST_CASE("degenerate well-formed domain") {
  DomainAst d = parse_domain("(define (domain d) (:predicates (p)) )");
  CHECK(d.name == "d");
  CHECK(d.predicates.size() == 1);
  CHECK(d.actions.empty());
}

TEST_CASE("constructs outside the subset are rejected") {
  std::string base = "(define (domain d) (:predicates (p ?x))";
  CHECK_THROWS_AS(
      parse_domain(base + "(:action a :parameters (?x) :precondition (p ?x)"
                          " :effect (forall (?y) (p ?y))))"),
      UnsupportedFeatureError);
  CHECK_THROWS_AS(parse_domain("(define (domain d) (:types block))"),
                  UnsupportedFeatureError);
  CHECK_THROWS_AS(parse_domain("(define (domain d) (:requirements :adl))"),
                  UnsupportedFeatureError);
  // negative precondition without the flag
  CHECK_THROWS_AS(
      parse_domain(base + "(:action a :parameters (?x)"
                          " :precondition (not (p ?x)) :effect (p ?x)))"),
      UnsupportedFeatureError);
}

TEST_CASE("semantic validation") {
  CHECK_THROWS_AS(
      parse_domain("(define (domain d) (:predicates (p ?x))"
                   "(:action a :parameters (?x) :precondition (p) :effect (p ?x)))"),
      ArityMismatchError);
  CHECK_THROWS_AS(
      parse_domain("(define (domain d) (:predicates (p ?x))"
                   "(:action a :parameters (?x) :precondition (q ?x) :effect (p ?x)))"),
      CrossRefError);
  CHECK_THROWS_AS(
      parse_domain("(define (domain d) (:predicates (p ?x))"
                   "(:action a :parameters (?x) :precondition (p ?y) :effect (p ?x)))"),
      CrossRefError);
  CHECK_THROWS_AS(parse_domain("(define (domain d) (:predicates (p) (p)))"),
                  CrossRefError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_domain("(define (domain d)\n  (:predicates (p))");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("problem fixture parses and cross-checks") {
  DomainAst d = parse_domain_file(kDomainPath);
  ProblemAst p = parse_problem_file(kProblemPath, d);
  CHECK(p.objects.size() == 4);
  CHECK(p.objects[0] == "rooma");  // case-folded
  CHECK(p.init.size() == 7);
  REQUIRE(p.goal.size() == 1);
  CHECK(p.goal[0] == GroundAtom{"at", {"ball1", "roomb"}});

  CHECK_THROWS_AS(parse_problem("(define (problem x) (:domain gripper)"
                                "(:objects a) (:init) (:goal (at ball9 a)))",
                                d),
                  CrossRefError);
  // empty goal is a trivially satisfied conjunction
  ProblemAst empty_goal = parse_problem(
      "(define (problem x) (:domain gripper) (:objects a) (:init (room a))"
      " (:goal (and)))",
      d);
  CHECK(empty_goal.goal.empty());
}

TEST_CASE("identifier case-insensitivity") {
  DomainAst lower = parse_domain_file(kDomainPath);
  std::string text = "(DEFINE (Domain GRIPPER)\n(:requirements :STRIPS)\n"
                     "(:predicates (ROOM ?R) (ball ?b) (gripper ?g) (AT-robby ?r)"
                     " (at ?b ?r) (free ?g) (carry ?o ?g))\n"
                     "(:action MOVE :parameters (?FROM ?TO)"
                     " :precondition (and (room ?from) (room ?to) (at-robby ?from))"
                     " :effect (and (at-robby ?to) (not (at-robby ?from))))"
                     "(:action pick :parameters (?obj ?room ?gripper)"
                     " :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)"
                     " (at ?obj ?room) (at-robby ?room) (free ?gripper))"
                     " :effect (and (carry ?obj ?gripper) (not (at ?obj ?room))"
                     " (not (free ?gripper))))"
                     "(:action drop :parameters (?obj ?room ?gripper)"
                     " :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)"
                     " (carry ?obj ?gripper) (at-robby ?room))"
                     " :effect (and (at ?obj ?room) (free ?gripper)"
                     " (not (carry ?obj ?gripper)))))";
  CHECK(structural_equal(lower, parse_domain(text)));
}

TEST_CASE("print/parse round-trip is a fixpoint") {
  DomainAst d = parse_domain_file(kDomainPath);
  CHECK(structural_equal(parse_domain(print_domain(d)), d));
  ProblemAst p = parse_problem_file(kProblemPath, d);
  CHECK(structural_equal(parse_problem(print_problem(p), d), p));
  // printing is deterministic byte for byte
  CHECK(print_domain(d) == print_domain(parse_domain(print_domain(d))));
}

TEST_CASE("round-trip holds under random permutations") {
  DomainAst base = parse_domain_file(kDomainPath);
  std::mt19937 rng(20250826);
  for (int i = 0; i < 200; ++i) {
    DomainAst d = base;
    std::shuffle(d.predicates.begin(), d.predicates.end(), rng);
    std::shuffle(d.actions.begin(), d.actions.end(), rng);
    for (ActionDef& a : d.actions) {
      std::shuffle(a.precondition.literals.begin(),
                   a.precondition.literals.end(), rng);
      std::shuffle(a.effects.begin(), a.effects.end(), rng);
    }
    CHECK(structural_equal(parse_domain(print_domain(d)), d));
  }
}

TEST_CASE("order permutations change exactly the permuted block") {
  DomainAst d = parse_domain_file(kDomainPath);
  DomainAst swapped = d;
  std::swap(swapped.actions[0], swapped.actions[1]);
  CHECK(print_domain(d) != print_domain(swapped));
  CHECK_FALSE(structural_equal(d, swapped));
  // both stay valid PDDL
  CHECK(parse_domain(print_domain(swapped)).actions[0].name == "pick");
}

TEST_CASE("requirement flags survive the round trip") {
  DomainAst d = parse_domain_file(kDomainPath);
  d.requirements.push_back(":disjunctive-preconditions");
  std::string text = print_domain(d);
  CHECK(text.find(":disjunctive-preconditions") != std::string::npos);
  CHECK(structural_equal(parse_domain(text), d));
}
