#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pddlmorph/parser.hpp"
#include "pddlmorph/suite.hpp"

using namespace pddlmorph;
namespace fs = std::filesystem;

namespace {

DomainAst gripper() {
  return parse_domain_file(std::string(FIXTURE_DIR) + "/gripper.pddl");
}

std::vector<ProblemAst> gripper_problems(const DomainAst& d) {
  return {parse_problem_file(std::string(FIXTURE_DIR) + "/gripper-p1.pddl", d)};
}

}  // namespace

TEST_CASE("gripper suite: 31 variants, none skipped") {
  DomainAst d = gripper();
  VariantSuite suite = generate_suite(d, gripper_problems(d), {});
  CHECK(suite.variants.size() == 31);
  CHECK(suite.skipped_count() == 0);

  // suite order mirrors the catalogue
  for (std::size_t i = 0; i < suite.variants.size(); ++i) {
    CHECK(suite.variants[i].id == mechanism_catalogue()[i].id);
  }

  // SSC variants are pure permutations: same multisets of predicates/actions
  auto sorted_preds = [](const DomainAst& dom) {
    std::vector<std::string> names;
    for (const PredicateDecl& p : dom.predicates) names.push_back(p.name);
    std::sort(names.begin(), names.end());
    return names;
  };
  for (const VariantEntry& entry : suite.variants) {
    if (entry.id.category != Category::SSC) continue;
    CHECK(sorted_preds(entry.domain) == sorted_preds(d));
    CHECK(entry.domain.actions.size() == d.actions.size());
    CHECK_FALSE(entry.problems_modified);
  }

  // only ROB and RPA carry modified problems
  for (const VariantEntry& entry : suite.variants) {
    bool touches_problems =
        entry.id.category == Category::MRC &&
        (entry.id.code == "ROB" || entry.id.code == "RPA");
    CHECK(entry.problems_modified == touches_problems);
  }
}

TEST_CASE("zero-precondition action skips both ORA variants") {
  DomainAst d = parse_domain(
      "(define (domain d) (:predicates (p) (q))"
      "(:action a :parameters () :precondition (and) :effect (p))"
      "(:action b :parameters () :precondition (p) :effect (q)))");
  ProblemAst p = parse_problem(
      "(define (problem x) (:domain d) (:objects) (:init) (:goal (and (q))))", d);
  VariantSuite suite = generate_suite(d, {p}, {});
  std::size_t skipped = 0;
  for (const VariantEntry& entry : suite.variants) {
    if (!entry.ok) {
      ++skipped;
      CHECK(entry.id.code.substr(0, 3) == "ORA");
      CHECK(entry.reason.find("ratio undefined") != std::string::npos);
    }
  }
  CHECK(skipped == 2);
}

TEST_CASE("write_suite emits 32 manifest entries and valid files") {
  DomainAst d = gripper();
  VariantSuite suite = generate_suite(d, gripper_problems(d), {});
  fs::path outdir = fs::temp_directory_path() / "pddlmorph-suite-test";
  fs::remove_all(outdir);
  std::string manifest_path = write_suite(suite, outdir.string());
  Manifest manifest = read_manifest(manifest_path);
  CHECK(manifest.domain_name == "gripper");
  REQUIRE(manifest.entries.size() == 32);
  CHECK(manifest.entries[0].mechanism == "original");
  for (const ManifestEntry& entry : manifest.entries) {
    CHECK(entry.status == "ok");
    REQUIRE(fs::exists(entry.domain_file));
    DomainAst dom = parse_domain_file(entry.domain_file);
    for (const std::string& problem : entry.problem_files) {
      REQUIRE(fs::exists(problem));
      CHECK_NOTHROW(parse_problem_file(problem, dom));
    }
  }
  fs::remove_all(outdir);
}

TEST_CASE("suite generation is deterministic byte for byte") {
  DomainAst d = gripper();
  auto problems = gripper_problems(d);
  fs::path dir_a = fs::temp_directory_path() / "pddlmorph-det-a";
  fs::path dir_b = fs::temp_directory_path() / "pddlmorph-det-b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  write_suite(generate_suite(d, problems, {}), dir_a.string());
  write_suite(generate_suite(d, problems, {}), dir_b.string());
  for (const fs::directory_entry& entry : fs::recursive_directory_iterator(dir_a)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() != ".pddl") continue;
    fs::path other = dir_b / fs::relative(entry.path(), dir_a);
    std::ifstream a(entry.path(), std::ios::binary);
    std::ifstream b(other, std::ios::binary);
    std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
    std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
    CHECK(bytes_a == bytes_b);
  }
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}
