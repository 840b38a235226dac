#ifndef PDDLMORPH_SUITE_HPP
#define PDDLMORPH_SUITE_HPP

#include <string>
#include <vector>

#include "pddlmorph/ast.hpp"
#include "pddlmorph/mechanisms.hpp"

namespace pddlmorph {

struct VariantEntry {
  MechanismId id;
  bool ok = true;              // false -> skipped, `reason` says why
  std::string reason;
  bool degenerate = false;     // mechanism applied but cannot manifest
  DomainAst domain;            // valid iff ok
  std::vector<ProblemAst> problems;
  bool problems_modified = false;
};

struct VariantSuite {
  DomainAst original;
  std::vector<ProblemAst> problems;
  std::vector<VariantEntry> variants;  // 31 entries, catalogue order

  std::size_t skipped_count() const;
};

// Applies all 31 mechanisms independently to the original. Inapplicable
// mechanisms produce explicit skipped entries, never silent omission. The
// reference problem for TDC defaults to the first problem.
VariantSuite generate_suite(const DomainAst& d,
                            const std::vector<ProblemAst>& problems,
                            GeneratorConfig cfg);

// Writes <outdir>/<domain>/<entry>/domain.pddl (+ problems/*.pddl where the
// mechanism touches problems) and a suite-manifest.json. Returns the manifest
// path.
std::string write_suite(const VariantSuite& suite, const std::string& outdir);

// Manifest entry as read back by oracle-check and bench.
struct ManifestEntry {
  std::string mechanism;  // "original" or e.g. "SSC-PDU1"
  std::string category;   // "original" | "SSC" | "MRC" | "TDC"
  std::string status;     // "ok" | "skipped"
  std::string reason;
  bool degenerate = false;
  std::string domain_file;
  std::vector<std::string> problem_files;
};

struct Manifest {
  std::string domain_name;
  std::vector<ManifestEntry> entries;
};

Manifest read_manifest(const std::string& path);

}  // namespace pddlmorph

#endif
