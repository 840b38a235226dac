#include "pddlmorph/suite.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "pddlmorph/errors.hpp"
#include "pddlmorph/printer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace pddlmorph {

namespace {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string content_hash(const std::string& bytes) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

VariantEntry apply_mechanism(const MechanismId& id, const DomainAst& d,
                             const std::vector<ProblemAst>& problems,
                             const GeneratorConfig& cfg) {
  VariantEntry entry;
  entry.id = id;
  entry.problems = problems;
  const std::string& code = id.code;
  auto dir = [&](char subscript_char) {
    return subscript_char == '1' ? SortDirection::Descending
                                 : SortDirection::Ascending;
  };
  // Alphabetical subscripts read 1 = A-Z, 2 = Z-A; ascending sorts A-Z.
  auto alpha_dir = [&](char subscript_char) {
    return subscript_char == '1' ? SortDirection::Ascending
                                 : SortDirection::Descending;
  };

  try {
    if (id.category == Category::SSC) {
      char sub = code.back();
      std::string family = code.substr(0, code.size() - 1);
      if (family == "PDU") {
        entry.domain =
            reorder_predicates(d, PredicateSortKey::UsageFrequency, dir(sub));
      } else if (family == "PDA") {
        entry.domain =
            reorder_predicates(d, PredicateSortKey::Alphabetical, alpha_dir(sub));
      } else if (family == "OEF") {
        entry.domain = reorder_actions(d, ActionSortKey::EffectCount, dir(sub));
      } else if (family == "ONE") {
        entry.domain =
            reorder_actions(d, ActionSortKey::NegativeEffectCount, dir(sub));
      } else if (family == "OPR") {
        entry.domain =
            reorder_actions(d, ActionSortKey::PreconditionCount, dir(sub));
      } else if (family == "OPA") {
        entry.domain =
            reorder_actions(d, ActionSortKey::ParameterCount, dir(sub));
      } else if (family == "ORA") {
        entry.domain = reorder_actions(
            d, ActionSortKey::EffectPreconditionRatio, dir(sub));
      } else if (family == "OAN") {
        entry.domain = reorder_actions(d, ActionSortKey::Name, alpha_dir(sub));
      } else if (family == "PRA") {
        entry.domain =
            reorder_action_body(d, ActionBodyPart::Preconditions, alpha_dir(sub));
      } else if (family == "EFA") {
        entry.domain =
            reorder_action_body(d, ActionBodyPart::Effects, alpha_dir(sub));
      } else {
        throw std::logic_error("unknown SSC code " + code);
      }
    } else if (id.category == Category::MRC) {
      if (code == "ROB") {
        entry.domain = d;
        entry.problems.clear();
        for (const ProblemAst& p : problems) {
          entry.problems.push_back(add_dummy_objects(p, d, cfg));
        }
        entry.problems_modified = true;
      } else if (code == "RPD") {
        entry.domain = add_dummy_predicates(d, cfg);
      } else if (code == "RPA") {
        auto [dom, probs] = inflate_predicate_arity(d, problems, cfg);
        entry.domain = std::move(dom);
        entry.problems = std::move(probs);
        entry.problems_modified = true;
      } else if (code == "ROP") {
        entry.domain = add_inapplicable_duplicate(d, cfg);
      } else if (code == "ROA") {
        entry.domain = add_dummy_action_parameters(d, cfg);
      } else if (code == "RPR") {
        entry.domain = add_disjunctive_dummy_precondition(d, cfg);
      } else if (code == "REF") {
        entry.domain = add_dummy_effect(d, cfg);
      } else {
        throw std::logic_error("unknown MRC code " + code);
      }
    } else {
      if (code == "DEF") {
        entry.domain = make_def_variant(d, cfg);
      } else if (code == "RPD") {
        RpdDeadendResult res = make_rpd_deadend_variant(d, problems, cfg);
        entry.domain = std::move(res.domain);
        entry.problems = std::move(res.problems);
        entry.degenerate = res.degenerate;
      } else if (code == "APD") {
        entry.domain = make_apd_variant(d, cfg);
      } else if (code == "COP") {
        entry.domain = make_cop_variant(d, cfg);
      } else {
        throw std::logic_error("unknown TDC code " + code);
      }
    }
  } catch (const RatioUndefinedError& e) {
    entry.ok = false;
    entry.reason = e.what();
  } catch (const NoGoalAchievingEffectError& e) {
    entry.ok = false;
    entry.reason = e.what();
  } catch (const TooFewActionsError& e) {
    entry.ok = false;
    entry.reason = e.what();
  } catch (const UnsupportedFeatureError& e) {
    entry.ok = false;
    entry.reason = e.what();
  }
  return entry;
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

}  // namespace

std::size_t VariantSuite::skipped_count() const {
  std::size_t n = 0;
  for (const VariantEntry& v : variants) {
    if (!v.ok) ++n;
  }
  return n;
}

VariantSuite generate_suite(const DomainAst& d,
                            const std::vector<ProblemAst>& problems,
                            GeneratorConfig cfg) {
  if (!cfg.reference_problem && !problems.empty()) {
    cfg.reference_problem = problems.front();
  }
  VariantSuite suite;
  suite.original = d;
  suite.problems = problems;
  for (const MechanismInfo& info : mechanism_catalogue()) {
    suite.variants.push_back(apply_mechanism(info.id, d, problems, cfg));
  }
  return suite;
}

std::string write_suite(const VariantSuite& suite, const std::string& outdir) {
  fs::path root = fs::path(outdir) / suite.original.name;
  fs::create_directories(root);

  json manifest;
  manifest["domain"] = suite.original.name;
  manifest["entries"] = json::array();

  auto emit = [&](const std::string& name, const std::string& category,
                  const VariantEntry* entry) {
    json record;
    record["mechanism"] = name;
    record["category"] = category;
    if (entry != nullptr && !entry->ok) {
      record["status"] = "skipped";
      record["reason"] = entry->reason;
      manifest["entries"].push_back(record);
      return;
    }
    record["status"] = "ok";
    if (entry != nullptr && entry->degenerate) record["degenerate"] = true;

    fs::path dir = root / name;
    fs::create_directories(dir);
    const DomainAst& dom = entry != nullptr ? entry->domain : suite.original;
    const std::vector<ProblemAst>& problems =
        entry != nullptr ? entry->problems : suite.problems;

    std::string domain_text = print_domain(dom);
    write_file(dir / "domain.pddl", domain_text);
    record["domain_file"] = (dir / "domain.pddl").string();
    record["domain_hash"] = content_hash(domain_text);

    // The original entry carries the canonical problem files; entries whose
    // mechanism leaves problems untouched reference those instead.
    bool write_problems = entry == nullptr || entry->problems_modified;
    json files = json::array();
    json hashes = json::array();
    for (const ProblemAst& p : problems) {
      std::string text = print_problem(p);
      fs::path path;
      if (write_problems) {
        fs::create_directories(dir / "problems");
        path = dir / "problems" / (p.name + ".pddl");
        write_file(path, text);
      } else {
        path = root / "original" / "problems" / (p.name + ".pddl");
      }
      files.push_back(path.string());
      hashes.push_back(content_hash(text));
    }
    record["problem_files"] = files;
    record["problem_hashes"] = hashes;
    manifest["entries"].push_back(record);
  };

  emit("original", "original", nullptr);
  for (const VariantEntry& entry : suite.variants) {
    emit(to_string(entry.id), to_string(entry.id.category), &entry);
  }

  fs::path manifest_path = root / "suite-manifest.json";
  write_file(manifest_path, manifest.dump(2) + "\n");
  return manifest_path.string();
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path + "'");
  json data = json::parse(in);
  Manifest manifest;
  manifest.domain_name = data.at("domain").get<std::string>();
  for (const json& record : data.at("entries")) {
    ManifestEntry entry;
    entry.mechanism = record.at("mechanism").get<std::string>();
    entry.category = record.at("category").get<std::string>();
    entry.status = record.at("status").get<std::string>();
    entry.reason = record.value("reason", "");
    entry.degenerate = record.value("degenerate", false);
    entry.domain_file = record.value("domain_file", "");
    if (record.contains("problem_files")) {
      for (const json& f : record["problem_files"]) {
        entry.problem_files.push_back(f.get<std::string>());
      }
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

}  // namespace pddlmorph
