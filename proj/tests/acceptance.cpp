// Acceptance gate: one pass/fail line per criterion, exit code = failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pddlmorph/campaign.hpp"
#include "pddlmorph/ground.hpp"
#include "pddlmorph/mechanisms.hpp"
#include "pddlmorph/parser.hpp"
#include "pddlmorph/printer.hpp"
#include "pddlmorph/report.hpp"
#include "pddlmorph/runner.hpp"
#include "pddlmorph/search.hpp"
#include "pddlmorph/stats.hpp"
#include "pddlmorph/suite.hpp"

using namespace pddlmorph;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++g_failures;
}

std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "pddlmorph-acceptance";
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

fs::path write_stub(const std::string& name, const std::string& body) {
  fs::path dir = scratch_dir();
  fs::create_directories(dir);
  fs::path script = dir / name;
  write_file(script, "#!/bin/sh\n" + body);
  fs::permissions(script, fs::perms::owner_all | fs::perms::group_read |
                              fs::perms::others_read);
  return script;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main() {
  fs::remove_all(scratch_dir());
  fs::create_directories(scratch_dir());

  DomainAst gripper = parse_domain_file(fixture("gripper.pddl"));
  std::vector<ProblemAst> problems = {
      parse_problem_file(fixture("gripper-p1.pddl"), gripper),
      parse_problem_file(fixture("gripper-p2.pddl"), gripper)};

  // 1. Suite cardinality via the CLI: 32 entries, 0 skips, < 1 s.
  criterion("suite cardinality: generate yields 1+20+7+4=32 entries, 0 skips, <1s",
            [&](std::string& detail) {
              fs::path outdir = scratch_dir() / "suite";
              Clock::time_point start = Clock::now();
              std::string cmd = std::string(CLI_PATH) + " generate --domain " +
                                fixture("gripper.pddl") + " --problems '" +
                                fixture("gripper-p*.pddl") + "' --out " +
                                outdir.string() + " > /dev/null 2>&1";
              int rc = std::system(cmd.c_str());
              double elapsed = seconds_since(start);
              if (rc != 0) {
                detail = "generate exit code " + std::to_string(rc);
                return false;
              }
              Manifest manifest =
                  read_manifest((outdir / "gripper" / "suite-manifest.json").string());
              std::size_t ssc = 0, mrc = 0, tdc = 0, original = 0, skipped = 0;
              for (const ManifestEntry& e : manifest.entries) {
                if (e.status != "ok") ++skipped;
                if (e.category == "original") ++original;
                if (e.category == "SSC") ++ssc;
                if (e.category == "MRC") ++mrc;
                if (e.category == "TDC") ++tdc;
              }
              detail = std::to_string(manifest.entries.size()) + " entries (" +
                       std::to_string(original) + "+" + std::to_string(ssc) + "+" +
                       std::to_string(mrc) + "+" + std::to_string(tdc) + "), " +
                       std::to_string(skipped) + " skipped, " +
                       format_sig3(elapsed) + "s";
              return manifest.entries.size() == 32 && original == 1 && ssc == 20 &&
                     mrc == 7 && tdc == 4 && skipped == 0 && elapsed < 1.0;
            });

  VariantSuite suite = generate_suite(gripper, problems, {});
  GroundTask base_task = ground(gripper, problems[0], {});

  // 2. SSC neutrality: every SSC variant is oracle-equivalent, < 10 s total.
  criterion("SSC neutrality: all 20 reorderings oracle-equivalent, <10s",
            [&](std::string& detail) {
              Clock::time_point start = Clock::now();
              std::size_t equivalent = 0, total = 0;
              for (const VariantEntry& v : suite.variants) {
                if (v.id.category != Category::SSC) continue;
                ++total;
                ComparisonVerdict cmp = compare_tasks(
                    base_task, ground(v.domain, problems[0], {}), "dmc-dummy");
                if (cmp.verdict == Verdict::Equivalent) ++equivalent;
              }
              double elapsed = seconds_since(start);
              detail = std::to_string(equivalent) + "/" + std::to_string(total) +
                       " equivalent, " + format_sig3(elapsed) + "s";
              return total == 20 && equivalent == 20 && elapsed < 10.0;
            });

  // 3. MRC preservation: verdict at least solvability-preserving, projected
  //    shortest plan length still 3; ROA grounds strictly more actions.
  criterion("MRC preservation: 7 variants >= solvability-preserving, length 3; "
            "ROA ground-action count exceeds original",
            [&](std::string& detail) {
              std::size_t preserved = 0, total = 0;
              bool lengths_ok = true, roa_ok = false;
              for (const VariantEntry& v : suite.variants) {
                if (v.id.category != Category::MRC) continue;
                ++total;
                const ProblemAst& problem =
                    v.problems_modified ? v.problems[0] : problems[0];
                GroundTask task = ground(v.domain, problem, {});
                ComparisonVerdict cmp = compare_tasks(base_task, task, "dmc-dummy");
                if (cmp.verdict != Verdict::Deviating) ++preserved;
                if (!cmp.candidate.shortest_plan_length ||
                    *cmp.candidate.shortest_plan_length != 3) {
                  lengths_ok = false;
                }
                if (v.id.code == "ROA") {
                  roa_ok = task.actions.size() > base_task.actions.size();
                  detail = "ROA grounds " + std::to_string(task.actions.size()) +
                           " vs " + std::to_string(base_task.actions.size());
                }
              }
              detail = std::to_string(preserved) + "/" + std::to_string(total) +
                       " preserved; " + detail;
              return total == 7 && preserved == 7 && lengths_ok && roa_ok;
            });

  // 4. TDC deviation: RPD dead ends; DEF/APD lack goal-predicate positive
  //    effects; the COP composition adds no goal-predicate positive literal.
  criterion("TDC deviation: RPD dead ends, DEF/APD/COP lose goal-achieving effects",
            [&](std::string& detail) {
              std::vector<std::string> goal_preds;
              for (const GroundAtom& g : problems[0].goal) {
                goal_preds.push_back(g.predicate);
              }
              auto new_action_adds_goal = [&](const DomainAst& variant) {
                for (const ActionDef& a : variant.actions) {
                  bool is_new = true;
                  for (const ActionDef& orig : gripper.actions) {
                    if (orig.name == a.name) { is_new = false; break; }
                  }
                  if (!is_new) continue;
                  for (const Literal& eff : a.effects) {
                    if (!eff.positive) continue;
                    for (const std::string& gp : goal_preds) {
                      if (eff.predicate == gp) return true;
                    }
                  }
                }
                return false;
              };
              bool rpd_ok = false, def_ok = false, apd_ok = false, cop_ok = false;
              for (const VariantEntry& v : suite.variants) {
                if (v.id.category != Category::TDC) continue;
                if (v.id.code == "RPD") {
                  Exploration ex = explore(ground(v.domain, v.problems.empty()
                                                                ? problems[0]
                                                                : v.problems[0],
                                                  {}),
                                           0);
                  rpd_ok = ex.report.dead_end_count >= 1;
                  detail = "RPD deadEndCount=" +
                           std::to_string(ex.report.dead_end_count);
                } else if (v.id.code == "DEF") {
                  // DEF rewrites an action in place; no original action may
                  // still add the goal predicate via the removed effect, and
                  // the renamed replacement must not add it either.
                  def_ok = !new_action_adds_goal(v.domain);
                } else if (v.id.code == "APD") {
                  apd_ok = !new_action_adds_goal(v.domain);
                } else if (v.id.code == "COP") {
                  cop_ok = !new_action_adds_goal(v.domain);
                }
              }
              return rpd_ok && def_ok && apd_ok && cop_ok;
            });

  // 5. Round-trip fixpoint over 1000 randomized permutations.
  criterion("round-trip: parse(print(.)) fixpoint over 1000 permutations",
            [&](std::string& detail) {
              std::mt19937 rng(424242);
              std::size_t failures = 0;
              for (int i = 0; i < 1000; ++i) {
                DomainAst d = gripper;
                std::shuffle(d.predicates.begin(), d.predicates.end(), rng);
                std::shuffle(d.actions.begin(), d.actions.end(), rng);
                for (ActionDef& a : d.actions) {
                  std::shuffle(a.precondition.literals.begin(),
                               a.precondition.literals.end(), rng);
                  std::shuffle(a.effects.begin(), a.effects.end(), rng);
                }
                std::string text = print_domain(d);
                DomainAst reparsed = parse_domain(text);
                if (!structural_equal(d, reparsed) ||
                    print_domain(reparsed) != text) {
                  ++failures;
                }
              }
              detail = std::to_string(failures) + " failures";
              return failures == 0;
            });

  // 6. Statistics exactness.
  criterion("statistics: mu/sigma exact on {10,12,14}; pearson to 1e-12; "
            "zero variance undefined",
            [&](std::string& detail) {
              std::vector<RunRecord> runs;
              for (double e : {10.0, 12.0, 14.0}) {
                RunRecord r;
                r.planner = "p"; r.domain = "d"; r.mechanism = "m";
                r.instance = "i"; r.rep = static_cast<int>(e);
                r.outcome = Outcome::PlanFound; r.energy_j = e;
                runs.push_back(r);
              }
              std::vector<SummaryStats> stats = summarize(runs);
              bool mu_ok = stats.size() == 1 && stats[0].mu_j &&
                           *stats[0].mu_j == 12.0 && stats[0].sigma_j &&
                           *stats[0].sigma_j == 2.0;

              auto near = [](std::optional<double> a, double b) {
                return a && std::fabs(*a - b) < 1e-12;
              };
              bool pearson_ok =
                  near(pearson({1, 2, 3}, {1, 2, 3}), 1.0) &&
                  near(pearson({1, 2, 3}, {3, 2, 1}), -1.0) &&
                  near(pearson({1, 2, 4}, {1, 3, 3}), 2.0 / std::sqrt(7.0)) &&
                  near(pearson({1, 2, 3, 4}, {2, 4, 6, 8}), 1.0);
              bool degenerate_ok = !pearson({5, 5, 5}, {1, 2, 3}).has_value();
              detail = std::string(mu_ok ? "mu/sigma ok" : "mu/sigma WRONG") +
                       ", " + (pearson_ok ? "pearson ok" : "pearson WRONG") +
                       ", " + (degenerate_ok ? "undefined ok" : "undefined WRONG");
              return mu_ok && pearson_ok && degenerate_ok;
            });

  // Shared fixtures for the campaign criteria: a fast stub planner and a
  // 2-variant x 2-instance manifest.
  fs::path stub = write_stub("fast-planner.sh",
                             "sleep 0.1\necho '(noop)' > \"$3\"\nexit 0\n");
  PlannerSpec stub_spec;
  stub_spec.id = "stub";
  stub_spec.command = {stub.string(), "{domain}", "{problem}", "{plan-out}"};
  stub_spec.plan_file_expected = true;

  Manifest mini;
  mini.domain_name = "gripper";
  for (const std::string& mech : {"original", "SSC-PDU1"}) {
    ManifestEntry e;
    e.mechanism = mech;
    e.category = mech == "original" ? "original" : "SSC";
    e.status = "ok";
    e.domain_file = fixture("gripper.pddl");
    e.problem_files = {fixture("gripper-p1.pddl"), fixture("gripper-p2.pddl")};
    mini.entries.push_back(e);
  }

  // Synthetic powercap tree so energy is metered (statically, so deltas >= 0).
  fs::path rapl_root_dir = scratch_dir() / "powercap" / "intel-rapl:0";
  fs::create_directories(rapl_root_dir);
  write_file(rapl_root_dir / "name", "package-0\n");
  write_file(rapl_root_dir / "energy_uj", "123456789\n");
  write_file(rapl_root_dir / "max_energy_range_uj", "262143328850\n");
  setenv("PDDL_MORPH_RAPL_ROOT", (scratch_dir() / "powercap").c_str(), 1);

  // 7. Campaign protocol: 120 records, non-overlapping, resumable at 50,
  //    wrap-aware energy deltas.
  criterion("harness protocol: 2x2x30 campaign -> 120 records, sequential, "
            "resume 50->70, wrap-aware energy",
            [&](std::string& detail) {
              CampaignOptions opts;
              opts.limits.repetitions = 30;
              opts.limits.timeout_seconds = 10.0;
              opts.results_path = (scratch_dir() / "results.jsonl").string();
              opts.log_dir = (scratch_dir() / "logs").string();
              fs::remove(opts.results_path);

              // first pass stops after 50 records, simulating a killed run
              opts.max_new_records = 50;
              CampaignSummary first = run_campaign(mini, {stub_spec}, opts);
              // restart finishes the remaining 70
              opts.max_new_records.reset();
              CampaignSummary second = run_campaign(mini, {stub_spec}, opts);

              std::vector<RunRecord> records = read_results(opts.results_path);
              bool counts_ok = first.new_records == 50 &&
                               second.new_records == 70 &&
                               second.skipped_existing == 50 &&
                               records.size() == 120;

              bool sequential = true;
              for (std::size_t i = 1; i < records.size(); ++i) {
                if (records[i].started_at + 0.02 <
                    records[i - 1].started_at + records[i - 1].duration_s) {
                  sequential = false;
                }
              }
              bool energy_ok = true;
              for (const RunRecord& r : records) {
                if (!r.energy_j || *r.energy_j < 0.0) energy_ok = false;
              }
              EnergySample before, after;
              before.counter_microjoules = 262'143'328'550;
              before.max_range_microjoules = 262'143'328'850;
              after.counter_microjoules = 200;
              after.max_range_microjoules = 262'143'328'850;
              bool wrap_ok =
                  std::fabs(energy_delta(before, after) - 500e-6) < 1e-9;
              detail = std::to_string(first.new_records) + "+" +
                       std::to_string(second.new_records) + " records" +
                       (sequential ? ", sequential" : ", OVERLAP") +
                       (energy_ok ? ", energy>=0" : ", energy MISSING/NEGATIVE") +
                       (wrap_ok ? ", wrap ok" : ", wrap WRONG");
              return counts_ok && sequential && energy_ok && wrap_ok;
            });

  // 8. Timeout classification and exclusion from aggregates.
  criterion("timeout: 2s stub under 1s limit -> Timeout, excluded from mu/sigma/t",
            [&](std::string& detail) {
              fs::path slow = write_stub("slow-planner.sh", "sleep 2\nexit 0\n");
              PlannerSpec slow_spec;
              slow_spec.id = "slow";
              slow_spec.command = {slow.string(), "{domain}", "{problem}"};
              slow_spec.plan_file_expected = false;
              HarnessLimits limits;
              limits.timeout_seconds = 1.0;
              RunRecord timed_out = run_planner_once(
                  slow_spec, fixture("gripper.pddl"), fixture("gripper-p1.pddl"),
                  limits, (scratch_dir() / "slow.log").string(), nullptr);
              timed_out.planner = "slow";
              timed_out.domain = "gripper";
              timed_out.mechanism = "original";
              timed_out.instance = "p1";

              RunRecord good = timed_out;
              good.rep = 1;
              good.outcome = Outcome::PlanFound;
              good.energy_j = 5.0;
              good.duration_s = 0.5;

              std::vector<SummaryStats> stats = summarize({timed_out, good});
              bool excluded = stats.size() == 1 && stats[0].n == 1 &&
                              stats[0].mu_j && *stats[0].mu_j == 5.0 &&
                              stats[0].t_s == 0.5;
              detail = "outcome=" + to_string(timed_out.outcome) +
                       ", included n=" +
                       (stats.empty() ? std::string("0")
                                      : std::to_string(stats[0].n));
              return timed_out.outcome == Outcome::Timeout && excluded;
            });

  unsetenv("PDDL_MORPH_RAPL_ROOT");

  // 9. Report shape: the en-dash range cell.
  criterion("report shape: group {12.5, 12.6} renders as \"12.5–12.6\"",
            [&](std::string& detail) {
              std::string range = format_range({12.6, 12.5});
              bool cell_ok = range == "12.5–12.6";

              std::vector<SummaryStats> stats;
              for (double mu : {12.5, 12.6}) {
                SummaryStats s;
                s.planner = "p";
                s.domain = "gripper";
                s.mechanism = mu == 12.5 ? "SSC-PDU1" : "SSC-PDU2";
                s.mu_j = mu;
                s.sigma_j = 0.1;
                s.t_s = 1.0;
                s.n = 30;
                stats.push_back(s);
              }
              std::string markdown = emit_markdown(stats, {}, "original");
              bool in_report =
                  markdown.find("12.5–12.6") != std::string::npos;
              detail = "format_range -> \"" + range + "\"" +
                       (in_report ? ", present in Markdown" : ", MISSING from Markdown");
              return cell_ok && in_report;
            });

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
