#include "pddlmorph/campaign.hpp"

#include <fnmatch.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>

#include "pddlmorph/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace pddlmorph {

std::string run_record_to_json(const RunRecord& record) {
  json j;
  j["planner"] = record.planner;
  j["domain"] = record.domain;
  j["mechanism"] = record.mechanism;
  j["instance"] = record.instance;
  j["rep"] = record.rep;
  if (record.energy_j) {
    j["energy_j"] = *record.energy_j;
  } else {
    j["energy_j"] = nullptr;
  }
  j["duration_s"] = record.duration_s;
  j["outcome"] = to_string(record.outcome);
  j["exit_code"] = record.exit_code;
  j["started_at"] = record.started_at;
  return j.dump();
}

RunRecord run_record_from_json(const std::string& line) {
  json j = json::parse(line);
  RunRecord record;
  record.planner = j.at("planner").get<std::string>();
  record.domain = j.at("domain").get<std::string>();
  record.mechanism = j.at("mechanism").get<std::string>();
  record.instance = j.at("instance").get<std::string>();
  record.rep = j.at("rep").get<int>();
  if (!j.at("energy_j").is_null()) {
    record.energy_j = j["energy_j"].get<double>();
  }
  record.duration_s = j.at("duration_s").get<double>();
  auto outcome = outcome_from_string(j.at("outcome").get<std::string>());
  if (!outcome) throw std::runtime_error("unknown outcome in record: " + line);
  record.outcome = *outcome;
  record.exit_code = j.at("exit_code").get<int>();
  record.started_at = j.at("started_at").get<double>();
  return record;
}

std::vector<RunRecord> read_results(const std::string& path) {
  std::vector<RunRecord> records;
  std::ifstream in(path);
  if (!in) return records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(run_record_from_json(line));
  }
  return records;
}

namespace {

std::string run_key(const std::string& planner, const std::string& mechanism,
                    const std::string& instance, int rep) {
  return planner + "\x1f" + mechanism + "\x1f" + instance + "\x1f" +
         std::to_string(rep);
}

std::string instance_id(const std::string& problem_file) {
  return fs::path(problem_file).stem().string();
}

}  // namespace

CampaignSummary run_campaign(const Manifest& manifest,
                             const std::vector<PlannerSpec>& planners,
                             const CampaignOptions& options) {
  CampaignSummary summary;

  std::set<std::string> done;
  for (const RunRecord& record : read_results(options.results_path)) {
    done.insert(
        run_key(record.planner, record.mechanism, record.instance, record.rep));
  }

  struct Cell {
    const ManifestEntry* entry;
    std::string problem_file;
    std::string instance;
  };
  std::vector<Cell> cells;
  for (const ManifestEntry& entry : manifest.entries) {
    if (entry.status != "ok") {
      summary.skipped_variants.push_back(entry.mechanism);
      continue;
    }
    for (const std::string& problem : entry.problem_files) {
      std::string id = instance_id(problem);
      if (options.instance_glob &&
          fnmatch(options.instance_glob->c_str(), id.c_str(), 0) != 0) {
        continue;
      }
      cells.push_back({&entry, problem, id});
    }
  }

  fs::create_directories(options.log_dir);
  if (fs::path(options.results_path).has_parent_path()) {
    fs::create_directories(fs::path(options.results_path).parent_path());
  }
  std::ofstream out(options.results_path, std::ios::app);
  if (!out) {
    throw std::runtime_error("cannot open results file '" +
                             options.results_path + "'");
  }

  EnergyMeter meter(60.0);
  EnergyMeter* meter_ptr =
      options.use_energy_meter && meter.available() ? &meter : nullptr;

  std::set<std::string> dead_planners;

  // Repetitions round-robin across variants to spread thermal drift.
  for (int rep = 0; rep < options.limits.repetitions; ++rep) {
    for (const PlannerSpec& planner : planners) {
      if (dead_planners.count(planner.id) != 0) continue;
      for (const Cell& cell : cells) {
        std::string key =
            run_key(planner.id, cell.entry->mechanism, cell.instance, rep);
        if (done.count(key) != 0) {
          ++summary.skipped_existing;
          continue;
        }
        if (options.max_new_records &&
            summary.new_records >= *options.max_new_records) {
          return summary;
        }
        std::string log_path = options.log_dir + "/" + planner.id + "." +
                               cell.entry->mechanism + "." + cell.instance +
                               ".r" + std::to_string(rep) + ".log";
        RunRecord record;
        try {
          record = run_planner_once(planner, cell.entry->domain_file,
                                    cell.problem_file, options.limits, log_path,
                                    meter_ptr);
        } catch (const SpawnError& e) {
          summary.skipped_planners.push_back(planner.id + ": " + e.what());
          dead_planners.insert(planner.id);
          break;
        }
        record.domain = manifest.domain_name;
        record.mechanism = cell.entry->mechanism;
        record.instance = cell.instance;
        record.rep = rep;
        out << run_record_to_json(record) << "\n";
        out.flush();
        done.insert(key);
        ++summary.new_records;
      }
    }
  }
  return summary;
}

}  // namespace pddlmorph
