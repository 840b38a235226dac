#include "pddlmorph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pddlmorph {

std::vector<RunRecord> filter_included(const std::vector<RunRecord>& records) {
  std::vector<RunRecord> included;
  for (const RunRecord& record : records) {
    if (record.outcome == Outcome::PlanFound ||
        record.outcome == Outcome::Failure) {
      included.push_back(record);
    }
  }
  return included;
}

namespace {

using GroupKey = std::tuple<std::string, std::string, std::string>;

std::map<GroupKey, std::vector<const RunRecord*>> group_records(
    const std::vector<RunRecord>& records) {
  std::map<GroupKey, std::vector<const RunRecord*>> groups;
  for (const RunRecord& record : records) {
    groups[{record.planner, record.domain, record.mechanism}].push_back(&record);
  }
  return groups;
}

double mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<SummaryStats> summarize(const std::vector<RunRecord>& records) {
  std::vector<RunRecord> included = filter_included(records);
  std::vector<SummaryStats> rows;
  for (const auto& [key, group] : group_records(included)) {
    SummaryStats row;
    std::tie(row.planner, row.domain, row.mechanism) = key;
    row.n = group.size();
    std::vector<double> durations;
    std::vector<double> energies;
    for (const RunRecord* record : group) {
      durations.push_back(record->duration_s);
      if (record->energy_j) energies.push_back(*record->energy_j);
    }
    row.t_s = mean(durations);
    if (energies.size() == group.size()) {
      row.mu_j = mean(energies);
      row.sigma_j = sample_stddev(energies);
      row.singleton = energies.size() == 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<double> pearson(const std::vector<double>& x,
                              const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double mx = mean(x);
  double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<CorrelationResult> correlate(const std::vector<RunRecord>& records,
                                         const std::string& baseline_mechanism) {
  std::vector<RunRecord> included = filter_included(records);

  // per (planner, domain, mechanism, instance) -> mean energy
  std::map<std::tuple<std::string, std::string, std::string, std::string>,
           std::vector<double>>
      by_instance;
  for (const RunRecord& record : included) {
    if (!record.energy_j) continue;
    by_instance[{record.planner, record.domain, record.mechanism,
                 record.instance}]
        .push_back(*record.energy_j);
  }
  std::map<std::tuple<std::string, std::string, std::string>,
           std::map<std::string, double>>
      instance_means;
  for (const auto& [key, energies] : by_instance) {
    const auto& [planner, domain, mechanism, instance] = key;
    instance_means[{planner, domain, mechanism}][instance] = mean(energies);
  }

  std::vector<CorrelationResult> results;
  for (const auto& [key, means] : instance_means) {
    const auto& [planner, domain, mechanism] = key;
    if (mechanism == baseline_mechanism) continue;
    CorrelationResult result;
    result.planner = planner;
    result.domain = domain;
    result.mechanism = mechanism;
    auto baseline_it = instance_means.find({planner, domain, baseline_mechanism});
    if (baseline_it != instance_means.end()) {
      std::vector<double> x;
      std::vector<double> y;
      for (const auto& [instance, value] : means) {
        auto it = baseline_it->second.find(instance);
        if (it != baseline_it->second.end()) {
          x.push_back(value);
          y.push_back(it->second);
        }
      }
      result.instances_used = x.size();
      result.r = pearson(x, y);
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace pddlmorph
