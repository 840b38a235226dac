#include "pddlmorph/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace pddlmorph {

std::string format_sig3(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", value);
  return buf;
}

std::string format_range(const std::vector<double>& values) {
  if (values.empty()) return "-";
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  std::string lo_text = format_sig3(lo);
  std::string hi_text = format_sig3(hi);
  if (lo_text == hi_text) return lo_text;
  return lo_text + "–" + hi_text;  // en dash, as the tables print
}

namespace {

std::string category_of(const std::string& mechanism) {
  std::size_t dash = mechanism.find('-');
  if (dash == std::string::npos) return mechanism;  // "original"
  return mechanism.substr(0, dash);
}

struct Row {
  const SummaryStats* stats = nullptr;
  const CorrelationResult* correlation = nullptr;
};

std::map<std::tuple<std::string, std::string, std::string>, Row> join_rows(
    const std::vector<SummaryStats>& stats,
    const std::vector<CorrelationResult>& correlations) {
  std::map<std::tuple<std::string, std::string, std::string>, Row> rows;
  for (const SummaryStats& s : stats) {
    rows[{s.planner, s.domain, s.mechanism}].stats = &s;
  }
  for (const CorrelationResult& c : correlations) {
    rows[{c.planner, c.domain, c.mechanism}].correlation = &c;
  }
  return rows;
}

}  // namespace

std::string emit_markdown(const std::vector<SummaryStats>& stats,
                          const std::vector<CorrelationResult>& correlations,
                          const std::string& baseline_mechanism) {
  auto rows = join_rows(stats, correlations);
  std::ostringstream out;
  out << "# Benchmark report\n\n";
  out << "Metrics: mu = mean energy [J], sigma = sample standard deviation "
         "[J], t = mean duration [s], r = Pearson correlation of per-instance "
         "mean energies against the `"
      << baseline_mechanism << "` domain.\n";
  out << "Inclusion rule: runs with outcome PlanFound or Failure within the "
         "timeout.\n\n";

  for (const std::string category : {"SSC", "MRC", "TDC"}) {
    // planner x domain -> metric value lists across the category's mechanisms
    struct Ranges {
      std::vector<double> mu, sigma, t, r;
      std::size_t n = 0;
    };
    std::map<std::pair<std::string, std::string>, Ranges> by_cell;
    for (const auto& [key, row] : rows) {
      const auto& [planner, domain, mechanism] = key;
      if (category_of(mechanism) != category) continue;
      Ranges& cell = by_cell[{planner, domain}];
      if (row.stats != nullptr) {
        if (row.stats->mu_j) cell.mu.push_back(*row.stats->mu_j);
        if (row.stats->sigma_j) cell.sigma.push_back(*row.stats->sigma_j);
        cell.t.push_back(row.stats->t_s);
        cell.n += row.stats->n;
      }
      if (row.correlation != nullptr && row.correlation->r) {
        cell.r.push_back(*row.correlation->r);
      }
    }
    if (by_cell.empty()) continue;
    out << "## " << category << "\n\n";
    out << "| Planner | Domain | mu [J] | sigma [J] | t [s] | r |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const auto& [cell_key, cell] : by_cell) {
      out << "| " << cell_key.first << " | " << cell_key.second << " | "
          << format_range(cell.mu) << " | " << format_range(cell.sigma) << " | "
          << format_range(cell.t) << " | " << format_range(cell.r) << " |\n";
    }
    out << "\n";
  }

  out << "## Per-mechanism detail\n\n";
  out << "| Category | Mechanism | Planner | Domain | mu [J] | sigma [J] | t "
         "[s] | r | n |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& [key, row] : rows) {
    const auto& [planner, domain, mechanism] = key;
    std::string mu = "-";
    std::string sigma = "-";
    std::string t = "-";
    std::string n = "0";
    if (row.stats != nullptr) {
      if (row.stats->mu_j) mu = format_sig3(*row.stats->mu_j);
      if (row.stats->sigma_j) sigma = format_sig3(*row.stats->sigma_j);
      t = format_sig3(row.stats->t_s);
      n = std::to_string(row.stats->n);
    }
    std::string r = "-";
    if (row.correlation != nullptr) {
      r = row.correlation->r ? format_sig3(*row.correlation->r) : "undefined";
    }
    out << "| " << category_of(mechanism) << " | " << mechanism << " | "
        << planner << " | " << domain << " | " << mu << " | " << sigma << " | "
        << t << " | " << r << " | " << n << " |\n";
  }
  return out.str();
}

std::string emit_csv(const std::vector<SummaryStats>& stats,
                     const std::vector<CorrelationResult>& correlations) {
  auto rows = join_rows(stats, correlations);
  std::ostringstream out;
  out << "category,mechanism,planner,domain,mu_j,sigma_j,t_s,r,n\n";
  for (const auto& [key, row] : rows) {
    const auto& [planner, domain, mechanism] = key;
    out << category_of(mechanism) << "," << mechanism << "," << planner << ","
        << domain << ",";
    if (row.stats != nullptr && row.stats->mu_j) out << format_sig3(*row.stats->mu_j);
    out << ",";
    if (row.stats != nullptr && row.stats->sigma_j) {
      out << format_sig3(*row.stats->sigma_j);
    }
    out << ",";
    if (row.stats != nullptr) out << format_sig3(row.stats->t_s);
    out << ",";
    if (row.correlation != nullptr && row.correlation->r) {
      out << format_sig3(*row.correlation->r);
    }
    out << ",";
    out << (row.stats != nullptr ? row.stats->n : 0) << "\n";
  }
  return out.str();
}

}  // namespace pddlmorph
