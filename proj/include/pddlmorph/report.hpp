#ifndef PDDLMORPH_REPORT_HPP
#define PDDLMORPH_REPORT_HPP

#include <string>
#include <vector>

#include "pddlmorph/stats.hpp"

namespace pddlmorph {

// Values display at 3 significant figures; a degenerate range {x, x} prints
// the single value, otherwise "lo–hi".
std::string format_sig3(double value);
std::string format_range(const std::vector<double>& values);

// Markdown: per-category planner x domain rows carrying mu/sigma/t/r ranges
// across that category's mechanisms, then a per-mechanism detail table.
std::string emit_markdown(const std::vector<SummaryStats>& stats,
                          const std::vector<CorrelationResult>& correlations,
                          const std::string& baseline_mechanism);

// CSV columns: category, mechanism, planner, domain, mu_j, sigma_j, t_s, r, n.
std::string emit_csv(const std::vector<SummaryStats>& stats,
                     const std::vector<CorrelationResult>& correlations);

}  // namespace pddlmorph

#endif
