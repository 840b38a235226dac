#ifndef PDDLMORPH_ERRORS_HPP
#define PDDLMORPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pddlmorph {

struct SyntaxError : std::runtime_error {
  int line;
  int column;
  SyntaxError(int line, int column, const std::string& what)
      : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
};

struct UnsupportedFeatureError : std::runtime_error {
  explicit UnsupportedFeatureError(const std::string& what)
      : std::runtime_error("unsupported feature: " + what) {}
};

struct ArityMismatchError : std::runtime_error {
  explicit ArityMismatchError(const std::string& what)
      : std::runtime_error("arity mismatch: " + what) {}
};

struct CrossRefError : std::runtime_error {
  explicit CrossRefError(const std::string& what)
      : std::runtime_error("cross-reference error: " + what) {}
};

// Mechanism applicability failures; a suite turns these into skipped entries.
struct RatioUndefinedError : std::runtime_error {
  explicit RatioUndefinedError(const std::string& what)
      : std::runtime_error("ratio undefined: " + what) {}
};

struct NoGoalAchievingEffectError : std::runtime_error {
  explicit NoGoalAchievingEffectError(const std::string& what)
      : std::runtime_error("no goal-achieving effect: " + what) {}
};

struct TooFewActionsError : std::runtime_error {
  explicit TooFewActionsError(const std::string& what)
      : std::runtime_error("too few actions: " + what) {}
};

struct GroundingCapExceededError : std::runtime_error {
  explicit GroundingCapExceededError(const std::string& what)
      : std::runtime_error("grounding cap exceeded: " + what) {}
};

struct StateCapExceededError : std::runtime_error {
  explicit StateCapExceededError(const std::string& what)
      : std::runtime_error("state cap exceeded: " + what) {}
};

struct MeterUnavailableError : std::runtime_error {
  explicit MeterUnavailableError(const std::string& what)
      : std::runtime_error("energy meter unavailable: " + what) {}
};

struct SpawnError : std::runtime_error {
  explicit SpawnError(const std::string& what)
      : std::runtime_error("spawn failed: " + what) {}
};

}  // namespace pddlmorph

#endif
