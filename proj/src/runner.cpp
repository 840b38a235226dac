#include "pddlmorph/runner.hpp"

#include <fcntl.h>
#include <sched.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pddlmorph/errors.hpp"

namespace fs = std::filesystem;

namespace pddlmorph {

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::PlanFound: return "PlanFound";
    case Outcome::ProvedUnsolvable: return "ProvedUnsolvable";
    case Outcome::Failure: return "Failure";
    case Outcome::Timeout: return "Timeout";
    case Outcome::MemoryExceeded: return "MemoryExceeded";
    case Outcome::CrashError: return "CrashError";
  }
  return "CrashError";
}

std::optional<Outcome> outcome_from_string(const std::string& name) {
  for (Outcome o : {Outcome::PlanFound, Outcome::ProvedUnsolvable,
                    Outcome::Failure, Outcome::Timeout, Outcome::MemoryExceeded,
                    Outcome::CrashError}) {
    if (to_string(o) == name) return o;
  }
  return std::nullopt;
}

void validate_spec(const PlannerSpec& spec) {
  auto count = [&](const std::string& placeholder) {
    std::size_t n = 0;
    for (const std::string& arg : spec.command) {
      for (std::size_t pos = arg.find(placeholder); pos != std::string::npos;
           pos = arg.find(placeholder, pos + 1)) {
        ++n;
      }
    }
    return n;
  };
  if (spec.command.empty()) {
    throw std::invalid_argument("planner '" + spec.id + "': empty command");
  }
  if (count("{domain}") != 1 || count("{problem}") != 1) {
    throw std::invalid_argument(
        "planner '" + spec.id +
        "': command must contain {domain} and {problem} exactly once each");
  }
}

namespace {

std::string substitute(std::string arg, const std::string& key,
                       const std::string& value) {
  for (std::size_t pos = arg.find(key); pos != std::string::npos;
       pos = arg.find(key, pos + value.size())) {
    arg.replace(pos, key.size(), value);
  }
  return arg;
}

double now_monotonic() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double now_wall() {
  return std::chrono::duration<double>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

RunRecord run_planner_once(const PlannerSpec& spec,
                           const std::string& domain_file,
                           const std::string& problem_file,
                           const HarnessLimits& limits,
                           const std::string& log_path,
                           EnergyMeter* meter) {
  validate_spec(spec);

  std::string plan_out = log_path + ".plan";
  std::error_code ec;
  fs::remove(plan_out, ec);

  std::vector<std::string> argv_strings;
  for (const std::string& arg : spec.command) {
    std::string expanded = substitute(arg, "{domain}", domain_file);
    expanded = substitute(expanded, "{problem}", problem_file);
    expanded = substitute(expanded, "{plan-out}", plan_out);
    argv_strings.push_back(std::move(expanded));
  }
  std::vector<char*> argv;
  for (std::string& s : argv_strings) argv.push_back(s.data());
  argv.push_back(nullptr);

  if (access(argv_strings[0].c_str(), X_OK) != 0) {
    throw SpawnError("'" + argv_strings[0] + "': " + std::strerror(errno));
  }

  RunRecord record;
  record.planner = spec.id;
  record.started_at = now_wall();

  if (meter != nullptr) meter->start();
  double start = now_monotonic();

  pid_t pid = fork();
  if (pid < 0) {
    if (meter != nullptr) meter->stop();
    throw SpawnError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    setpgid(0, 0);  // own process group so the timeout kill reaps helpers

    cpu_set_t mask;
    CPU_ZERO(&mask);
    for (int core = limits.first_core;
         core < limits.first_core + limits.cpu_cores; ++core) {
      CPU_SET(core, &mask);
    }
    sched_setaffinity(0, sizeof mask, &mask);

    struct rlimit mem{limits.memory_bytes, limits.memory_bytes};
    setrlimit(RLIMIT_AS, &mem);

    int log_fd = open(log_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (log_fd >= 0) {
      dup2(log_fd, STDOUT_FILENO);
      dup2(log_fd, STDERR_FILENO);
      close(log_fd);
    }
    execv(argv_strings[0].c_str(), argv.data());
    _exit(127);
  }

  bool timed_out = false;
  int status = 0;
  for (;;) {
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) {
      status = 0;
      break;
    }
    if (!timed_out && now_monotonic() - start >= limits.timeout_seconds) {
      timed_out = true;
      kill(-pid, SIGKILL);
    }
    // Sleep while waiting to keep the harness's own draw minimal.
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  record.duration_s = now_monotonic() - start;
  if (meter != nullptr) record.energy_j = meter->stop();

  if (timed_out) {
    record.outcome = Outcome::Timeout;
    record.exit_code = -1;
    if (record.duration_s < limits.timeout_seconds) {
      record.duration_s = limits.timeout_seconds;
    }
    return record;
  }

  if (WIFSIGNALED(status)) {
    record.exit_code = -WTERMSIG(status);
    // SIGKILL not sent by the harness is treated as the OOM killer.
    record.outcome = WTERMSIG(status) == SIGKILL ? Outcome::MemoryExceeded
                                                 : Outcome::CrashError;
    return record;
  }

  record.exit_code = WEXITSTATUS(status);
  if (record.exit_code == 127) {
    record.outcome = Outcome::CrashError;  // exec failed in the child
    return record;
  }
  if (spec.unsolvable_exit_codes.count(record.exit_code) != 0) {
    record.outcome = Outcome::ProvedUnsolvable;
    return record;
  }
  if (spec.success_exit_codes.count(record.exit_code) != 0) {
    if (spec.plan_file_expected && !fs::exists(plan_out)) {
      // Success code without the promised plan file is a misconfiguration.
      record.outcome = Outcome::CrashError;
    } else {
      record.outcome = Outcome::PlanFound;
    }
    return record;
  }
  record.outcome = Outcome::Failure;
  return record;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

}  // namespace

std::vector<PlannerSpec> parse_planner_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open planner config '" + path + "'");

  std::vector<PlannerSpec> specs;
  PlannerSpec* current = nullptr;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    if (text.front() == '[' && text.back() == ']') {
      std::string section = trim(text.substr(1, text.size() - 2));
      const std::string prefix = "planner.";
      if (section.rfind(prefix, 0) != 0) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": expected [planner.<id>] section");
      }
      specs.emplace_back();
      specs.back().id = section.substr(prefix.size());
      current = &specs.back();
      continue;
    }
    std::size_t eq = text.find('=');
    if (eq == std::string::npos || current == nullptr) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value inside a section");
    }
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key == "command") {
      current->command = split_words(value);
    } else if (key == "success_exit_codes") {
      current->success_exit_codes.clear();
      for (const std::string& word : split_words(value)) {
        current->success_exit_codes.insert(std::stoi(word));
      }
    } else if (key == "unsolvable_exit_codes") {
      for (const std::string& word : split_words(value)) {
        current->unsolvable_exit_codes.insert(std::stoi(word));
      }
    } else if (key == "plan_file_expected") {
      current->plan_file_expected = value == "true" || value == "1" || value == "yes";
    } else {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
  }
  for (const PlannerSpec& spec : specs) validate_spec(spec);
  return specs;
}

}  // namespace pddlmorph
