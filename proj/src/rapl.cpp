#include "pddlmorph/rapl.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "pddlmorph/errors.hpp"

namespace fs = std::filesystem;

namespace pddlmorph {

namespace {

std::optional<std::string> read_line(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  std::getline(in, line);
  return line;
}

std::optional<std::uint64_t> read_counter_file(const fs::path& path) {
  auto line = read_line(path);
  if (!line) return std::nullopt;
  try {
    return std::stoull(*line);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

std::string rapl_root() {
  if (const char* env = std::getenv("PDDL_MORPH_RAPL_ROOT")) return env;
  return "/sys/class/powercap";
}

std::vector<std::string> discover_package_zones(const std::string& root) {
  std::vector<std::string> zones;
  std::error_code ec;
  for (const fs::directory_entry& entry : fs::directory_iterator(root, ec)) {
    if (!entry.is_directory(ec)) continue;
    std::string base = entry.path().filename().string();
    if (base.rfind("intel-rapl", 0) != 0) continue;
    auto name = read_line(entry.path() / "name");
    if (!name || name->rfind("package", 0) != 0) continue;
    if (!read_counter_file(entry.path() / "energy_uj")) continue;
    zones.push_back(entry.path().string());
  }
  if (ec) throw MeterUnavailableError("cannot list '" + root + "': " + ec.message());
  if (zones.empty()) {
    throw MeterUnavailableError("no readable package zone under '" + root + "'");
  }
  std::sort(zones.begin(), zones.end());
  return zones;
}

EnergySample read_energy_counter(const std::string& zone) {
  EnergySample sample;
  sample.zone = zone;
  auto counter = read_counter_file(fs::path(zone) / "energy_uj");
  if (!counter) {
    throw MeterUnavailableError("cannot read '" + zone + "/energy_uj'");
  }
  sample.counter_microjoules = *counter;
  auto range = read_counter_file(fs::path(zone) / "max_energy_range_uj");
  // A missing range file disables wrap correction rather than the meter.
  sample.max_range_microjoules = range.value_or(0);
  return sample;
}

double energy_delta(const EnergySample& before, const EnergySample& after) {
  std::uint64_t delta;
  if (after.counter_microjoules >= before.counter_microjoules) {
    delta = after.counter_microjoules - before.counter_microjoules;
  } else if (after.max_range_microjoules > 0) {
    delta = after.max_range_microjoules - before.counter_microjoules +
            after.counter_microjoules;
  } else {
    delta = 0;
  }
  return static_cast<double>(delta) / 1e6;
}

EnergyMeter::EnergyMeter(double sample_period_seconds)
    : sample_period_(sample_period_seconds) {
  try {
    zones_ = discover_package_zones(rapl_root());
  } catch (const MeterUnavailableError&) {
    // Duration-only mode.
  }
}

void EnergyMeter::start() {
  if (!available()) return;
  std::lock_guard<std::mutex> lock(mutex_);
  last_.clear();
  for (const std::string& zone : zones_) last_.push_back(read_energy_counter(zone));
  accumulated_joules_ = 0.0;
  running_ = true;
  sampler_ = std::thread(&EnergyMeter::sampler_loop, this);
}

std::optional<double> EnergyMeter::stop() {
  if (!available()) return std::nullopt;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    running_ = false;
  }
  cv_.notify_all();
  if (sampler_.joinable()) sampler_.join();
  std::lock_guard<std::mutex> lock(mutex_);
  accumulate();
  return accumulated_joules_;
}

void EnergyMeter::sampler_loop() {
  std::unique_lock<std::mutex> lock(mutex_);
  while (running_) {
    auto period = std::chrono::duration<double>(sample_period_);
    if (cv_.wait_for(lock, period, [this] { return !running_; })) break;
    accumulate();
  }
}

void EnergyMeter::accumulate() {
  for (std::size_t i = 0; i < zones_.size(); ++i) {
    EnergySample now = read_energy_counter(zones_[i]);
    accumulated_joules_ += energy_delta(last_[i], now);
    last_[i] = now;
  }
}

}  // namespace pddlmorph
