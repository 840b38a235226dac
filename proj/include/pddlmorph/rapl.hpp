#ifndef PDDLMORPH_RAPL_HPP
#define PDDLMORPH_RAPL_HPP

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace pddlmorph {

struct EnergySample {
  std::uint64_t counter_microjoules = 0;
  std::uint64_t max_range_microjoules = 0;
  std::string zone;  // zone directory path
};

// Powercap root: PDDL_MORPH_RAPL_ROOT when set, else /sys/class/powercap.
std::string rapl_root();

// Package-level zones under the root (directories named intel-rapl* whose
// `name` file starts with "package"). Throws MeterUnavailableError when none
// are readable.
std::vector<std::string> discover_package_zones(const std::string& root);

// Reads energy_uj and max_energy_range_uj for one zone.
// Throws MeterUnavailableError on read failure.
EnergySample read_energy_counter(const std::string& zone);

// Wrap-aware difference between two samples of the same zone, in joules.
double energy_delta(const EnergySample& before, const EnergySample& after);

// Sums package-zone deltas around a measured interval. A background sampler
// reads the counters every `sample_period` seconds so intervals longer than
// the wrap period still accumulate correctly. When no meter is available the
// meter runs in duration-only mode and reports nullopt.
class EnergyMeter {
 public:
  explicit EnergyMeter(double sample_period_seconds = 60.0);

  bool available() const { return !zones_.empty(); }

  void start();
  std::optional<double> stop();  // total joules since start()

 private:
  void sampler_loop();
  void accumulate();

  std::vector<std::string> zones_;
  std::vector<EnergySample> last_;
  double accumulated_joules_ = 0.0;
  double sample_period_;
  std::thread sampler_;
  std::mutex mutex_;
  std::condition_variable cv_;
  bool running_ = false;
};

}  // namespace pddlmorph

#endif
