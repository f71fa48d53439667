#ifndef SPINFED_HARNESS_HPP
#define SPINFED_HARNESS_HPP

#include "spinfed/simulator.hpp"
#include "spinfed/workload.hpp"

#include <iosfwd>

namespace spinfed {

enum class SweepAxis { u_norm, total_accesses, resource_types, max_hold, task_count };

SweepAxis parse_axis(const std::string& name);
const char* axis_str(SweepAxis a);

// One acceptance-ratio experiment: vary one knob, keep the rest of the base
// configuration fixed, share generated task sets across analyzers.
struct SweepSpec {
  SweepAxis axis = SweepAxis::u_norm;
  std::vector<Rat> values;
  GenConfig base;
  int sets_per_point = 100;
  std::vector<Order> analyzers{Order::unordered, Order::fifo, Order::priority};
  std::uint64_t seed = 1;
  int priority_cap = 8;
};

SweepSpec load_sweep_spec(const std::string& path);
GenConfig apply_axis(const GenConfig& base, SweepAxis axis, const Rat& value);

struct SweepCell {
  Rat value{0};
  Order analyzer = Order::unordered;
  int accepted = 0;
  int total = 0;
  bool skipped = false;  // priority search above the permutation cap
};

struct SweepTable {
  SweepAxis axis = SweepAxis::u_norm;
  std::vector<SweepCell> cells;
  int generation_failures = 0;
};

// Ratio of schedulable task sets per (axis value, analyzer). Deterministic:
// per-(point, set) seeds derive from the master seed alone.
SweepTable acceptance_ratio(const SweepSpec& spec);

// CSV rows: axis,value,analyzer,accepted,total,ratio
void write_csv(const SweepTable& table, std::ostream& out);

// Simulation-versus-bound campaign over analyzer-schedulable task sets.
struct CampaignConfig {
  GenConfig base;
  int task_sets = 50;
  int seeds_per_set = 10;
  Time horizon = 0;
  std::vector<Order> disciplines{Order::unordered, Order::fifo, Order::priority};
  bool adversarial_unordered = true;  // alternate random/adversarial grants
  std::uint64_t seed = 1;
  int priority_cap = 8;
  std::string failure_dir;  // when set, dump taskset+trace on any violation
};

struct CampaignReport {
  long long schedulable_pairs = 0;  // (task set, discipline) pairs simulated
  long long runs = 0;
  long long jobs_checked = 0;
  long long bound_violations = 0;
  long long identity_violations = 0;
  Rat max_tightness{0};  // max observed response / analytical bound
  std::vector<std::string> failures;
};

CampaignReport soundness_campaign(const CampaignConfig& cfg);

// Trace-identity fuzz over random task sets and random processor vectors;
// disciplines and unordered grant modes round-robin. Checks every scorable
// job until `target_jobs` have been examined.
struct FuzzConfig {
  GenConfig base;
  long long target_jobs = 1000;
  int max_task_sets = 10000;
  int seeds_per_set = 3;
  Time horizon = 0;
  std::uint64_t seed = 1;
};

struct FuzzReport {
  long long jobs_checked = 0;
  long long violations = 0;
  std::vector<std::string> failures;
};

FuzzReport identity_fuzz(const FuzzConfig& cfg);

}  // namespace spinfed

#endif
