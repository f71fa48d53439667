#ifndef SPINFED_WORKLOAD_HPP
#define SPINFED_WORKLOAD_HPP

#include "spinfed/taskset.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace spinfed {

template <typename T>
struct Range {
  T lo{};
  T hi{};
  bool valid() const { return lo <= hi; }
};

// Synthetic workload knobs. Sweeps collapse a range to a single value.
struct GenConfig {
  int tasks = 4;
  double edge_prob = 0.1;
  Range<Time> vertices{100, 400};
  Range<Time> wcet{250, 600};
  std::vector<Rat> ld_ratios{{1, 8}, {1, 4}};  // longest-path / deadline
  Range<Time> resource_types{4, 4};
  Range<Time> total_accesses{256, 256};  // per resource, across all tasks
  Range<Time> max_hold{15, 15};
  Rat u_norm{1, 2};
  int density_retries = 256;
};

// Flat key=value config file; unknown keys are rejected.
GenConfig load_gen_config(const std::string& path);
GenConfig parse_gen_config(const std::vector<std::pair<std::string, std::string>>& items);

struct GenError : StructuralError {
  using StructuralError::StructuralError;
};

// Erdos-Renyi G(|V|, p) DAG with forward edges only, augmented with a
// minimal deterministic edge set to make it weakly connected, then given a
// unique head/tail. Graph part only: period/deadline/resources stay unset.
DagTask gen_dag(const GenConfig& cfg, Rng& rng);

// Full task set: heavy tasks (density > 1, implicit deadline), per-resource
// access splits, processor budget ceil(U_sum / U_norm), request placements.
TaskSet gen_taskset(const GenConfig& cfg, std::uint64_t seed);

// Distributes the declared requests over vertices with spare capacity;
// lengths in [1, L_iq] with at least one request of exactly L_iq, packed
// left to right. Throws GenError when capacity is insufficient.
std::vector<RequestPlacement> place_requests(const DagTask& task, Rng& rng);

// One row of the bundled OpenMP measurement dataset (times in microseconds).
struct MeasuredProgram {
  std::string benchmark;
  std::string name;
  Time total_wcet = 0;    // C
  Time longest_path = 0;  // L
  std::array<std::pair<Time, Time>, 10> usage{};  // per resource l0..l9: (N, L)
};

const std::vector<MeasuredProgram>& openmp_dataset();

// Builds a task set from dataset rows (by index), assigning deadlines from
// the same L/D ratio rule as the synthetic generator. Graphs are synthesized
// abstract shapes with exactly the measured volume and longest path.
TaskSet openmp_taskset(const std::vector<int>& programs, const GenConfig& cfg,
                       std::uint64_t seed);

}  // namespace spinfed

#endif
