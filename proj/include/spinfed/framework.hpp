#ifndef SPINFED_FRAMEWORK_HPP
#define SPINFED_FRAMEWORK_HPP

#include "spinfed/taskset.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace spinfed {

// The six disjoint parts of a job's spinning time: {key path, delay,
// parallel} x {intra-task, inter-task}.
struct BlockingDecomposition {
  Time key_intra = 0;       // spinning by a key-path vertex, holder is the same task
  Time key_inter = 0;       // spinning by a key-path vertex, holder is another task
  Time delay_intra = 0;     // off-path spinning while no key-path vertex is busy
  Time delay_inter = 0;
  Time parallel_intra = 0;  // off-path spinning overlapping key-path-busy windows
  Time parallel_inter = 0;

  Time total() const {
    return key_intra + key_inter + delay_intra + delay_inter + parallel_intra + parallel_inter;
  }
};

// Interference weights: key-path intra blocking counts (m_i - 1) times,
// key-path inter blocking m_i times, delay blocking once, parallel blocking
// not at all. The weights live here so per-order analyzers cannot transpose
// them.
inline Rat interference_of(const BlockingDecomposition& b, int m) {
  return Rat(m - 1) * b.key_intra + Rat(b.delay_intra) + Rat(m) * b.key_inter +
         Rat(b.delay_inter);
}

// Maximal number of jobs of the other task that can contend with one job of
// the analyzed task on a shared resource: ceil((D_i + D_j)/T_j), 0 when the
// resource is not shared by both.
Time contention_jobs(Time analyzed_deadline, Time other_deadline, Time other_period,
                     bool both_access);

// (C_i + (m_i - 1) L_i + I_i) / m_i, exact.
Rat graham_bound(Time total_wcet, Time longest_path_len, const Rat& interference, int m);

// One evaluation of a per-resource interference curve at a given x
// (x = number of key-path accesses to the resource).
struct InterferencePoint {
  Rat intra{0};
  Rat inter{0};
  Rat value() const { return intra + inter; }
};

struct ResourceBound {
  int resource = 0;
  Time limit = 0;   // N_iq
  Time best_x = 0;  // maximizing x, lowest on ties
  InterferencePoint at_best;
};

// I_i <= sum over resources of max over x in [0, N_iq]; carries the witness
// x* and the intra/inter split at the winner.
struct InterferenceBound {
  std::vector<ResourceBound> per_resource;
  Rat total{0};
};

// Exhaustive integer scan of x in [0, limit] per resource. `curve` must be
// defined for every such x.
InterferenceBound max_interference(
    const std::vector<std::pair<int, Time>>& resource_limits,
    const std::function<InterferencePoint(int resource, Time x)>& curve);

// Per-task analysis outcome shared by the three analyzers.
enum class InfeasibleReason { none, denominator_nonpositive, budget_exhausted };

struct TaskVerdict {
  int task = 0;
  int m = 0;
  Rat bound{0};
  bool fits = false;  // bound <= deadline
  InterferenceBound interference;
};

struct Verdict {
  bool schedulable = false;
  InfeasibleReason reason = InfeasibleReason::none;
  std::vector<TaskVerdict> tasks;
  int total_processors = 0;
  int sweeps = 0;  // used by the iterative partitioners
};

const char* reason_str(InfeasibleReason r);

}  // namespace spinfed

#endif
