#ifndef SPINFED_UNORDERED_HPP
#define SPINFED_UNORDERED_HPP

#include "spinfed/framework.hpp"

namespace spinfed {

// Analysis for unordered spin locks: no assumption on the queue discipline.

// Intra-task interference of one resource: (m_i - 1) * N_iq * L_iq.
Time intra_bound_unordered(Time requests, Time hold_time, int m);

// Inter-task interference from one competing task on one resource:
// m_i * eta * N_jq * L_jq.
Time inter_bound_unordered(int m, Time eta, Time other_requests, Time other_hold);

// Response-time bound (exact rational):
//   [C_i + (m_i-1)(L_i + sum_q N_iq L_iq)] / m_i + sum_{j!=i} sum_q eta N_jq L_jq
Rat wcrt_unordered(const TaskSet& ts, int task_id, int m);

struct MinProcessors {
  bool feasible = false;
  int m = 0;
};

// Smallest processor count that guarantees the deadline, or infeasible when
// D_i - (inter demand + L_i + sum N_iq L_iq) <= 0.
MinProcessors min_processors_unordered(const TaskSet& ts, int task_id);

// Per-task greedy assignment in id order against the total budget.
Verdict partition_unordered(const TaskSet& ts);

}  // namespace spinfed

#endif
