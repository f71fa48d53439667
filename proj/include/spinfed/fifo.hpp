#ifndef SPINFED_FIFO_HPP
#define SPINFED_FIFO_HPP

#include "spinfed/framework.hpp"

namespace spinfed {

// Analysis for FIFO-ordered spin locks.

// Queueing discount applied to the intra-task bound at x = 0:
// alpha * (m - (alpha+1)/2) with alpha = min{N, m}. Always integral, but kept
// rational to match the exact-arithmetic contract.
Rat fifo_intra_discount(Time requests, int m);

// F^I(x) = ((N - x)(m - 1) - max{1-x, 0} * discount) * L
Rat fifo_intra(Time x, Time requests, Time hold_time, int m);

// One competitor's worth of F^O(x): min{m_i eta N_jq, (N_iq + (m_i-1)x) m_j} L_jq.
struct FifoCompetitor {
  int m = 1;          // m_j
  Time eta = 0;       // contention_jobs(i, j, q)
  Time requests = 0;  // N_jq
  Time hold = 0;      // L_jq
};
Rat fifo_inter(Time x, Time own_requests, int m,
               const std::vector<FifoCompetitor>& competitors);

// Theorem-style bound under a full per-task processor vector.
Rat wcrt_fifo(const TaskSet& ts, int task_id, const std::vector<int>& m_vector);

// Detailed variant exposing the per-resource maximization.
Rat wcrt_fifo(const TaskSet& ts, int task_id, const std::vector<int>& m_vector,
              InterferenceBound* detail);

// Iterative partitioning: start every task at ceil((C-L)/(D-L)), sweep in
// ascending id order, bump every failing task by one processor, stop at a
// fixed point or when the budget is exceeded.
Verdict partition_fifo(const TaskSet& ts);

// Schedulability check for a caller-supplied assignment (no increments).
Verdict check_fifo(const TaskSet& ts, const std::vector<int>& m_vector);

std::vector<int> federated_initial_assignment(const TaskSet& ts);

}  // namespace spinfed

#endif
