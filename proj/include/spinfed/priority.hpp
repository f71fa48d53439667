#ifndef SPINFED_PRIORITY_HPP
#define SPINFED_PRIORITY_HPP

#include "spinfed/framework.hpp"

#include <map>
#include <optional>

namespace spinfed {

// Analysis for priority-ordered spin locks. Requires a strict total priority
// order over tasks (highest first).

struct DelayPerRequest {
  Time value = 0;
  bool divergent = false;  // fixed point exceeded the deadline
};

// Least fixed point of
//   t = max lower-priority hold + (min{N_iq, m_i} - 1) L_iq
//       + sum over higher-priority j of ceil((t + D_j)/T_j) N_jq L_jq
// starting from the lower-priority term; divergent once t > D_i. This is a
// conservative stand-in recurrence (see README); any over-approximation of
// the per-request delay keeps the response-time bound safe.
DelayPerRequest delay_per_request(const TaskSet& ts, int task_id, int resource, int m);

// ceil((dpr + D_j)/T_j) when both tasks access the resource, else 0.
Time contention_jobs_per_request(Time dpr, Time other_deadline, Time other_period,
                                 bool both_access);

// P^I(x) == F^I(x): same-task requests share one priority, so the intra
// bound matches FIFO exactly.
Rat priority_intra(Time x, Time requests, Time hold_time, int m);

// Higher/lower split plus per-resource delay-per-request for one (task, m).
struct PriorityContext {
  int task = 0;
  int m = 1;
  std::vector<int> higher;  // task ids with higher priority
  std::vector<int> lower;
  std::map<int, DelayPerRequest> dpr;  // resource -> delay per request
};
PriorityContext make_priority_context(const TaskSet& ts, int task_id, int m);

// P_L^O(x) + P_H^O(x).
Rat priority_inter(Time x, const TaskSet& ts, const PriorityContext& ctx, int resource);

Rat wcrt_priority(const TaskSet& ts, int task_id, int m);
Rat wcrt_priority(const TaskSet& ts, int task_id, int m, InterferenceBound* detail);

// Per-task independent search (the bound never references other tasks'
// processor counts): start at ceil((C-L)/(D-L)), increment while the bound
// misses the deadline, give up past the total budget.
Verdict partition_priority(const TaskSet& ts);

// Lexicographic scan over priority permutations; first schedulable order
// wins. Refuses task counts above `cap` (8 by default, 40320 orders).
struct PrioritySearchResult {
  std::optional<std::vector<int>> order;
  Verdict verdict;           // verdict under the winning order (if any)
  long long orders_tried = 0;
};
PrioritySearchResult search_priority_assignment(const TaskSet& ts, int cap = 8);

}  // namespace spinfed

#endif
