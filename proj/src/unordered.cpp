#include "spinfed/unordered.hpp"

#include <algorithm>

namespace spinfed {

namespace {

// sum_{j!=i} sum_{q in Theta_i} eta_ij^q N_jq L_jq; independent of m_i.
Time inter_demand(const TaskSet& ts, int task_id) {
  const DagTask& ti = ts.task(task_id);
  Time sum = 0;
  for (const DagTask& tj : ts.tasks) {
    if (tj.id == task_id) continue;
    for (int q : ts.resources_of(task_id)) {
      const ResourceUsage* uj = tj.usage(q);
      if (!uj || uj->count == 0) continue;
      Time eta = contention_jobs(ti.deadline, tj.deadline, tj.period, true);
      sum += eta * uj->count * uj->hold_time;
    }
  }
  return sum;
}

}  // namespace

Time intra_bound_unordered(Time requests, Time hold_time, int m) {
  if (m < 1) throw ParameterError("intra_bound_unordered: m >= 1 required");
  return Time(m - 1) * requests * hold_time;
}

Time inter_bound_unordered(int m, Time eta, Time other_requests, Time other_hold) {
  if (m < 1) throw ParameterError("inter_bound_unordered: m >= 1 required");
  if (eta < 0 || other_requests < 0 || other_hold < 0)
    throw ParameterError("inter_bound_unordered: negative argument");
  return Time(m) * eta * other_requests * other_hold;
}

Rat wcrt_unordered(const TaskSet& ts, int task_id, int m) {
  if (m < 1) throw ParameterError("wcrt_unordered: m >= 1 required");
  const DagTask& ti = ts.task(task_id);
  Time c = volume(ti);
  Time l = longest_path(ti);
  Time own = ts.access_demand(task_id);
  return (Rat(c) + Rat(m - 1) * (l + own)) / m + Rat(inter_demand(ts, task_id));
}

MinProcessors min_processors_unordered(const TaskSet& ts, int task_id) {
  const DagTask& ti = ts.task(task_id);
  Time c = volume(ti);
  Time l = longest_path(ti);
  Time own = ts.access_demand(task_id);
  Time inter = inter_demand(ts, task_id);

  Time denom = ti.deadline - (inter + l + own);
  if (denom <= 0) return {false, 0};
  Time num = c - (l + own);
  Time m = num <= 0 ? 1 : ceil_div(num, denom);
  return {true, static_cast<int>(std::max<Time>(m, 1))};
}

Verdict partition_unordered(const TaskSet& ts) {
  Verdict v;
  int used = 0;
  for (const DagTask& t : ts.tasks) {
    MinProcessors mp = min_processors_unordered(ts, t.id);
    if (!mp.feasible) {
      v.schedulable = false;
      v.reason = InfeasibleReason::denominator_nonpositive;
      return v;
    }
    if (used + mp.m > ts.processors) {
      v.schedulable = false;
      v.reason = InfeasibleReason::budget_exhausted;
      return v;
    }
    used += mp.m;
    TaskVerdict tv;
    tv.task = t.id;
    tv.m = mp.m;
    tv.bound = wcrt_unordered(ts, t.id, mp.m);
    tv.fits = tv.bound <= Rat(t.deadline);
    v.tasks.push_back(std::move(tv));
  }
  v.schedulable = true;
  v.total_processors = used;
  return v;
}

}  // namespace spinfed
