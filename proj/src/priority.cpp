#include "spinfed/priority.hpp"

#include "spinfed/fifo.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace spinfed {

DelayPerRequest delay_per_request(const TaskSet& ts, int task_id, int resource, int m) {
  if (!ts.has_priority_order())
    throw ParameterError("delay_per_request: priority order required");
  if (m < 1) throw ParameterError("delay_per_request: m >= 1 required");
  const DagTask& ti = ts.task(task_id);
  const ResourceUsage* ui = ti.usage(resource);
  if (!ui || ui->count == 0)
    throw ParameterError("delay_per_request: task does not access the resource");

  int rank = ts.priority_rank(task_id);
  Time lower_hold = 0;
  struct Higher {
    Time d, t, n, l;
  };
  std::vector<Higher> higher;
  for (const DagTask& tj : ts.tasks) {
    if (tj.id == task_id) continue;
    const ResourceUsage* uj = tj.usage(resource);
    if (!uj || uj->count == 0) continue;
    if (ts.priority_rank(tj.id) > rank)
      lower_hold = std::max(lower_hold, uj->hold_time);
    else
      higher.push_back({tj.deadline, tj.period, uj->count, uj->hold_time});
  }

  Time own = (std::min<Time>(ui->count, m) - 1) * ui->hold_time;
  Time t = lower_hold;
  while (true) {
    Time next = lower_hold + own;
    for (const Higher& h : higher) next += ceil_div(t + h.d, h.t) * h.n * h.l;
    if (next > ti.deadline) return {next, true};
    if (next == t) return {t, false};
    t = next;  // monotone; each step either grows by >= 1 or fixes
  }
}

Time contention_jobs_per_request(Time dpr, Time other_deadline, Time other_period,
                                 bool both_access) {
  if (other_period <= 0 || other_deadline > other_period)
    throw ParameterError("contention_jobs_per_request: need 0 < D <= T");
  if (!both_access) return 0;
  return ceil_div(dpr + other_deadline, other_period);
}

Rat priority_intra(Time x, Time requests, Time hold_time, int m) {
  return fifo_intra(x, requests, hold_time, m);
}

PriorityContext make_priority_context(const TaskSet& ts, int task_id, int m) {
  if (!ts.has_priority_order())
    throw ParameterError("priority analysis requires a priority order");
  PriorityContext ctx;
  ctx.task = task_id;
  ctx.m = m;
  int rank = ts.priority_rank(task_id);
  for (const DagTask& tj : ts.tasks) {
    if (tj.id == task_id) continue;
    (ts.priority_rank(tj.id) < rank ? ctx.higher : ctx.lower).push_back(tj.id);
  }
  for (int q : ts.resources_of(task_id)) ctx.dpr[q] = delay_per_request(ts, task_id, q, m);
  return ctx;
}

Rat priority_inter(Time x, const TaskSet& ts, const PriorityContext& ctx, int resource) {
  const DagTask& ti = ts.task(ctx.task);
  const ResourceUsage* ui = ti.usage(resource);
  if (!ui || ui->count == 0) return Rat(0);
  if (x < 0 || x > ui->count) throw ParameterError("priority_inter: x outside [0, N]");

  Time queue_slots = ui->count + Time(ctx.m - 1) * x;

  // one lower-priority request can block each of our requests
  Time lower_hold = 0;
  for (int j : ctx.lower) {
    const ResourceUsage* uj = ts.task(j).usage(resource);
    if (uj && uj->count > 0) lower_hold = std::max(lower_hold, uj->hold_time);
  }
  Rat sum = Rat(queue_slots) * lower_hold;

  const DelayPerRequest& dpr = ctx.dpr.at(resource);
  for (int j : ctx.higher) {
    const DagTask& tj = ts.task(j);
    const ResourceUsage* uj = tj.usage(resource);
    if (!uj || uj->count == 0) continue;
    Time eta = contention_jobs(ti.deadline, tj.deadline, tj.period, true);
    Time by_window = Time(ctx.m) * eta * uj->count;
    if (dpr.divergent) {
      // the per-request argument of the min is unusable; fall back to the
      // unconditionally valid window bound
      sum += Rat(by_window) * uj->hold_time;
    } else {
      Time var_delta =
          contention_jobs_per_request(dpr.value, tj.deadline, tj.period, true);
      Time by_request = queue_slots * var_delta * uj->count;
      sum += Rat(std::min(by_window, by_request)) * uj->hold_time;
    }
  }
  return sum;
}

Rat wcrt_priority(const TaskSet& ts, int task_id, int m, InterferenceBound* detail) {
  if (m < 1) throw ParameterError("wcrt_priority: m >= 1 required");
  const DagTask& ti = ts.task(task_id);
  PriorityContext ctx = make_priority_context(ts, task_id, m);

  std::vector<std::pair<int, Time>> limits;
  for (int q : ts.resources_of(task_id)) limits.emplace_back(q, ti.usage(q)->count);

  InterferenceBound ib = max_interference(
      limits, [&](int q, Time x) {
        const ResourceUsage* ui = ti.usage(q);
        InterferencePoint p;
        p.intra = priority_intra(x, ui->count, ui->hold_time, m);
        p.inter = priority_inter(x, ts, ctx, q);
        return p;
      });

  Rat bound = graham_bound(volume(ti), longest_path(ti), ib.total, m);
  if (detail) *detail = std::move(ib);
  return bound;
}

Rat wcrt_priority(const TaskSet& ts, int task_id, int m) {
  return wcrt_priority(ts, task_id, m, nullptr);
}

Verdict partition_priority(const TaskSet& ts) {
  if (ts.tasks.empty()) {
    Verdict v;
    v.schedulable = true;
    return v;
  }
  if (!ts.has_priority_order())
    throw ParameterError("partition_priority: priority order required");
  std::vector<int> init = federated_initial_assignment(ts);
  Verdict v;
  v.schedulable = true;
  int used = 0;
  for (const DagTask& t : ts.tasks) {
    int m = init[static_cast<std::size_t>(t.id)];
    TaskVerdict tv;
    tv.task = t.id;
    while (true) {
      tv.bound = wcrt_priority(ts, t.id, m, &tv.interference);
      tv.fits = tv.bound <= Rat(t.deadline);
      if (tv.fits || m > ts.processors) break;
      ++m;
    }
    tv.m = m;
    used += m;
    v.schedulable = v.schedulable && tv.fits;
    v.tasks.push_back(std::move(tv));
  }
  v.total_processors = used;
  if (used > ts.processors) v.schedulable = false;
  if (!v.schedulable) v.reason = InfeasibleReason::budget_exhausted;
  return v;
}

PrioritySearchResult search_priority_assignment(const TaskSet& ts, int cap) {
  if (static_cast<int>(ts.tasks.size()) > cap)
    throw ParameterError("priority search: " + std::to_string(ts.tasks.size()) +
                         " tasks exceed the permutation cap of " + std::to_string(cap));
  std::vector<int> perm(ts.tasks.size());
  std::iota(perm.begin(), perm.end(), 0);

  PrioritySearchResult res;
  TaskSet trial = ts;
  do {
    ++res.orders_tried;
    trial.priority_order = perm;
    Verdict v = partition_priority(trial);
    if (v.schedulable) {
      res.order = perm;
      res.verdict = std::move(v);
      return res;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return res;
}

}  // namespace spinfed
