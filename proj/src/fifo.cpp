#include "spinfed/fifo.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace spinfed {

Rat fifo_intra_discount(Time requests, int m) {
  if (m < 1) throw ParameterError("fifo_intra_discount: m >= 1 required");
  if (requests < 0) throw ParameterError("fifo_intra_discount: negative request count");
  Time alpha = std::min<Time>(requests, m);
  return Rat(alpha) * (Rat(m) - Rat(alpha + 1, 2));
}

Rat fifo_intra(Time x, Time requests, Time hold_time, int m) {
  if (x < 0 || x > requests) throw ParameterError("fifo_intra: x outside [0, N]");
  Rat discount = x == 0 ? fifo_intra_discount(requests, m) : Rat(0);
  return (Rat(requests - x) * (m - 1) - discount) * hold_time;
}

Rat fifo_inter(Time x, Time own_requests, int m,
               const std::vector<FifoCompetitor>& competitors) {
  if (x < 0 || x > own_requests) throw ParameterError("fifo_inter: x outside [0, N]");
  Time queue_slots = own_requests + Time(m - 1) * x;
  Rat sum{0};
  for (const FifoCompetitor& c : competitors) {
    Time by_window = Time(m) * c.eta * c.requests;
    Time by_queue = queue_slots * c.m;
    sum += Rat(std::min(by_window, by_queue)) * c.hold;
  }
  return sum;
}

namespace {

std::vector<FifoCompetitor> competitors_on(const TaskSet& ts, int task_id, int q,
                                           const std::vector<int>& m_vector) {
  const DagTask& ti = ts.task(task_id);
  std::vector<FifoCompetitor> out;
  for (const DagTask& tj : ts.tasks) {
    if (tj.id == task_id) continue;
    const ResourceUsage* uj = tj.usage(q);
    if (!uj || uj->count == 0) continue;
    FifoCompetitor c;
    c.m = m_vector.at(static_cast<std::size_t>(tj.id));
    c.eta = contention_jobs(ti.deadline, tj.deadline, tj.period, true);
    c.requests = uj->count;
    c.hold = uj->hold_time;
    out.push_back(c);
  }
  return out;
}

}  // namespace

Rat wcrt_fifo(const TaskSet& ts, int task_id, const std::vector<int>& m_vector,
              InterferenceBound* detail) {
  if (m_vector.size() != ts.tasks.size())
    throw ParameterError("wcrt_fifo: assignment size mismatch");
  for (int m : m_vector)
    if (m < 1) throw ParameterError("wcrt_fifo: every task needs at least one processor");

  const DagTask& ti = ts.task(task_id);
  int m = m_vector[static_cast<std::size_t>(task_id)];

  std::vector<std::pair<int, Time>> limits;
  for (int q : ts.resources_of(task_id)) limits.emplace_back(q, ti.usage(q)->count);

  InterferenceBound ib = max_interference(
      limits, [&](int q, Time x) {
        const ResourceUsage* ui = ti.usage(q);
        InterferencePoint p;
        p.intra = fifo_intra(x, ui->count, ui->hold_time, m);
        p.inter = fifo_inter(x, ui->count, m, competitors_on(ts, task_id, q, m_vector));
        return p;
      });

  Rat bound = graham_bound(volume(ti), longest_path(ti), ib.total, m);
  if (detail) *detail = std::move(ib);
  return bound;
}

Rat wcrt_fifo(const TaskSet& ts, int task_id, const std::vector<int>& m_vector) {
  return wcrt_fifo(ts, task_id, m_vector, nullptr);
}

std::vector<int> federated_initial_assignment(const TaskSet& ts) {
  std::vector<int> m;
  for (const DagTask& t : ts.tasks) {
    Time c = volume(t);
    Time l = longest_path(t);
    if (t.deadline <= l)
      throw StructuralError("task " + std::to_string(t.id) +
                            ": deadline does not exceed the longest path; "
                            "infeasible on any processor count");
    m.push_back(static_cast<int>(std::max<Time>(1, ceil_div(c - l, t.deadline - l))));
  }
  return m;
}

namespace {

Verdict finish_verdict(const TaskSet& ts, const std::vector<int>& m, int sweeps) {
  Verdict v;
  v.sweeps = sweeps;
  v.schedulable = true;
  for (const DagTask& t : ts.tasks) {
    TaskVerdict tv;
    tv.task = t.id;
    tv.m = m[static_cast<std::size_t>(t.id)];
    tv.bound = wcrt_fifo(ts, t.id, m, &tv.interference);
    tv.fits = tv.bound <= Rat(t.deadline);
    v.schedulable = v.schedulable && tv.fits;
    v.tasks.push_back(std::move(tv));
  }
  v.total_processors = std::accumulate(m.begin(), m.end(), 0);
  return v;
}

}  // namespace

Verdict partition_fifo(const TaskSet& ts) {
  std::vector<int> m = federated_initial_assignment(ts);
  int sweeps = 0;
  while (true) {
    ++sweeps;
    bool update = false;
    for (const DagTask& t : ts.tasks) {  // ascending id; later tasks see earlier bumps
      Rat r = wcrt_fifo(ts, t.id, m);
      if (r > Rat(t.deadline)) {
        ++m[static_cast<std::size_t>(t.id)];
        update = true;
      }
    }
    if (std::accumulate(m.begin(), m.end(), 0) > ts.processors) {
      Verdict v = finish_verdict(ts, m, sweeps);
      v.schedulable = false;
      v.reason = InfeasibleReason::budget_exhausted;
      return v;
    }
    if (!update) return finish_verdict(ts, m, sweeps);
  }
}

Verdict check_fifo(const TaskSet& ts, const std::vector<int>& m_vector) {
  Verdict v = finish_verdict(ts, m_vector, 0);
  if (v.total_processors > ts.processors) {
    v.schedulable = false;
    v.reason = InfeasibleReason::budget_exhausted;
  }
  return v;
}

}  // namespace spinfed
