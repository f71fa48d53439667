#include "spinfed/simulator.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

namespace spinfed {

Order parse_order(const std::string& name) {
  if (name == "unordered") return Order::unordered;
  if (name == "fifo") return Order::fifo;
  if (name == "priority") return Order::priority;
  throw ParameterError("unknown serving order '" + name + "'");
}

const char* order_str(Order o) {
  switch (o) {
    case Order::unordered: return "unordered";
    case Order::fifo: return "fifo";
    case Order::priority: return "priority";
  }
  return "?";
}

namespace {

constexpr Time kInf = std::numeric_limits<Time>::max();

struct Segment {
  Time length = 0;
  int resource = -1;  // -1: plain computation
};

// Splits each vertex into compute / critical-section segments from the
// task's request placement.
std::vector<std::vector<Segment>> build_segments(const DagTask& task) {
  std::vector<std::vector<RequestPlacement>> per_vertex(task.vertex_count());
  std::map<int, Time> counts;
  for (const RequestPlacement& p : task.request_placement) {
    if (p.vertex < 0 || p.vertex >= static_cast<int>(task.vertex_count()))
      throw StructuralError("placement references unknown vertex");
    if (p.length <= 0) throw StructuralError("placement with non-positive length");
    const ResourceUsage* u = task.usage(p.resource);
    if (!u || p.length > u->hold_time)
      throw StructuralError("placement longer than the declared hold time");
    per_vertex[static_cast<std::size_t>(p.vertex)].push_back(p);
    ++counts[p.resource];
  }
  for (const auto& [q, u] : task.resource_usage)
    if (u.count > 0 && counts[q] != u.count)
      throw StructuralError("task " + std::to_string(task.id) + ": placement count for resource " +
                            std::to_string(q) + " does not match the declared N");

  std::vector<std::vector<Segment>> segs(task.vertex_count());
  for (std::size_t v = 0; v < task.vertex_count(); ++v) {
    auto& ps = per_vertex[v];
    std::sort(ps.begin(), ps.end(), [](const RequestPlacement& a, const RequestPlacement& b) {
      return a.offset_in_vertex < b.offset_in_vertex;
    });
    Time cursor = 0;
    for (const RequestPlacement& p : ps) {
      if (p.offset_in_vertex < cursor)
        throw StructuralError("overlapping placements in vertex " + std::to_string(v));
      if (p.offset_in_vertex > cursor)
        segs[v].push_back({p.offset_in_vertex - cursor, -1});
      segs[v].push_back({p.length, p.resource});
      cursor = p.offset_in_vertex + p.length;
    }
    Time wcet = task.vertices[v].wcet;
    if (cursor > wcet)
      throw StructuralError("placements exceed the wcet of vertex " + std::to_string(v));
    if (cursor < wcet) segs[v].push_back({wcet - cursor, -1});
  }
  return segs;
}

struct Waiter {
  int proc = -1;
  int task = -1;
  long long enq_seq = 0;
};

struct Lock {
  bool held = false;
  int holder_task = -1;
  std::vector<Waiter> queue;  // kept in enqueue order
};

struct Proc {
  int task = -1;  // cluster owner
  int job = -1;   // -1: idle
  int vertex = -1;
  std::size_t seg = 0;
  Time seg_start = 0;
  Time seg_end = kInf;
  bool spinning = false;
  Time spin_mark = 0;
};

struct Engine {
  const TaskSet& ts;
  const SimConfig& cfg;
  Rng rng;
  SimTrace trace;

  std::vector<std::vector<std::vector<Segment>>> segments;  // per task, vertex
  std::vector<Adjacency> adj;
  std::vector<Proc> procs;
  std::map<int, Lock> locks;
  std::vector<Time> next_release;
  std::vector<long long> released_count;
  // per task: ready (job, vertex) entries, kept sorted on scan
  struct Ready {
    long long job_seq;
    int job;
    int vertex;
  };
  std::vector<std::vector<Ready>> ready;
  std::vector<std::vector<int>> job_preds_left;  // per job uid: per-vertex indegree
  long long enq_counter = 0;
  long long unfinished_jobs = 0;

  Engine(const TaskSet& ts_, const SimConfig& cfg_)
      : ts(ts_), cfg(cfg_), rng(cfg_.seed) {}

  void emit(IntervalKind kind, int job, int proc, Time s, Time e, int vertex, int resource,
            int holder) {
    if (e <= s) return;
    trace.records.push_back({job, proc, s, e, kind, vertex, resource, holder});
  }

  void mark_eligible(int job, int vertex, Time t) {
    JobInfo& ji = trace.jobs[static_cast<std::size_t>(job)];
    const DagTask& task = ts.tasks[static_cast<std::size_t>(ji.task)];
    if (task.wcet_of(vertex) == 0) {
      // dummy vertices complete instantly without occupying a processor
      ji.vertex_times[static_cast<std::size_t>(vertex)] = {t, t};
      finish_vertex(job, vertex, t);
    } else {
      ready[static_cast<std::size_t>(ji.task)].push_back({ji.seq, job, vertex});
    }
  }

  void finish_vertex(int job, int vertex, Time t) {
    JobInfo& ji = trace.jobs[static_cast<std::size_t>(job)];
    const DagTask& task = ts.tasks[static_cast<std::size_t>(ji.task)];
    auto& left = job_preds_left[static_cast<std::size_t>(job)];
    const auto& succ = adj[static_cast<std::size_t>(ji.task)].succ[static_cast<std::size_t>(vertex)];
    for (int s : succ)
      if (--left[static_cast<std::size_t>(s)] == 0) mark_eligible(job, s, t);

    bool all_done = true;
    for (const VertexTiming& vt : ji.vertex_times)
      if (!vt.done()) {
        all_done = false;
        break;
      }
    if (all_done && ji.finish < 0) {
      ji.finish = t;
      --unfinished_jobs;
    }
  }

  void release_job(int task_id, Time t) {
    const DagTask& task = ts.tasks[static_cast<std::size_t>(task_id)];
    int uid = static_cast<int>(trace.jobs.size());
    JobInfo ji;
    ji.task = task_id;
    ji.seq = released_count[static_cast<std::size_t>(task_id)]++;
    ji.release = t;
    ji.vertex_times.assign(task.vertex_count(), {});
    trace.jobs.push_back(std::move(ji));
    ++unfinished_jobs;

    std::vector<int> indeg(task.vertex_count(), 0);
    for (std::size_t v = 0; v < task.vertex_count(); ++v)
      indeg[v] = static_cast<int>(adj[static_cast<std::size_t>(task_id)].pred[v].size());
    job_preds_left.push_back(indeg);

    for (std::size_t v = 0; v < task.vertex_count(); ++v)
      if (indeg[v] == 0) mark_eligible(uid, static_cast<int>(v), t);
  }

  // called when a lock is released at time t: close the spin records of all
  // waiters against the departing holder
  void close_spins(Lock& lk, int released_holder_task, int resource, Time t) {
    for (Waiter& w : lk.queue) {
      Proc& p = procs[static_cast<std::size_t>(w.proc)];
      emit(IntervalKind::spin, p.job, w.proc, p.spin_mark, t, p.vertex, resource,
           released_holder_task);
      p.spin_mark = t;
    }
  }

  void start_segment(int proc_id, Time t) {
    Proc& p = procs[static_cast<std::size_t>(proc_id)];
    const JobInfo& ji = trace.jobs[static_cast<std::size_t>(p.job)];
    const Segment& seg =
        segments[static_cast<std::size_t>(ji.task)][static_cast<std::size_t>(p.vertex)][p.seg];
    p.seg_start = t;
    if (seg.resource < 0) {
      p.seg_end = t + seg.length;
      return;
    }
    Lock& lk = locks[seg.resource];
    if (!lk.held && lk.queue.empty()) {
      lk.held = true;
      lk.holder_task = ji.task;
      trace.lock_events.push_back({t, LockEvent::acquire, seg.resource, p.job, p.vertex});
      p.seg_end = t + seg.length;
    } else {
      lk.queue.push_back({proc_id, ji.task, enq_counter++});
      trace.lock_events.push_back({t, LockEvent::enqueue, seg.resource, p.job, p.vertex});
      p.spinning = true;
      p.spin_mark = t;
      p.seg_end = kInf;
    }
  }

  void complete_segment(int proc_id, Time t) {
    Proc& p = procs[static_cast<std::size_t>(proc_id)];
    const JobInfo& ji = trace.jobs[static_cast<std::size_t>(p.job)];
    const auto& segs =
        segments[static_cast<std::size_t>(ji.task)][static_cast<std::size_t>(p.vertex)];
    const Segment& seg = segs[p.seg];

    emit(IntervalKind::exec, p.job, proc_id, p.seg_start, t, p.vertex, seg.resource, -1);
    if (seg.resource >= 0) {
      Lock& lk = locks[seg.resource];
      lk.held = false;
      trace.lock_events.push_back({t, LockEvent::release, seg.resource, p.job, p.vertex});
      close_spins(lk, ji.task, seg.resource, t);
    }

    ++p.seg;
    if (p.seg < segs.size()) {
      start_segment(proc_id, t);
      return;
    }
    // vertex complete
    trace.jobs[static_cast<std::size_t>(p.job)]
        .vertex_times[static_cast<std::size_t>(p.vertex)]
        .finish = t;
    int job = p.job, vertex = p.vertex;
    p.job = -1;
    p.vertex = -1;
    p.seg_end = kInf;
    finish_vertex(job, vertex, t);
  }

  std::size_t choose_waiter(const Lock& lk) {
    switch (cfg.order) {
      case Order::fifo: {
        std::size_t best = 0;
        for (std::size_t i = 1; i < lk.queue.size(); ++i)
          if (lk.queue[i].enq_seq < lk.queue[best].enq_seq) best = i;
        return best;
      }
      case Order::priority: {
        std::size_t best = 0;
        int best_rank = ts.priority_rank(lk.queue[0].task);
        for (std::size_t i = 1; i < lk.queue.size(); ++i) {
          int rank = ts.priority_rank(lk.queue[i].task);
          // FIFO among equal priorities: the queue is in enqueue order
          if (rank < best_rank) {
            best = i;
            best_rank = rank;
          }
        }
        return best;
      }
      case Order::unordered:
        if (cfg.grant == GrantMode::adversarial) {
          for (std::size_t i = 0; i < lk.queue.size(); ++i)
            if (lk.queue[i].task != cfg.adversarial_target) return i;
          return 0;
        }
        return rng.pick(lk.queue.size());
    }
    return 0;
  }

  void grant_pending(Time t) {
    for (auto& [q, lk] : locks) {  // ascending resource id
      while (!lk.held && !lk.queue.empty()) {
        std::size_t w = choose_waiter(lk);
        Waiter chosen = lk.queue[w];
        lk.queue.erase(lk.queue.begin() + static_cast<long>(w));
        Proc& p = procs[static_cast<std::size_t>(chosen.proc)];
        p.spinning = false;
        lk.held = true;
        lk.holder_task = chosen.task;
        trace.lock_events.push_back({t, LockEvent::acquire, q, p.job, p.vertex});
        const JobInfo& ji = trace.jobs[static_cast<std::size_t>(p.job)];
        const Segment& seg =
            segments[static_cast<std::size_t>(ji.task)][static_cast<std::size_t>(p.vertex)][p.seg];
        p.seg_start = t;
        p.seg_end = t + seg.length;
        break;  // one grant per release; the next release re-enters here
      }
    }
  }

  void dispatch(Time t) {
    for (std::size_t task_id = 0; task_id < ts.tasks.size(); ++task_id) {
      auto& rq = ready[task_id];
      if (rq.empty()) continue;
      for (int proc_id : trace.clusters[task_id]) {
        Proc& p = procs[static_cast<std::size_t>(proc_id)];
        if (p.job >= 0) continue;
        if (rq.empty()) break;
        // earliest job first, then lowest vertex id
        std::size_t best = 0;
        for (std::size_t i = 1; i < rq.size(); ++i)
          if (std::tie(rq[i].job_seq, rq[i].vertex) < std::tie(rq[best].job_seq, rq[best].vertex))
            best = i;
        Ready r = rq[best];
        rq.erase(rq.begin() + static_cast<long>(best));
        p.job = r.job;
        p.vertex = r.vertex;
        p.seg = 0;
        trace.jobs[static_cast<std::size_t>(r.job)]
            .vertex_times[static_cast<std::size_t>(r.vertex)]
            .start = t;
        start_segment(proc_id, t);
      }
    }
  }

  SimTrace run() {
    const std::size_t n = ts.tasks.size();
    segments.reserve(n);
    for (const DagTask& task : ts.tasks) {
      segments.push_back(build_segments(task));
      adj.push_back(adjacency(task));
      head_of(task);  // unique head/tail required
      tail_of(task);
    }
    if (cfg.m_vector.size() != n)
      throw ParameterError("simulate: processor assignment size mismatch");
    if (cfg.order == Order::priority && !ts.has_priority_order())
      throw ParameterError("simulate: priority order required for priority discipline");

    int next_proc = 0;
    trace.clusters.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (cfg.m_vector[i] < 1) throw ParameterError("simulate: every cluster needs a processor");
      for (int k = 0; k < cfg.m_vector[i]; ++k) {
        trace.clusters[i].push_back(next_proc);
        procs.push_back({});
        procs.back().task = static_cast<int>(i);
        ++next_proc;
      }
    }

    Time horizon = cfg.horizon;
    if (horizon <= 0) {
      Time max_t = 0;
      for (const DagTask& t : ts.tasks) max_t = std::max(max_t, t.period);
      horizon = 6 * max_t;
    }
    trace.horizon = horizon;

    next_release.assign(n, 0);
    released_count.assign(n, 0);
    ready.resize(n);

    long long guard = 0;
    while (true) {
      if (++guard > 50'000'000) throw StructuralError("simulate: runaway event loop");

      Time t = kInf;
      for (std::size_t i = 0; i < n; ++i) {
        bool more = next_release[i] < horizon &&
                    (cfg.max_jobs_per_task < 0 || released_count[i] < cfg.max_jobs_per_task);
        if (more) t = std::min(t, next_release[i]);
      }
      for (const Proc& p : procs)
        if (p.job >= 0 && !p.spinning) t = std::min(t, p.seg_end);
      if (t == kInf) break;  // nothing executing, nothing to release: all jobs done

      // releases
      for (std::size_t i = 0; i < n; ++i) {
        bool more = next_release[i] < horizon &&
                    (cfg.max_jobs_per_task < 0 || released_count[i] < cfg.max_jobs_per_task);
        if (more && next_release[i] == t) {
          release_job(static_cast<int>(i), t);
          next_release[i] += ts.tasks[i].period;
        }
      }
      // segment completions (which release locks) in processor order
      for (std::size_t pid = 0; pid < procs.size(); ++pid)
        if (procs[pid].job >= 0 && !procs[pid].spinning && procs[pid].seg_end == t)
          complete_segment(static_cast<int>(pid), t);
      // grants after all same-instant releases are in the queues
      grant_pending(t);
      // work-conserving dispatch; a fresh vertex may acquire a free lock
      dispatch(t);
    }
    return trace;
  }
};

}  // namespace

SimTrace simulate(const TaskSet& ts, const SimConfig& cfg) {
  Engine e(ts, cfg);
  return e.run();
}

}  // namespace spinfed
