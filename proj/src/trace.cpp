#include "spinfed/trace.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace spinfed {

bool KeyPath::contains(int v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

KeyPath extract_key_path(const SimTrace& trace, int job, const DagTask& task) {
  const JobInfo& ji = trace.jobs.at(static_cast<std::size_t>(job));
  if (ji.finish < 0) throw ParameterError("extract_key_path: job not finished");
  Adjacency adj = adjacency(task);

  KeyPath kp;
  int cur = tail_of(task);
  kp.vertices.push_back(cur);
  while (!adj.pred[static_cast<std::size_t>(cur)].empty()) {
    int best = -1;
    Time best_finish = -1;
    for (int p : adj.pred[static_cast<std::size_t>(cur)]) {  // ascending: lowest id wins ties
      Time f = ji.vertex_times.at(static_cast<std::size_t>(p)).finish;
      if (f < 0) throw StructuralError("extract_key_path: predecessor without finish time");
      if (f > best_finish) {
        best_finish = f;
        best = p;
      }
    }
    cur = best;
    kp.vertices.push_back(cur);
  }
  std::reverse(kp.vertices.begin(), kp.vertices.end());
  return kp;
}

namespace {

// disjoint, sorted
std::vector<std::pair<Time, Time>> key_windows(const JobInfo& ji, const KeyPath& kp) {
  std::vector<std::pair<Time, Time>> w;
  for (int v : kp.vertices) {
    const VertexTiming& vt = ji.vertex_times.at(static_cast<std::size_t>(v));
    if (vt.finish > vt.start) w.emplace_back(vt.start, vt.finish);
  }
  std::sort(w.begin(), w.end());
  return w;
}

Time overlap_with(const std::vector<std::pair<Time, Time>>& windows, Time a, Time b) {
  Time sum = 0;
  for (auto [s, e] : windows) {
    Time lo = std::max(a, s), hi = std::min(b, e);
    if (hi > lo) sum += hi - lo;
  }
  return sum;
}

}  // namespace

BlockingDecomposition decompose_blocking(const SimTrace& trace, int job,
                                         const KeyPath& key_path, const TaskSet& ts) {
  const JobInfo& ji = trace.jobs.at(static_cast<std::size_t>(job));
  auto windows = key_windows(ji, key_path);

  BlockingDecomposition d;
  for (const IntervalRecord& r : trace.records) {
    if (r.job != job || r.kind != IntervalKind::spin) continue;
    Time len = r.end - r.start;
    bool intra = r.holder_task == ji.task;
    if (key_path.contains(r.vertex)) {
      (intra ? d.key_intra : d.key_inter) += len;
    } else {
      Time par = overlap_with(windows, r.start, r.end);
      (intra ? d.parallel_intra : d.parallel_inter) += par;
      (intra ? d.delay_intra : d.delay_inter) += len - par;
    }
  }
  return d;
}

JobMetrics job_metrics(const SimTrace& trace, int job) {
  const JobInfo& ji = trace.jobs.at(static_cast<std::size_t>(job));
  JobMetrics m;
  if (ji.finish < 0) return m;
  m.response = ji.finish - ji.release;

  const std::vector<int>& cluster = trace.clusters.at(static_cast<std::size_t>(ji.task));
  for (const IntervalRecord& r : trace.records) {
    if (r.kind == IntervalKind::idle) continue;
    if (r.job == job) {
      (r.kind == IntervalKind::exec ? m.work : m.blocking) += r.end - r.start;
    } else if (std::find(cluster.begin(), cluster.end(), r.processor) != cluster.end()) {
      Time lo = std::max(r.start, ji.release), hi = std::min(r.end, ji.finish);
      if (hi > lo) m.foreign += hi - lo;
    }
  }
  Time supply = static_cast<Time>(cluster.size()) * m.response;
  m.idle = supply - m.work - m.blocking - m.foreign;
  return m;
}

bool job_is_scorable(const SimTrace& trace, int job) {
  const JobInfo& ji = trace.jobs.at(static_cast<std::size_t>(job));
  if (ji.finish < 0) return false;
  if (trace.horizon > 0 && ji.finish > trace.horizon) return false;
  return job_metrics(trace, job).foreign == 0;
}

std::vector<int> scorable_jobs(const SimTrace& trace) {
  std::vector<int> out;
  for (std::size_t j = 0; j < trace.jobs.size(); ++j)
    if (job_is_scorable(trace, static_cast<int>(j))) out.push_back(static_cast<int>(j));
  return out;
}

IdentityReport check_identities(const SimTrace& trace, int job, const KeyPath& key_path,
                                const BlockingDecomposition& d, const TaskSet& ts) {
  const JobInfo& ji = trace.jobs.at(static_cast<std::size_t>(job));
  const DagTask& task = ts.task(ji.task);
  int m = trace.cluster_size(ji.task);

  IdentityReport rep;
  rep.metrics = job_metrics(trace, job);
  const JobMetrics& jm = rep.metrics;
  rep.idle = jm.idle;

  if (ji.finish < 0) {
    rep.violations.push_back("job not finished");
    return rep;
  }
  if (jm.foreign != 0)
    rep.violations.push_back("window not isolated: foreign busy time " +
                             std::to_string(jm.foreign));

  // (a) m (f - r) = B + W + idle, and the six decomposition parts sum to B
  Time supply = Time(m) * jm.response;
  rep.timing_identity =
      jm.foreign == 0 && supply == jm.blocking + jm.work + jm.idle && d.total() == jm.blocking;
  if (supply != jm.blocking + jm.work + jm.idle)
    rep.violations.push_back("time accounting broken: supply " + std::to_string(supply) +
                             " != B+W+idle " +
                             std::to_string(jm.blocking + jm.work + jm.idle));
  if (d.total() != jm.blocking)
    rep.violations.push_back("decomposition sums to " + std::to_string(d.total()) +
                             ", raw spinning is " + std::to_string(jm.blocking));

  // (b) len* = len(key path) + key-path blocking
  for (int v : key_path.vertices) {
    const VertexTiming& vt = ji.vertex_times.at(static_cast<std::size_t>(v));
    rep.len_star += vt.finish - vt.start;
    rep.key_path_len += task.wcet_of(v);
  }
  rep.key_window_identity = rep.len_star == rep.key_path_len + d.key_intra + d.key_inter;
  if (!rep.key_window_identity)
    rep.violations.push_back("key-window identity broken: len* " +
                             std::to_string(rep.len_star) + " != " +
                             std::to_string(rep.key_path_len + d.key_intra + d.key_inter));

  // (c) idle <= len*(m-1) - B_key_intra - B_parallel_intra - B_parallel_inter
  rep.idle_limit = rep.len_star * (m - 1) - d.key_intra - d.parallel_intra - d.parallel_inter;
  rep.idle_bound = jm.idle <= rep.idle_limit;
  if (!rep.idle_bound)
    rep.violations.push_back("idle " + std::to_string(jm.idle) + " exceeds bound " +
                             std::to_string(rep.idle_limit));

  // (d) observed response <= (C + (m-1)L + observed I)/m
  rep.observed_interference = interference_of(d, m);
  rep.response_limit =
      graham_bound(volume(task), longest_path(task), rep.observed_interference, m);
  rep.response_bound = Rat(jm.response) <= rep.response_limit;
  if (!rep.response_bound)
    rep.violations.push_back("response " + std::to_string(jm.response) +
                             " exceeds observed-interference bound " +
                             rat_str(rep.response_limit));

  rep.ok = rep.timing_identity && rep.key_window_identity && rep.idle_bound &&
           rep.response_bound;
  return rep;
}

namespace {

const char* kind_str(IntervalKind k) {
  switch (k) {
    case IntervalKind::exec: return "exec";
    case IntervalKind::spin: return "spin";
    case IntervalKind::idle: return "idle";
  }
  return "?";
}

IntervalKind parse_kind(const std::string& s, int line_no) {
  if (s == "exec") return IntervalKind::exec;
  if (s == "spin") return IntervalKind::spin;
  if (s == "idle") return IntervalKind::idle;
  throw StructuralError("trace line " + std::to_string(line_no) + ": unknown kind '" + s + "'");
}

}  // namespace

void save_trace(const SimTrace& trace, std::ostream& out) {
  out << "# spinfed trace\n";
  if (trace.horizon > 0) out << "# horizon " << trace.horizon << '\n';
  for (std::size_t t = 0; t < trace.clusters.size(); ++t) {
    out << "# cluster " << t << " :";
    for (int p : trace.clusters[t]) out << ' ' << p;
    out << '\n';
  }
  for (std::size_t j = 0; j < trace.jobs.size(); ++j) {
    const JobInfo& ji = trace.jobs[j];
    out << "# job " << j << " task " << ji.task << " seq " << ji.seq << " release "
        << ji.release << " finish " << ji.finish << '\n';
  }
  std::vector<IntervalRecord> sorted = trace.records;
  std::sort(sorted.begin(), sorted.end(), [](const IntervalRecord& a, const IntervalRecord& b) {
    return std::tie(a.start, a.processor, a.end, a.job) <
           std::tie(b.start, b.processor, b.end, b.job);
  });
  for (const IntervalRecord& r : sorted)
    out << r.job << ',' << r.processor << ',' << r.start << ',' << r.end << ','
        << kind_str(r.kind) << ',' << r.vertex << ',' << r.resource << ',' << r.holder_task
        << '\n';
}

SimTrace load_trace(std::istream& in) {
  SimTrace trace;
  std::map<int, JobInfo> jobs;
  std::map<int, std::vector<int>> clusters;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string word;
      ls >> word;
      if (word == "cluster") {
        int task;
        std::string colon;
        ls >> task >> colon;
        int p;
        while (ls >> p) clusters[task].push_back(p);
      } else if (word == "job") {
        int uid;
        ls >> uid;
        JobInfo ji;
        std::string key;
        while (ls >> key) {
          if (key == "task") ls >> ji.task;
          else if (key == "seq") ls >> ji.seq;
          else if (key == "release") ls >> ji.release;
          else if (key == "finish") ls >> ji.finish;
        }
        jobs[uid] = ji;
      }
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 8)
      throw StructuralError("trace line " + std::to_string(line_no) +
                            ": expected 8 comma-separated fields");
    IntervalRecord r;
    try {
      r.job = std::stoi(fields[0]);
      r.processor = std::stoi(fields[1]);
      r.start = std::stoll(fields[2]);
      r.end = std::stoll(fields[3]);
      r.kind = parse_kind(fields[4], line_no);
      r.vertex = std::stoi(fields[5]);
      r.resource = std::stoi(fields[6]);
      r.holder_task = std::stoi(fields[7]);
    } catch (const std::exception&) {
      throw StructuralError("trace line " + std::to_string(line_no) + ": malformed field");
    }
    if (r.end < r.start)
      throw StructuralError("trace line " + std::to_string(line_no) + ": end before start");
    if (r.kind == IntervalKind::idle || r.end == r.start) continue;
    trace.records.push_back(r);
  }

  int max_task = -1;
  for (auto& [uid, ji] : jobs) max_task = std::max(max_task, ji.task);
  for (auto& [t, procs] : clusters) max_task = std::max(max_task, t);
  trace.clusters.resize(static_cast<std::size_t>(max_task + 1));
  for (auto& [t, procs] : clusters) trace.clusters[static_cast<std::size_t>(t)] = procs;

  int next = 0;
  for (auto& [uid, ji] : jobs) {
    if (uid != next++)
      throw StructuralError("trace: job metadata ids must be dense from 0");
    trace.jobs.push_back(ji);
  }
  for (const IntervalRecord& r : trace.records)
    if (r.job < 0 || r.job >= static_cast<int>(trace.jobs.size()))
      throw StructuralError("trace: record references job " + std::to_string(r.job) +
                            " without metadata");
  return trace;
}

namespace {

void validate_replay(SimTrace& trace, const TaskSet& ts) {
  // per-(job, vertex) contiguity, wcet accounting, vertex timing
  for (std::size_t j = 0; j < trace.jobs.size(); ++j) {
    JobInfo& ji = trace.jobs[j];
    const DagTask& task = ts.task(ji.task);
    ji.vertex_times.assign(task.vertex_count(), {});

    std::map<int, std::vector<const IntervalRecord*>> by_vertex;
    for (const IntervalRecord& r : trace.records)
      if (r.job == static_cast<int>(j)) by_vertex[r.vertex].push_back(&r);

    for (auto& [v, recs] : by_vertex) {
      if (v < 0 || v >= static_cast<int>(task.vertex_count()))
        throw StructuralError("replay: unknown vertex " + std::to_string(v));
      std::sort(recs.begin(), recs.end(),
                [](const IntervalRecord* a, const IntervalRecord* b) {
                  return a->start < b->start;
                });
      Time exec_total = 0;
      for (std::size_t k = 0; k < recs.size(); ++k) {
        if (recs[k]->processor != recs[0]->processor)
          throw StructuralError("replay: vertex " + std::to_string(v) +
                                " migrates between processors");
        if (k > 0 && recs[k]->start != recs[k - 1]->end)
          throw StructuralError("replay: vertex " + std::to_string(v) +
                                " has a gap or overlap in its schedule");
        if (recs[k]->kind == IntervalKind::exec) exec_total += recs[k]->end - recs[k]->start;
      }
      if (exec_total != task.wcet_of(v))
        throw StructuralError("replay: vertex " + std::to_string(v) + " executes " +
                              std::to_string(exec_total) + " but wcet is " +
                              std::to_string(task.wcet_of(v)));
      ji.vertex_times[static_cast<std::size_t>(v)] = {recs.front()->start, recs.back()->end};
    }

    // zero-wcet vertices finish the instant their predecessors do
    auto order = topo_order(task);
    if (!order) throw StructuralError("replay: task graph has a cycle");
    Adjacency adj = adjacency(task);
    for (int v : *order) {
      VertexTiming& vt = ji.vertex_times[static_cast<std::size_t>(v)];
      if (vt.done()) continue;
      if (task.wcet_of(v) != 0)
        throw StructuralError("replay: vertex " + std::to_string(v) +
                              " of job " + std::to_string(j) + " is never scheduled");
      Time at = ji.release;
      for (int p : adj.pred[static_cast<std::size_t>(v)]) {
        const VertexTiming& pt = ji.vertex_times[static_cast<std::size_t>(p)];
        if (!pt.done())
          throw StructuralError("replay: vertex ordering unresolved at " + std::to_string(v));
        at = std::max(at, pt.finish);
      }
      vt = {at, at};
    }

    // precedence
    for (auto [u, v] : task.edges) {
      const VertexTiming& ut = ji.vertex_times[static_cast<std::size_t>(u)];
      const VertexTiming& vt = ji.vertex_times[static_cast<std::size_t>(v)];
      if (vt.start < ut.finish)
        throw StructuralError("replay: vertex " + std::to_string(v) + " of job " +
                              std::to_string(j) + " starts before predecessor " +
                              std::to_string(u) + " finishes");
    }

    Time finish = ji.release;
    for (const VertexTiming& vt : ji.vertex_times) {
      if (vt.start < ji.release)
        throw StructuralError("replay: job " + std::to_string(j) + " runs before its release");
      finish = std::max(finish, vt.finish);
    }
    ji.finish = finish;
  }

  // processor exclusivity
  std::map<int, std::vector<const IntervalRecord*>> by_proc;
  for (const IntervalRecord& r : trace.records) by_proc[r.processor].push_back(&r);
  for (auto& [p, recs] : by_proc) {
    std::sort(recs.begin(), recs.end(), [](const IntervalRecord* a, const IntervalRecord* b) {
      return a->start < b->start;
    });
    for (std::size_t k = 1; k < recs.size(); ++k)
      if (recs[k]->start < recs[k - 1]->end)
        throw StructuralError("replay: overlapping intervals on processor " +
                              std::to_string(p));
  }

  // lock exclusivity, and synthesized lock events
  std::map<int, std::vector<const IntervalRecord*>> holds;
  for (const IntervalRecord& r : trace.records)
    if (r.kind == IntervalKind::exec && r.resource >= 0) holds[r.resource].push_back(&r);
  for (auto& [q, recs] : holds) {
    std::sort(recs.begin(), recs.end(), [](const IntervalRecord* a, const IntervalRecord* b) {
      return a->start < b->start;
    });
    for (std::size_t k = 0; k < recs.size(); ++k) {
      if (k > 0 && recs[k]->start < recs[k - 1]->end)
        throw StructuralError("replay: two holders of resource " + std::to_string(q) +
                              " overlap at time " + std::to_string(recs[k]->start));
      trace.lock_events.push_back(
          {recs[k]->start, LockEvent::acquire, q, recs[k]->job, recs[k]->vertex});
      trace.lock_events.push_back(
          {recs[k]->end, LockEvent::release, q, recs[k]->job, recs[k]->vertex});
    }
  }

  // every spin interval names the task actually holding the lock throughout
  for (const IntervalRecord& r : trace.records) {
    if (r.kind != IntervalKind::spin) continue;
    if (r.resource < 0 || r.holder_task < 0)
      throw StructuralError("replay: spin interval without resource or holder");
    trace.lock_events.push_back({r.start, LockEvent::enqueue, r.resource, r.job, r.vertex});
    Time covered = r.start;
    for (const IntervalRecord* h : holds[r.resource]) {
      if (trace.jobs[static_cast<std::size_t>(h->job)].task != r.holder_task) continue;
      if (h->start <= covered && h->end > covered) covered = h->end;
      if (covered >= r.end) break;
    }
    if (covered < r.end)
      throw StructuralError("replay: spin on resource " + std::to_string(r.resource) +
                            " at [" + std::to_string(r.start) + "," + std::to_string(r.end) +
                            ") is not backed by task " + std::to_string(r.holder_task) +
                            " holding it");
  }
  std::sort(trace.lock_events.begin(), trace.lock_events.end(),
            [](const LockEvent& a, const LockEvent& b) { return a.at < b.at; });
}

}  // namespace

SimTrace replay_trace(std::istream& script, const TaskSet& ts) {
  SimTrace trace = load_trace(script);
  if (trace.clusters.size() < ts.tasks.size())
    trace.clusters.resize(ts.tasks.size());
  for (const JobInfo& ji : trace.jobs)
    if (trace.clusters.at(static_cast<std::size_t>(ji.task)).empty())
      throw StructuralError("replay: no cluster declared for task " + std::to_string(ji.task));
  validate_replay(trace, ts);
  Time horizon = 0;
  for (const JobInfo& ji : trace.jobs) horizon = std::max(horizon, ji.finish);
  trace.horizon = horizon;
  return trace;
}

SimTrace replay_trace_file(const std::string& path, const TaskSet& ts) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  return replay_trace(in, ts);
}

}  // namespace spinfed
