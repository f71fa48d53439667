#ifndef SPINFED_TRACE_HPP
#define SPINFED_TRACE_HPP

#include "spinfed/framework.hpp"
#include "spinfed/taskset.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace spinfed {

enum class IntervalKind { exec, spin, idle };

// One labeled interval of one processor. `resource` marks lock holding for
// exec records and the awaited lock for spin records; spin records carry the
// task holding the lock for the whole interval (records are split whenever
// the holder changes).
struct IntervalRecord {
  int job = -1;
  int processor = -1;
  Time start = 0;
  Time end = 0;
  IntervalKind kind = IntervalKind::exec;
  int vertex = -1;
  int resource = -1;
  int holder_task = -1;
};

struct VertexTiming {
  Time start = -1;
  Time finish = -1;
  bool done() const { return finish >= 0; }
};

struct JobInfo {
  int task = -1;
  long long seq = 0;  // k-th release of its task
  Time release = 0;
  Time finish = -1;  // -1 while unfinished
  std::vector<VertexTiming> vertex_times;
};

struct LockEvent {
  enum Kind { enqueue, acquire, release };
  Time at = 0;
  Kind kind = enqueue;
  int resource = -1;
  int job = -1;
  int vertex = -1;
};

struct SimTrace {
  std::vector<JobInfo> jobs;
  std::vector<IntervalRecord> records;
  std::vector<std::vector<int>> clusters;  // per task id: processor ids
  std::vector<LockEvent> lock_events;
  Time horizon = 0;

  int cluster_size(int task) const {
    return static_cast<int>(clusters.at(static_cast<std::size_t>(task)).size());
  }
};

// Head-to-tail vertex sequence chosen backward by latest finish time
// (ties to the lowest vertex id).
struct KeyPath {
  std::vector<int> vertices;
  bool contains(int v) const;
};

KeyPath extract_key_path(const SimTrace& trace, int job, const DagTask& task);

BlockingDecomposition decompose_blocking(const SimTrace& trace, int job,
                                         const KeyPath& key_path, const TaskSet& ts);

// Raw per-job interval sums.
struct JobMetrics {
  Time work = 0;     // W: executing
  Time blocking = 0; // B: spinning
  Time idle = 0;     // cluster idle within [release, finish)
  Time foreign = 0;  // busy time of other jobs on the cluster within the window
  Time response = 0;
};
JobMetrics job_metrics(const SimTrace& trace, int job);

// A job usable for per-job accounting: finished, fully inside the horizon,
// and with no sibling job active in its window.
bool job_is_scorable(const SimTrace& trace, int job);
std::vector<int> scorable_jobs(const SimTrace& trace);

struct IdentityReport {
  bool ok = false;
  bool timing_identity = false;     // m (f - r) == B + W + idle, decomposition sums to B
  bool key_window_identity = false; // len* == len(key path) + key-path blocking
  bool idle_bound = false;          // idle <= len*(m-1) - B_key_intra - B_parallel
  bool response_bound = false;      // f - r <= (C + (m-1)L + observed I)/m
  Time len_star = 0;
  Time key_path_len = 0;
  Time idle = 0;
  Time idle_limit = 0;
  Rat observed_interference{0};
  Rat response_limit{0};
  JobMetrics metrics;
  std::vector<std::string> violations;
};

IdentityReport check_identities(const SimTrace& trace, int job, const KeyPath& key_path,
                                const BlockingDecomposition& decomp, const TaskSet& ts);

// Line-delimited trace text: `job,processor,start,end,kind,vertex,resource,holder_task`
// plus `# cluster`/`# job` metadata lines. Replay scripts use the same format.
void save_trace(const SimTrace& trace, std::ostream& out);
SimTrace load_trace(std::istream& in);

// Builds a trace from a schedule script, validating lock exclusivity,
// per-vertex contiguity and WCET, and precedence. Throws StructuralError
// with a line diagnostic on any inconsistency.
SimTrace replay_trace(std::istream& script, const TaskSet& ts);
SimTrace replay_trace_file(const std::string& path, const TaskSet& ts);

}  // namespace spinfed

#endif
