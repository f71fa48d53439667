#ifndef SPINFED_DAG_HPP
#define SPINFED_DAG_HPP

#include "spinfed/common.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spinfed {

struct Vertex {
  int id = 0;
  Time wcet = 0;
};

// Per (task, resource) access profile: worst-case request count and
// worst-case single hold time.
struct ResourceUsage {
  Time count = 0;      // N_iq
  Time hold_time = 0;  // L_iq, irrelevant (0) when count == 0
};

// One lock-protected segment inside a vertex. Used by the simulator;
// analysis never looks at placements.
struct RequestPlacement {
  int vertex = 0;
  int resource = 0;
  Time offset_in_vertex = 0;
  Time length = 0;
};

struct ValidationReport {
  bool acyclic = false;
  bool unique_head = false;
  bool unique_tail = false;
  bool deadline_ok = false;    // D <= T
  Rat density{0};              // C/D
  bool sequential = false;     // density <= 1: outside the parallel analysis scope
  std::vector<std::string> findings;
  bool valid() const { return acyclic && unique_head && unique_tail && deadline_ok; }
};

// A periodic parallel task: DAG of WCET-weighted vertices plus its
// resource-access profile. Immutable by convention after construction.
struct DagTask {
  int id = 0;
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;  // (pred, succ)
  Time period = 0;    // T
  Time deadline = 0;  // D
  std::map<int, ResourceUsage> resource_usage;       // resource id -> usage
  std::vector<RequestPlacement> request_placement;   // optional, simulator input

  std::size_t vertex_count() const { return vertices.size(); }
  Time wcet_of(int v) const { return vertices.at(static_cast<std::size_t>(v)).wcet; }
  const ResourceUsage* usage(int resource) const {
    auto it = resource_usage.find(resource);
    return it == resource_usage.end() ? nullptr : &it->second;
  }
  bool accesses(int resource) const {
    const ResourceUsage* u = usage(resource);
    return u != nullptr && u->count > 0;
  }
};

// Successor/predecessor adjacency of a task's graph.
struct Adjacency {
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;
};
Adjacency adjacency(const DagTask& task);

// Topological order of vertex ids; empty optional if the graph has a cycle.
std::optional<std::vector<int>> topo_order(const DagTask& task);

// Total WCET over all vertices.
Time volume(const DagTask& task);

// Length of the longest complete path (topological-order DP).
// Throws StructuralError on a cyclic graph.
Time longest_path(const DagTask& task);

ValidationReport validate(const DagTask& task);

// Returns a copy with zero-WCET dummy head/tail inserted if the graph has
// multiple entry or exit points. Idempotent; ids stay dense.
DagTask normalized(const DagTask& task);

// Unique head/tail vertex ids; throws StructuralError if not unique.
int head_of(const DagTask& task);
int tail_of(const DagTask& task);

}  // namespace spinfed

#endif
