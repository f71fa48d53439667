#ifndef SPINFED_TASKSET_HPP
#define SPINFED_TASKSET_HPP

#include "spinfed/dag.hpp"

#include <set>
#include <vector>

namespace spinfed {

// The analyzed system: tasks, resource catalog, processor budget and an
// optional strict priority order (highest first).
struct TaskSet {
  std::vector<DagTask> tasks;
  std::set<int> resources;
  int processors = 0;                 // total budget m
  std::vector<int> priority_order;    // empty = unset

  const DagTask& task(int id) const;
  bool has_priority_order() const { return !priority_order.empty(); }

  // position in priority_order; lower = higher priority
  int priority_rank(int task_id) const;

  std::vector<int> resources_of(int task_id) const;  // Theta_i, ascending
  Time access_demand(int task_id) const;             // sum over Theta_i of N*L

  // Throws StructuralError when ids are non-dense, a referenced resource is
  // missing from the catalog, or priority_order is not a permutation.
  void check() const;
};

}  // namespace spinfed

#endif
