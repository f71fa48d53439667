#include "spinfed/taskset.hpp"

#include <algorithm>
#include <string>

namespace spinfed {

const DagTask& TaskSet::task(int id) const {
  for (const DagTask& t : tasks)
    if (t.id == id) return t;
  throw ParameterError("unknown task id " + std::to_string(id));
}

int TaskSet::priority_rank(int task_id) const {
  for (std::size_t i = 0; i < priority_order.size(); ++i)
    if (priority_order[i] == task_id) return static_cast<int>(i);
  throw ParameterError("task " + std::to_string(task_id) + " missing from priority order");
}

std::vector<int> TaskSet::resources_of(int task_id) const {
  std::vector<int> out;
  for (const auto& [q, u] : task(task_id).resource_usage)
    if (u.count > 0) out.push_back(q);
  return out;
}

Time TaskSet::access_demand(int task_id) const {
  Time sum = 0;
  for (const auto& [q, u] : task(task_id).resource_usage) sum += u.count * u.hold_time;
  return sum;
}

void TaskSet::check() const {
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (tasks[i].id != static_cast<int>(i))
      throw StructuralError("task ids must be dense 0-based indices");
  if (processors <= 0) throw StructuralError("processor count must be positive");
  for (const DagTask& t : tasks)
    for (const auto& [q, u] : t.resource_usage) {
      if (u.count < 0 || u.hold_time < 0)
        throw StructuralError("negative resource usage on task " + std::to_string(t.id));
      if (u.count > 0 && resources.find(q) == resources.end())
        throw StructuralError("task " + std::to_string(t.id) + " references resource " +
                              std::to_string(q) + " absent from the catalog");
    }
  if (!priority_order.empty()) {
    std::vector<int> sorted = priority_order;
    std::sort(sorted.begin(), sorted.end());
    bool ok = sorted.size() == tasks.size();
    for (std::size_t i = 0; ok && i < sorted.size(); ++i) ok = sorted[i] == static_cast<int>(i);
    if (!ok) throw StructuralError("priority_order is not a permutation of task ids");
  }
}

}  // namespace spinfed
