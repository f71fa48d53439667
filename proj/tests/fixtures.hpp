#ifndef SPINFED_TESTS_FIXTURES_HPP
#define SPINFED_TESTS_FIXTURES_HPP

#include "spinfed/taskset.hpp"

#include <string>

namespace spinfed::fixtures {

// head -> {a, b} -> tail, unit WCETs
inline DagTask diamond(Time unit = 1) {
  DagTask t;
  t.id = 0;
  for (int v = 0; v < 4; ++v) t.vertices.push_back({v, unit});
  t.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  t.period = t.deadline = 10;
  return t;
}

inline DagTask chain(std::vector<Time> wcets) {
  DagTask t;
  t.id = 0;
  for (std::size_t v = 0; v < wcets.size(); ++v)
    t.vertices.push_back({static_cast<int>(v), wcets[v]});
  for (std::size_t v = 0; v + 1 < wcets.size(); ++v)
    t.edges.emplace_back(static_cast<int>(v), static_cast<int>(v + 1));
  t.period = t.deadline = 1000;
  return t;
}

// Seven-vertex demo task (C=10, L=5, longest path 0-3-5-6) with four unit
// accesses to resource 0, paired with a unit-WCET diamond competitor that
// accesses the same resource twice. Basis of the worked-example traces.
inline TaskSet demo_pair() {
  TaskSet ts;
  DagTask a;
  a.id = 0;
  a.vertices = {{0, 1}, {1, 2}, {2, 1}, {3, 1}, {4, 2}, {5, 1}, {6, 2}};
  a.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {3, 5}, {1, 6}, {2, 6}, {4, 6}, {5, 6}};
  a.period = a.deadline = 100;
  a.resource_usage[0] = {4, 1};
  a.request_placement = {{1, 0, 0, 1}, {1, 0, 1, 1}, {2, 0, 0, 1}, {3, 0, 0, 1}};

  DagTask b;
  b.id = 1;
  for (int v = 0; v < 4; ++v) b.vertices.push_back({v, 1});
  b.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  b.period = b.deadline = 100;
  b.resource_usage[0] = {2, 1};
  b.request_placement = {{1, 0, 0, 1}, {2, 0, 0, 1}};

  ts.tasks = {a, b};
  ts.resources = {0};
  ts.processors = 5;
  return ts;
}

// One job of the demo task on 3 processors, intra-task contention only:
// B=5, W=10, idle=9, finish 8.
inline const char* kTraceOneTask = R"(# cluster 0 : 0 1 2
# job 0 task 0 release 0
0,0,0,1,exec,0,-1,-1
0,0,1,2,exec,1,0,-1
0,0,2,3,exec,1,0,-1
0,0,3,5,exec,4,-1,-1
0,1,1,3,spin,2,0,0
0,1,3,4,exec,2,0,-1
0,2,1,4,spin,3,0,0
0,2,4,5,exec,3,0,-1
0,2,5,6,exec,5,-1,-1
0,2,6,8,exec,6,-1,-1
)";

// The demo task against the diamond competitor: six-part decomposition
// (2,1,1,2,1,1), key path 0-3-5-6, len*=8, idle=12.
inline const char* kTraceTwoTasks = R"(# cluster 0 : 0 1 2
# cluster 1 : 3 4
# job 0 task 0 release 0
# job 1 task 1 release 0
0,0,0,1,exec,0,-1,-1
0,0,1,2,spin,1,0,1
0,0,2,3,exec,1,0,-1
0,0,3,4,exec,1,0,-1
0,0,4,6,exec,4,-1,-1
0,1,1,2,spin,2,0,1
0,1,2,4,spin,2,0,0
0,1,4,5,spin,2,0,1
0,1,5,6,exec,2,0,-1
0,2,3,4,spin,3,0,0
0,2,4,5,spin,3,0,1
0,2,5,6,spin,3,0,0
0,2,6,7,exec,3,0,-1
0,2,7,8,exec,5,-1,-1
0,2,8,10,exec,6,-1,-1
1,3,0,1,exec,0,-1,-1
1,3,1,2,exec,1,0,-1
1,4,1,2,spin,2,0,1
1,4,2,4,spin,2,0,0
1,4,4,5,exec,2,0,-1
1,3,5,6,exec,3,-1,-1
)";

}  // namespace spinfed::fixtures

#endif
