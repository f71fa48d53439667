#include "spinfed/dag.hpp"
#include "spinfed/workload.hpp"

#include <doctest.h>

#include "fixtures.hpp"

#include <algorithm>
#include <set>

using namespace spinfed;

namespace {

// independent oracle: enumerate every complete path
Time longest_by_enumeration(const DagTask& task) {
  Adjacency adj = adjacency(task);
  int head = head_of(task);
  Time best = 0;
  long long paths = 0;
  std::vector<int> stack{head};
  std::function<void(int, Time)> walk = [&](int v, Time len) {
    len += task.wcet_of(v);
    const auto& succ = adj.succ[static_cast<std::size_t>(v)];
    if (succ.empty()) {
      REQUIRE(++paths < 2'000'000);
      best = std::max(best, len);
      return;
    }
    for (int s : succ) walk(s, len);
  };
  walk(head, 0);
  return best;
}

DagTask transitive_closure(const DagTask& task) {
  DagTask out = task;
  auto order = topo_order(task);
  REQUIRE(order.has_value());
  Adjacency adj = adjacency(task);
  std::vector<std::set<int>> reach(task.vertex_count());
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    for (int s : adj.succ[static_cast<std::size_t>(*it)]) {
      reach[static_cast<std::size_t>(*it)].insert(s);
      for (int r : reach[static_cast<std::size_t>(s)])
        reach[static_cast<std::size_t>(*it)].insert(r);
    }
  }
  out.edges.clear();
  for (std::size_t v = 0; v < task.vertex_count(); ++v)
    for (int r : reach[v]) out.edges.emplace_back(static_cast<int>(v), r);
  return out;
}

DagTask transitive_reduction(const DagTask& task) {
  DagTask closure = transitive_closure(task);
  std::set<std::pair<int, int>> closure_edges(closure.edges.begin(), closure.edges.end());
  DagTask out = task;
  out.edges.clear();
  for (auto [u, v] : task.edges) {
    bool redundant = false;
    Adjacency adj = adjacency(task);
    for (int w : adj.succ[static_cast<std::size_t>(u)])
      if (w != v && closure_edges.count({w, v})) redundant = true;
    if (!redundant) out.edges.emplace_back(u, v);
  }
  return out;
}

GenConfig small_graph_config(Time v_lo, Time v_hi, double p) {
  GenConfig cfg;
  cfg.vertices = {v_lo, v_hi};
  cfg.wcet = {1, 9};
  cfg.edge_prob = p;
  return cfg;
}

}  // namespace

TEST_CASE("volume sums vertex wcets") {
  CHECK(volume(fixtures::diamond()) == 4);

  DagTask single;
  single.vertices = {{0, 5}};
  CHECK(volume(single) == 5);

  Rng rng(42);
  GenConfig cfg = small_graph_config(50, 50, 0.1);
  DagTask t = gen_dag(cfg, rng);
  Time sum = 0;
  for (const Vertex& v : t.vertices) sum += v.wcet;
  CHECK(volume(t) == sum);
}

TEST_CASE("longest path by topological DP") {
  CHECK(longest_path(fixtures::diamond()) == 3);
  CHECK(longest_path(fixtures::chain({1, 2, 3, 4})) == 10);
  CHECK(longest_path(fixtures::chain({1, 2, 3, 4})) == volume(fixtures::chain({1, 2, 3, 4})));

  DagTask cyclic;
  cyclic.vertices = {{0, 1}, {1, 1}};
  cyclic.edges = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(longest_path(cyclic), StructuralError);
}

TEST_CASE("longest path equals exhaustive enumeration") {
  GenConfig cfg = small_graph_config(10, 30, 0.12);
  for (int i = 0; i < 100; ++i) {
    Rng rng(static_cast<std::uint64_t>(1000 + i));
    DagTask t = gen_dag(cfg, rng);
    CAPTURE(i);
    CHECK(longest_path(t) == longest_by_enumeration(t));
  }
}

TEST_CASE("longest path invariant under transitive closure and reduction") {
  GenConfig cfg = small_graph_config(8, 20, 0.2);
  for (int i = 0; i < 40; ++i) {
    Rng rng(static_cast<std::uint64_t>(7000 + i));
    DagTask t = gen_dag(cfg, rng);
    Time l = longest_path(t);
    CHECK(longest_path(transitive_closure(t)) == l);
    CHECK(longest_path(transitive_reduction(t)) == l);
  }
}

TEST_CASE("longest path never exceeds volume") {
  GenConfig cfg = small_graph_config(5, 40, 0.15);
  for (int i = 0; i < 60; ++i) {
    Rng rng(static_cast<std::uint64_t>(90 + i));
    DagTask t = gen_dag(cfg, rng);
    CHECK(longest_path(t) <= volume(t));
  }
}

TEST_CASE("validate reports structure and density") {
  DagTask d = fixtures::diamond();
  ValidationReport rep = validate(d);
  CHECK(rep.valid());
  CHECK(rep.density == Rat(4, 10));
  CHECK(rep.sequential);  // 0.4 <= 1

  DagTask cyclic;
  cyclic.vertices = {{0, 1}, {1, 1}};
  cyclic.edges = {{0, 1}, {1, 0}};
  cyclic.period = cyclic.deadline = 10;
  CHECK_FALSE(validate(cyclic).acyclic);

  DagTask late = fixtures::diamond();
  late.deadline = 20;
  late.period = 10;
  CHECK_FALSE(validate(late).deadline_ok);
}

TEST_CASE("dummy insertion is neutral and idempotent") {
  DagTask forked;  // two sources, two sinks
  forked.vertices = {{0, 3}, {1, 4}, {2, 5}, {3, 6}};
  forked.edges = {{0, 2}, {1, 3}};
  DagTask n = normalized(forked);
  CHECK(n.vertex_count() == 6);
  CHECK(head_of(n) == 4);
  CHECK(tail_of(n) == 5);
  CHECK(volume(n) == volume(forked));
  CHECK(longest_path(n) == longest_path(forked));

  DagTask again = normalized(n);
  CHECK(again.vertex_count() == n.vertex_count());
  CHECK(again.edges.size() == n.edges.size());
}

TEST_CASE("independent vertices joined through dummies: longest = max wcet") {
  DagTask loose;
  loose.vertices = {{0, 7}, {1, 3}, {2, 9}};
  DagTask n = normalized(loose);
  CHECK(validate(n).unique_head);
  CHECK(longest_path(n) == 9);
  CHECK(volume(n) == 19);
}
