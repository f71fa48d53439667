#include "spinfed/dag.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace spinfed {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  if (r.denominator() == 1)
    os << r.numerator();
  else
    os << r.numerator() << '/' << r.denominator();
  return os.str();
}

Adjacency adjacency(const DagTask& task) {
  Adjacency adj;
  adj.succ.resize(task.vertex_count());
  adj.pred.resize(task.vertex_count());
  for (auto [u, v] : task.edges) {
    adj.succ.at(static_cast<std::size_t>(u)).push_back(v);
    adj.pred.at(static_cast<std::size_t>(v)).push_back(u);
  }
  for (auto& s : adj.succ) std::sort(s.begin(), s.end());
  for (auto& p : adj.pred) std::sort(p.begin(), p.end());
  return adj;
}

std::optional<std::vector<int>> topo_order(const DagTask& task) {
  const auto n = task.vertex_count();
  Adjacency adj = adjacency(task);
  std::vector<int> indeg(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    indeg[v] = static_cast<int>(adj.pred[v].size());

  // Kahn's algorithm; the ready set is kept sorted so the order is canonical.
  std::vector<int> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(static_cast<int>(v));

  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    int v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (int s : adj.succ[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(s)] == 0) {
        ready.push_back(s);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

Time volume(const DagTask& task) {
  Time sum = 0;
  for (const Vertex& v : task.vertices) sum += v.wcet;
  return sum;
}

Time longest_path(const DagTask& task) {
  auto order = topo_order(task);
  if (!order) throw StructuralError("longest_path: graph has a cycle");
  Adjacency adj = adjacency(task);
  std::vector<Time> dist(task.vertex_count(), 0);
  Time best = 0;
  for (int v : *order) {
    auto vi = static_cast<std::size_t>(v);
    Time in = 0;
    for (int p : adj.pred[vi]) in = std::max(in, dist[static_cast<std::size_t>(p)]);
    dist[vi] = in + task.vertices[vi].wcet;
    best = std::max(best, dist[vi]);
  }
  return best;
}

ValidationReport validate(const DagTask& task) {
  ValidationReport rep;
  auto order = topo_order(task);
  rep.acyclic = order.has_value();
  if (!rep.acyclic) rep.findings.push_back("cycle detected");

  Adjacency adj = adjacency(task);
  int heads = 0, tails = 0;
  for (std::size_t v = 0; v < task.vertex_count(); ++v) {
    if (adj.pred[v].empty()) ++heads;
    if (adj.succ[v].empty()) ++tails;
  }
  rep.unique_head = heads == 1;
  rep.unique_tail = tails == 1;
  if (heads != 1)
    rep.findings.push_back("expected exactly one head vertex, found " + std::to_string(heads));
  if (tails != 1)
    rep.findings.push_back("expected exactly one tail vertex, found " + std::to_string(tails));

  rep.deadline_ok = task.deadline > 0 && task.period > 0 && task.deadline <= task.period;
  if (!rep.deadline_ok)
    rep.findings.push_back("constrained-deadline violation: need 0 < D <= T");

  for (const Vertex& v : task.vertices)
    if (v.wcet < 0) rep.findings.push_back("negative wcet at vertex " + std::to_string(v.id));

  if (task.deadline > 0) {
    rep.density = Rat(volume(task), task.deadline);
    rep.sequential = rep.density <= Rat(1);
    if (rep.sequential)
      rep.findings.push_back("density <= 1: sequential, outside analysis scope");
  }
  return rep;
}

int head_of(const DagTask& task) {
  Adjacency adj = adjacency(task);
  int head = -1;
  for (std::size_t v = 0; v < task.vertex_count(); ++v) {
    if (adj.pred[v].empty()) {
      if (head >= 0) throw StructuralError("multiple head vertices");
      head = static_cast<int>(v);
    }
  }
  if (head < 0) throw StructuralError("no head vertex");
  return head;
}

int tail_of(const DagTask& task) {
  Adjacency adj = adjacency(task);
  int tail = -1;
  for (std::size_t v = 0; v < task.vertex_count(); ++v) {
    if (adj.succ[v].empty()) {
      if (tail >= 0) throw StructuralError("multiple tail vertices");
      tail = static_cast<int>(v);
    }
  }
  if (tail < 0) throw StructuralError("no tail vertex");
  return tail;
}

DagTask normalized(const DagTask& task) {
  Adjacency adj = adjacency(task);
  std::vector<int> heads, tails;
  for (std::size_t v = 0; v < task.vertex_count(); ++v) {
    if (adj.pred[v].empty()) heads.push_back(static_cast<int>(v));
    if (adj.succ[v].empty()) tails.push_back(static_cast<int>(v));
  }
  if (task.vertex_count() > 0 && heads.size() == 1 && tails.size() == 1) return task;

  DagTask out = task;
  if (out.vertices.empty()) {
    out.vertices.push_back({0, 0});
    return out;
  }
  if (heads.size() != 1) {
    int h = static_cast<int>(out.vertices.size());
    out.vertices.push_back({h, 0});
    for (int v : heads) out.edges.emplace_back(h, v);
  }
  if (tails.size() != 1) {
    int t = static_cast<int>(out.vertices.size());
    out.vertices.push_back({t, 0});
    for (int v : tails) out.edges.emplace_back(v, t);
  }
  return out;
}

}  // namespace spinfed
