#include "spinfed/workload.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace spinfed {

namespace {

// union-find over vertex ids
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

DagTask gen_dag(const GenConfig& cfg, Rng& rng) {
  if (!cfg.vertices.valid() || cfg.vertices.lo < 1) throw GenError("bad vertex-count range");
  if (!cfg.wcet.valid() || cfg.wcet.lo < 1) throw GenError("bad wcet range");

  DagTask t;
  Time n = rng.uniform(cfg.vertices.lo, cfg.vertices.hi);
  for (Time v = 0; v < n; ++v)
    t.vertices.push_back({static_cast<int>(v), rng.uniform(cfg.wcet.lo, cfg.wcet.hi)});

  // forward edges only: acyclic by construction
  for (Time u = 0; u < n; ++u)
    for (Time v = u + 1; v < n; ++v)
      if (rng.bernoulli(cfg.edge_prob)) t.edges.emplace_back(static_cast<int>(u),
                                                             static_cast<int>(v));

  // minimal augmentation: merge weak components in ascending min-id order,
  // each new edge directed low index -> high index
  Dsu dsu(static_cast<std::size_t>(n));
  for (auto [u, v] : t.edges) dsu.unite(u, v);
  std::map<int, int> root_min;  // component root -> smallest member id
  for (Time v = 0; v < n; ++v) {
    int r = dsu.find(static_cast<int>(v));
    if (!root_min.count(r)) root_min[r] = static_cast<int>(v);
  }
  std::vector<int> reps;
  for (auto& [r, m] : root_min) reps.push_back(m);
  std::sort(reps.begin(), reps.end());
  for (std::size_t k = 1; k < reps.size(); ++k) {
    int a = reps[0], b = reps[k];
    t.edges.emplace_back(std::min(a, b), std::max(a, b));
    dsu.unite(a, b);
  }

  return normalized(t);
}

std::vector<RequestPlacement> place_requests(const DagTask& task, Rng& rng) {
  std::vector<Time> used(task.vertex_count(), 0);
  std::vector<RequestPlacement> out;
  for (const auto& [q, u] : task.resource_usage) {  // ascending resource id
    if (u.count == 0) continue;
    for (Time k = 0; k < u.count; ++k) {
      // the first request realizes the declared worst-case hold time
      Time len = k == 0 ? u.hold_time : rng.uniform(1, u.hold_time);
      std::vector<int> candidates;
      for (std::size_t v = 0; v < task.vertex_count(); ++v)
        if (used[v] + len <= task.vertices[v].wcet) candidates.push_back(static_cast<int>(v));
      if (candidates.empty())
        throw GenError("task " + std::to_string(task.id) +
                       ": no vertex has capacity for a request of length " +
                       std::to_string(len) + " on resource " + std::to_string(q));
      int v = candidates[rng.pick(candidates.size())];
      out.push_back({v, q, used[static_cast<std::size_t>(v)], len});
      used[static_cast<std::size_t>(v)] += len;
    }
  }
  std::sort(out.begin(), out.end(), [](const RequestPlacement& a, const RequestPlacement& b) {
    return std::tie(a.vertex, a.offset_in_vertex) < std::tie(b.vertex, b.offset_in_vertex);
  });
  return out;
}

namespace {

// deadline from a sampled longest-path/deadline ratio; implicit period
void assign_deadline(DagTask& t, const GenConfig& cfg, Rng& rng) {
  if (cfg.ld_ratios.empty()) throw GenError("no L/D ratios configured");
  Rat ratio = cfg.ld_ratios[rng.pick(cfg.ld_ratios.size())];
  Rat d = Rat(longest_path(t)) / ratio;
  t.deadline = rat_ceil(d);
  t.period = t.deadline;
}

}  // namespace

TaskSet gen_taskset(const GenConfig& cfg, std::uint64_t seed) {
  if (cfg.tasks < 0) throw GenError("negative task count");
  Rng rng(seed);
  TaskSet ts;

  for (int i = 0; i < cfg.tasks; ++i) {
    DagTask t;
    bool heavy = false;
    for (int attempt = 0; attempt < cfg.density_retries && !heavy; ++attempt) {
      t = gen_dag(cfg, rng);
      assign_deadline(t, cfg, rng);
      heavy = Rat(volume(t), t.deadline) > Rat(1);
    }
    if (!heavy)
      throw GenError("could not generate a heavy task (density > 1); "
                     "widen the vertex/wcet ranges or lower the L/D ratios");
    t.id = i;
    ts.tasks.push_back(std::move(t));
  }

  Time n_res = rng.uniform(cfg.resource_types.lo, cfg.resource_types.hi);
  for (Time q = 0; q < n_res; ++q) {
    ts.resources.insert(static_cast<int>(q));
    Time total = rng.uniform(cfg.total_accesses.lo, cfg.total_accesses.hi);
    Time max_hold = rng.uniform(cfg.max_hold.lo, cfg.max_hold.hi);
    if (cfg.tasks == 0) continue;
    std::vector<Time> share(static_cast<std::size_t>(cfg.tasks), 0);
    for (Time k = 0; k < total; ++k) ++share[rng.pick(share.size())];
    for (int i = 0; i < cfg.tasks; ++i) {
      if (share[static_cast<std::size_t>(i)] == 0) continue;
      Time hold = rng.uniform(1, max_hold);
      ts.tasks[static_cast<std::size_t>(i)].resource_usage[static_cast<int>(q)] = {
          share[static_cast<std::size_t>(i)], hold};
    }
  }

  for (DagTask& t : ts.tasks) t.request_placement = place_requests(t, rng);

  // m = ceil(U_sum / U_norm)
  Rat u_sum{0};
  for (const DagTask& t : ts.tasks) u_sum += Rat(volume(t), t.period);
  if (cfg.u_norm <= Rat(0)) throw GenError("u_norm must be positive");
  ts.processors = cfg.tasks == 0 ? 1 : static_cast<int>(rat_ceil(u_sum / cfg.u_norm));
  ts.check();
  return ts;
}

namespace {

Time to_time(const std::string& v, const std::string& key) {
  try {
    return std::stoll(v);
  } catch (const std::exception&) {
    throw GenError("config: bad integer for " + key + ": '" + v + "'");
  }
}

Range<Time> to_range(const std::string& v, const std::string& key) {
  auto colon = v.find(':');
  if (colon == std::string::npos) {
    Time x = to_time(v, key);
    return {x, x};
  }
  return {to_time(v.substr(0, colon), key), to_time(v.substr(colon + 1), key)};
}

// exact decimal -> rational, e.g. "0.125" -> 1/8
Rat to_rat(const std::string& v, const std::string& key) {
  auto dot = v.find('.');
  try {
    if (dot == std::string::npos) return Rat(std::stoll(v));
    std::string whole = v.substr(0, dot), frac = v.substr(dot + 1);
    Time den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Time num = (whole.empty() ? 0 : std::stoll(whole)) * den + std::stoll(frac);
    return Rat(num, den);
  } catch (const std::exception&) {
    throw GenError("config: bad decimal for " + key + ": '" + v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

GenConfig parse_gen_config(const std::vector<std::pair<std::string, std::string>>& items) {
  GenConfig cfg;
  for (const auto& [key, value] : items) {
    if (key == "tasks") cfg.tasks = static_cast<int>(to_time(value, key));
    else if (key == "edge_prob") cfg.edge_prob = std::stod(value);
    else if (key == "vertices") cfg.vertices = to_range(value, key);
    else if (key == "wcet") cfg.wcet = to_range(value, key);
    else if (key == "ld_ratios") {
      cfg.ld_ratios.clear();
      for (const std::string& r : split_list(value)) cfg.ld_ratios.push_back(to_rat(r, key));
    } else if (key == "resource_types") cfg.resource_types = to_range(value, key);
    else if (key == "total_accesses") cfg.total_accesses = to_range(value, key);
    else if (key == "max_hold") cfg.max_hold = to_range(value, key);
    else if (key == "u_norm") cfg.u_norm = to_rat(value, key);
    else if (key == "density_retries") cfg.density_retries = static_cast<int>(to_time(value, key));
    else throw GenError("config: unknown key '" + key + "'");
  }
  return cfg;
}

GenConfig load_gen_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GenError("cannot open config " + path);
  std::vector<std::pair<std::string, std::string>> items;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!key.empty()) items.emplace_back(key, value);
  }
  return parse_gen_config(items);
}

TaskSet openmp_taskset(const std::vector<int>& programs, const GenConfig& cfg,
                       std::uint64_t seed) {
  const auto& rows = openmp_dataset();
  Rng rng(seed);
  TaskSet ts;
  for (std::size_t i = 0; i < programs.size(); ++i) {
    int idx = programs[i];
    if (idx < 0 || idx >= static_cast<int>(rows.size()))
      throw GenError("openmp_taskset: program index out of range");
    const MeasuredProgram& row = rows[static_cast<std::size_t>(idx)];

    // abstract shape with the measured volume and longest path: one spine
    // of length L plus parallel fillers each no longer than L
    DagTask t;
    t.id = static_cast<int>(i);
    t.vertices.push_back({0, row.longest_path});
    Time rest = row.total_wcet - row.longest_path;
    while (rest > 0) {
      Time piece = std::min(rest, row.longest_path);
      t.vertices.push_back({static_cast<int>(t.vertices.size()), piece});
      rest -= piece;
    }
    t = normalized(t);

    for (int q = 0; q < 10; ++q) {
      auto [n, l] = row.usage[static_cast<std::size_t>(q)];
      if (n > 0) {
        t.resource_usage[q] = {n, l};
        ts.resources.insert(q);
      }
    }

    // resample the ratio until the task is heavy, mirroring the synthetic
    // density filter (some rows are only heavy under the larger ratio)
    bool heavy = false;
    for (int attempt = 0; attempt < cfg.density_retries && !heavy; ++attempt) {
      assign_deadline(t, cfg, rng);
      heavy = Rat(volume(t), t.deadline) > Rat(1);
    }
    if (!heavy)
      throw GenError("openmp_taskset: program " + row.name +
                     " is not heavy under any configured L/D ratio");
    t.request_placement = place_requests(t, rng);
    ts.tasks.push_back(std::move(t));
  }

  Rat u_sum{0};
  for (const DagTask& t : ts.tasks) u_sum += Rat(volume(t), t.period);
  ts.processors = ts.tasks.empty() ? 1 : static_cast<int>(rat_ceil(u_sum / cfg.u_norm));
  ts.check();
  return ts;
}

}  // namespace spinfed
