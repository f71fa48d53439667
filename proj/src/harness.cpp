#include "spinfed/harness.hpp"

#include "spinfed/fifo.hpp"
#include "spinfed/json_io.hpp"
#include "spinfed/priority.hpp"
#include "spinfed/unordered.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace spinfed {

SweepAxis parse_axis(const std::string& name) {
  if (name == "u_norm") return SweepAxis::u_norm;
  if (name == "total_accesses") return SweepAxis::total_accesses;
  if (name == "resource_types") return SweepAxis::resource_types;
  if (name == "max_hold") return SweepAxis::max_hold;
  if (name == "task_count") return SweepAxis::task_count;
  throw ParameterError("unknown sweep axis '" + name + "'");
}

const char* axis_str(SweepAxis a) {
  switch (a) {
    case SweepAxis::u_norm: return "u_norm";
    case SweepAxis::total_accesses: return "total_accesses";
    case SweepAxis::resource_types: return "resource_types";
    case SweepAxis::max_hold: return "max_hold";
    case SweepAxis::task_count: return "task_count";
  }
  return "?";
}

GenConfig apply_axis(const GenConfig& base, SweepAxis axis, const Rat& value) {
  GenConfig cfg = base;
  Time v = value.numerator() / value.denominator();
  switch (axis) {
    case SweepAxis::u_norm: cfg.u_norm = value; break;
    case SweepAxis::total_accesses: cfg.total_accesses = {v, v}; break;
    case SweepAxis::resource_types: cfg.resource_types = {v, v}; break;
    case SweepAxis::max_hold: cfg.max_hold = {v, v}; break;
    case SweepAxis::task_count: cfg.tasks = static_cast<int>(v); break;
  }
  return cfg;
}

namespace {

Rat parse_rat_value(const std::string& v) {
  auto dot = v.find('.');
  if (dot == std::string::npos) return Rat(std::stoll(v));
  std::string whole = v.substr(0, dot), frac = v.substr(dot + 1);
  Time den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return Rat((whole.empty() ? 0 : std::stoll(whole)) * den + std::stoll(frac), den);
}

Order parse_analyzer(const std::string& s) { return parse_order(s); }

}  // namespace

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open sweep spec " + path);
  SweepSpec spec;
  std::vector<std::pair<std::string, std::string>> gen_items;
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
    if (key.empty()) continue;
    if (key == "axis") spec.axis = parse_axis(value);
    else if (key == "values") {
      std::istringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) spec.values.push_back(parse_rat_value(item));
    } else if (key == "sets_per_point") spec.sets_per_point = std::stoi(value);
    else if (key == "analyzers") {
      spec.analyzers.clear();
      std::istringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) spec.analyzers.push_back(parse_analyzer(item));
    } else if (key == "seed") spec.seed = std::stoull(value);
    else if (key == "priority_cap") spec.priority_cap = std::stoi(value);
    else gen_items.emplace_back(key, value);
  }
  spec.base = parse_gen_config(gen_items);
  if (spec.values.empty()) throw StructuralError("sweep spec: no axis values");
  std::vector<Rat> sorted = spec.values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted != spec.values)
    throw StructuralError("sweep spec: axis values must be strictly increasing");
  if (spec.sets_per_point < 1) throw StructuralError("sweep spec: sets_per_point must be >= 1");
  return spec;
}

namespace {

bool analyzer_accepts(const TaskSet& ts, Order order, int priority_cap, bool& skipped) {
  skipped = false;
  switch (order) {
    case Order::unordered: return partition_unordered(ts).schedulable;
    case Order::fifo: return partition_fifo(ts).schedulable;
    case Order::priority:
      if (static_cast<int>(ts.tasks.size()) > priority_cap) {
        skipped = true;
        return false;
      }
      return search_priority_assignment(ts, priority_cap).order.has_value();
  }
  return false;
}

}  // namespace

SweepTable acceptance_ratio(const SweepSpec& spec) {
  SweepTable table;
  table.axis = spec.axis;
  for (std::size_t pi = 0; pi < spec.values.size(); ++pi) {
    GenConfig cfg = apply_axis(spec.base, spec.axis, spec.values[pi]);
    std::vector<SweepCell> cells(spec.analyzers.size());
    for (std::size_t a = 0; a < spec.analyzers.size(); ++a) {
      cells[a].value = spec.values[pi];
      cells[a].analyzer = spec.analyzers[a];
    }
    for (int s = 0; s < spec.sets_per_point; ++s) {
      std::uint64_t set_seed = mix_seed(spec.seed, pi * 1000003ULL + static_cast<std::uint64_t>(s));
      TaskSet ts;
      try {
        ts = gen_taskset(cfg, set_seed);
      } catch (const GenError&) {
        ++table.generation_failures;
        continue;
      }
      for (std::size_t a = 0; a < spec.analyzers.size(); ++a) {
        bool skipped = false;
        bool ok = analyzer_accepts(ts, spec.analyzers[a], spec.priority_cap, skipped);
        if (skipped) {
          cells[a].skipped = true;
          continue;
        }
        ++cells[a].total;
        if (ok) ++cells[a].accepted;
      }
    }
    for (auto& c : cells) table.cells.push_back(c);
  }
  return table;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  out << "axis,value,analyzer,accepted,total,ratio\n";
  for (const SweepCell& c : table.cells) {
    double value = static_cast<double>(c.value.numerator()) /
                   static_cast<double>(c.value.denominator());
    out << axis_str(table.axis) << ',' << std::setprecision(10) << value << ','
        << order_str(c.analyzer) << ',';
    if (c.skipped)
      out << "0,0,skipped\n";
    else if (c.total == 0)
      out << "0,0,nan\n";
    else
      out << c.accepted << ',' << c.total << ','
          << std::setprecision(6) << static_cast<double>(c.accepted) / c.total << '\n';
  }
}

namespace {

struct AnalyzedSet {
  bool schedulable = false;
  std::vector<int> m_vector;
  std::vector<Rat> bounds;       // per task id
  std::vector<int> order;        // priority order when applicable
};

AnalyzedSet analyze_for_sim(const TaskSet& ts, Order order, int priority_cap) {
  AnalyzedSet out;
  Verdict v;
  switch (order) {
    case Order::unordered: v = partition_unordered(ts); break;
    case Order::fifo: v = partition_fifo(ts); break;
    case Order::priority: {
      if (static_cast<int>(ts.tasks.size()) > priority_cap) return out;
      PrioritySearchResult r = search_priority_assignment(ts, priority_cap);
      if (!r.order) return out;
      out.order = *r.order;
      v = r.verdict;
      break;
    }
  }
  if (!v.schedulable) return out;
  out.schedulable = true;
  out.m_vector.assign(ts.tasks.size(), 0);
  out.bounds.assign(ts.tasks.size(), Rat(0));
  for (const TaskVerdict& tv : v.tasks) {
    out.m_vector[static_cast<std::size_t>(tv.task)] = tv.m;
    out.bounds[static_cast<std::size_t>(tv.task)] = tv.bound;
  }
  return out;
}

void dump_failure(const std::string& dir, const std::string& tag, const TaskSet& ts,
                  const SimTrace& trace) {
  if (dir.empty()) return;
  save_taskset_file(ts, dir + "/" + tag + "_taskset.json");
  std::ofstream out(dir + "/" + tag + "_trace.txt");
  if (out) save_trace(trace, out);
}

}  // namespace

CampaignReport soundness_campaign(const CampaignConfig& cfg) {
  CampaignReport rep;
  for (int s = 0; s < cfg.task_sets; ++s) {
    std::uint64_t set_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(s));
    TaskSet ts;
    try {
      ts = gen_taskset(cfg.base, set_seed);
    } catch (const GenError&) {
      continue;
    }
    for (Order order : cfg.disciplines) {
      AnalyzedSet an = analyze_for_sim(ts, order, cfg.priority_cap);
      if (!an.schedulable) continue;
      ++rep.schedulable_pairs;

      TaskSet sim_ts = ts;
      if (order == Order::priority) sim_ts.priority_order = an.order;

      for (int k = 0; k < cfg.seeds_per_set; ++k) {
        SimConfig sc;
        sc.order = order;
        sc.m_vector = an.m_vector;
        sc.horizon = cfg.horizon;
        sc.seed = mix_seed(set_seed, 77001ULL + static_cast<std::uint64_t>(k));
        if (order == Order::unordered && cfg.adversarial_unordered && k % 2 == 1) {
          sc.grant = GrantMode::adversarial;
          sc.adversarial_target =
              (k / 2) % std::max<int>(1, static_cast<int>(ts.tasks.size()));
        }
        SimTrace trace = simulate(sim_ts, sc);
        ++rep.runs;

        for (int job : scorable_jobs(trace)) {
          const JobInfo& ji = trace.jobs[static_cast<std::size_t>(job)];
          ++rep.jobs_checked;
          Rat observed(ji.finish - ji.release);
          const Rat& bound = an.bounds[static_cast<std::size_t>(ji.task)];
          if (bound > Rat(0)) {
            Rat tightness = observed / bound;
            if (tightness > rep.max_tightness) rep.max_tightness = tightness;
          }
          if (observed > bound) {
            ++rep.bound_violations;
            std::string tag = "violation_s" + std::to_string(s) + "_" + order_str(order) +
                              "_k" + std::to_string(k) + "_j" + std::to_string(job);
            rep.failures.push_back(tag + ": response " + std::to_string(ji.finish - ji.release) +
                                   " > bound " + rat_str(bound) + " (task " +
                                   std::to_string(ji.task) + ")");
            dump_failure(cfg.failure_dir, tag, sim_ts, trace);
          }
          KeyPath kp = extract_key_path(trace, job, sim_ts.task(ji.task));
          BlockingDecomposition d = decompose_blocking(trace, job, kp, sim_ts);
          IdentityReport ir = check_identities(trace, job, kp, d, sim_ts);
          if (!ir.ok) {
            ++rep.identity_violations;
            std::string tag = "identity_s" + std::to_string(s) + "_" + order_str(order) + "_k" +
                              std::to_string(k) + "_j" + std::to_string(job);
            for (const std::string& v : ir.violations) rep.failures.push_back(tag + ": " + v);
            dump_failure(cfg.failure_dir, tag, sim_ts, trace);
          }
        }
      }
    }
  }
  return rep;
}

FuzzReport identity_fuzz(const FuzzConfig& cfg) {
  FuzzReport rep;
  int variant = 0;
  for (int s = 0; s < cfg.max_task_sets && rep.jobs_checked < cfg.target_jobs; ++s) {
    std::uint64_t set_seed = mix_seed(cfg.seed, 555000ULL + static_cast<std::uint64_t>(s));
    TaskSet ts;
    try {
      ts = gen_taskset(cfg.base, set_seed);
    } catch (const GenError&) {
      continue;
    }
    if (ts.tasks.empty()) continue;
    Rng mrng(mix_seed(set_seed, 9));
    std::vector<int> priorities(ts.tasks.size());
    for (std::size_t i = 0; i < priorities.size(); ++i) priorities[i] = static_cast<int>(i);
    for (std::size_t i = priorities.size(); i > 1; --i)
      std::swap(priorities[i - 1], priorities[mrng.pick(i)]);
    ts.priority_order = priorities;

    for (int k = 0; k < cfg.seeds_per_set && rep.jobs_checked < cfg.target_jobs; ++k) {
      SimConfig sc;
      sc.seed = mix_seed(set_seed, 1000ULL + static_cast<std::uint64_t>(k));
      sc.horizon = cfg.horizon;
      sc.m_vector.clear();
      for (std::size_t i = 0; i < ts.tasks.size(); ++i)
        sc.m_vector.push_back(static_cast<int>(mrng.uniform(1, 5)));
      switch (variant++ % 4) {
        case 0: sc.order = Order::unordered; sc.grant = GrantMode::random_pick; break;
        case 1:
          sc.order = Order::unordered;
          sc.grant = GrantMode::adversarial;
          sc.adversarial_target = static_cast<int>(mrng.pick(ts.tasks.size()));
          break;
        case 2: sc.order = Order::fifo; break;
        case 3: sc.order = Order::priority; break;
      }
      SimTrace trace = simulate(ts, sc);
      for (int job : scorable_jobs(trace)) {
        if (rep.jobs_checked >= cfg.target_jobs) break;
        const JobInfo& ji = trace.jobs[static_cast<std::size_t>(job)];
        KeyPath kp = extract_key_path(trace, job, ts.task(ji.task));
        BlockingDecomposition d = decompose_blocking(trace, job, kp, ts);
        IdentityReport ir = check_identities(trace, job, kp, d, ts);
        ++rep.jobs_checked;
        if (!ir.ok) {
          ++rep.violations;
          for (const std::string& v : ir.violations)
            rep.failures.push_back("set " + std::to_string(s) + " seed " + std::to_string(k) +
                                   " job " + std::to_string(job) + ": " + v);
        }
      }
    }
  }
  return rep;
}

}  // namespace spinfed
