#include "spinfed/fifo.hpp"
#include "spinfed/harness.hpp"
#include "spinfed/json_io.hpp"
#include "spinfed/priority.hpp"
#include "spinfed/unordered.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace spinfed;

namespace {

constexpr int kExitSchedulable = 0;
constexpr int kExitUnschedulable = 1;
constexpr int kExitUsage = 2;

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

void print_verdict(const Verdict& v, const TaskSet& ts) {
  for (const TaskVerdict& tv : v.tasks) {
    std::cout << "task " << tv.task << ": m=" << tv.m << " bound=" << rat_str(tv.bound)
              << " deadline=" << ts.task(tv.task).deadline
              << (tv.fits ? " ok" : " MISS") << '\n';
  }
  if (v.schedulable)
    std::cout << "schedulable, " << v.total_processors << "/" << ts.processors
              << " processors\n";
  else
    std::cout << "unschedulable (" << reason_str(v.reason) << ")\n";
}

int run(int argc, char** argv) {
  CLI::App app{"schedulability analysis, partitioning and simulation of "
               "parallel DAG tasks with spin locks under federated scheduling"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a synthetic task set");
  std::string gen_config, gen_out;
  std::uint64_t gen_seed = 1;
  gen->add_option("--config", gen_config, "key=value generator config");
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--out", gen_out, "output file (default stdout)");
  bool gen_openmp = false;
  std::string gen_programs;
  gen->add_flag("--measured", gen_openmp, "use the bundled measured-program dataset");
  gen->add_option("--programs", gen_programs,
                  "comma-separated dataset row indices (with --measured)");

  // analyze
  auto* an = app.add_subcommand("analyze", "response-time bounds for a given assignment");
  std::string an_order_s = "unordered", an_m, an_prio, an_file;
  an->add_option("--order", an_order_s, "unordered|fifo|priority");
  an->add_option("--m", an_m, "per-task processor counts, e.g. 3,2,4")->required();
  an->add_option("--priority-order", an_prio, "task ids, highest priority first");
  an->add_option("taskset", an_file, "task-set JSON")->required();

  // partition
  auto* pa = app.add_subcommand("partition", "processor partitioning");
  std::string pa_order_s = "unordered", pa_file, pa_prio;
  pa->add_option("--order", pa_order_s, "unordered|fifo|priority");
  pa->add_option("--priority-order", pa_prio, "task ids, highest priority first");
  pa->add_option("taskset", pa_file, "task-set JSON")->required();

  // search-priorities
  auto* sp = app.add_subcommand("search-priorities",
                                "exhaustive priority-assignment search");
  std::string sp_file;
  int sp_cap = 8;
  sp->add_option("--cap", sp_cap, "maximum task count for permutation search");
  sp->add_option("taskset", sp_file, "task-set JSON")->required();

  // simulate
  auto* si = app.add_subcommand("simulate", "discrete-event simulation");
  std::string si_order_s = "fifo", si_m, si_file, si_out, si_grant = "random", si_prio;
  Time si_horizon = 0;
  std::uint64_t si_seed = 1;
  int si_target = 0;
  si->add_option("--order", si_order_s, "unordered|fifo|priority");
  si->add_option("--m", si_m, "per-task processor counts")->required();
  si->add_option("--horizon", si_horizon, "simulation horizon (default 6*max period)");
  si->add_option("--seed", si_seed, "simulation seed");
  si->add_option("--grant", si_grant, "unordered grant mode: random|adversarial");
  si->add_option("--adversarial-target", si_target, "task starved by adversarial grants");
  si->add_option("--priority-order", si_prio, "task ids, highest priority first");
  si->add_option("--out", si_out, "trace output file (default stdout)");
  si->add_option("taskset", si_file, "task-set JSON")->required();

  // replay
  auto* re = app.add_subcommand("replay", "validate a schedule script");
  std::string re_ts, re_script;
  bool re_check = false;
  re->add_option("--taskset", re_ts, "task-set JSON")->required();
  re->add_option("script", re_script, "trace script")->required();
  re->add_flag("--check", re_check, "also run per-job identity checks");

  // check-trace
  auto* ck = app.add_subcommand("check-trace",
                                "key paths, blocking decomposition and trace identities");
  std::string ck_ts, ck_trace;
  ck->add_option("--taskset", ck_ts, "task-set JSON")->required();
  ck->add_option("trace", ck_trace, "trace file")->required();

  // sweep
  auto* sw = app.add_subcommand("sweep", "acceptance-ratio sweep");
  std::string sw_spec, sw_out;
  std::uint64_t sw_seed = 0;
  bool sw_seed_set = false;
  sw->add_option("--spec", sw_spec, "sweep spec file")->required();
  sw->add_option("--out", sw_out, "CSV output (default stdout)");
  sw->add_option("--seed", sw_seed, "override the spec seed")->each([&](const std::string&) {
    sw_seed_set = true;
  });

  // soundness
  auto* so = app.add_subcommand("soundness", "bound-versus-simulation campaign");
  std::string so_config, so_dump;
  int so_sets = 50, so_seeds = 10;
  std::uint64_t so_seed = 1;
  so->add_option("--config", so_config, "key=value generator config");
  so->add_option("--sets", so_sets, "task sets to generate");
  so->add_option("--seeds", so_seeds, "simulation seeds per schedulable pair");
  so->add_option("--seed", so_seed, "master seed");
  so->add_option("--dump-failures", so_dump, "directory for failure artifacts");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    GenConfig cfg = gen_config.empty() ? GenConfig{} : load_gen_config(gen_config);
    TaskSet ts;
    if (gen_openmp) {
      std::vector<int> programs;
      if (gen_programs.empty())
        for (std::size_t i = 0; i < openmp_dataset().size(); ++i)
          programs.push_back(static_cast<int>(i));
      else
        programs = parse_int_list(gen_programs);
      ts = openmp_taskset(programs, cfg, gen_seed);
    } else {
      ts = gen_taskset(cfg, gen_seed);
    }
    if (gen_out.empty())
      save_taskset(ts, std::cout);
    else
      save_taskset_file(ts, gen_out);
    return kExitSchedulable;
  }

  if (an->parsed()) {
    TaskSet ts = load_taskset_file(an_file);
    if (!an_prio.empty()) ts.priority_order = parse_int_list(an_prio);
    ts.check();
    Order order = parse_order(an_order_s);
    std::vector<int> m = parse_int_list(an_m);
    if (m.size() != ts.tasks.size())
      throw ParameterError("--m must list one processor count per task");
    Verdict v;
    v.schedulable = true;
    for (const DagTask& t : ts.tasks) {
      TaskVerdict tv;
      tv.task = t.id;
      tv.m = m[static_cast<std::size_t>(t.id)];
      switch (order) {
        case Order::unordered: tv.bound = wcrt_unordered(ts, t.id, tv.m); break;
        case Order::fifo: tv.bound = wcrt_fifo(ts, t.id, m, &tv.interference); break;
        case Order::priority:
          tv.bound = wcrt_priority(ts, t.id, tv.m, &tv.interference);
          break;
      }
      tv.fits = tv.bound <= Rat(t.deadline);
      v.schedulable = v.schedulable && tv.fits;
      v.tasks.push_back(std::move(tv));
      v.total_processors += m[static_cast<std::size_t>(t.id)];
    }
    if (v.total_processors > ts.processors) v.schedulable = false;
    print_verdict(v, ts);
    return v.schedulable ? kExitSchedulable : kExitUnschedulable;
  }

  if (pa->parsed()) {
    TaskSet ts = load_taskset_file(pa_file);
    if (!pa_prio.empty()) ts.priority_order = parse_int_list(pa_prio);
    ts.check();
    Order order = parse_order(pa_order_s);
    Verdict v;
    switch (order) {
      case Order::unordered: v = partition_unordered(ts); break;
      case Order::fifo: v = partition_fifo(ts); break;
      case Order::priority: v = partition_priority(ts); break;
    }
    print_verdict(v, ts);
    return v.schedulable ? kExitSchedulable : kExitUnschedulable;
  }

  if (sp->parsed()) {
    TaskSet ts = load_taskset_file(sp_file);
    PrioritySearchResult r = search_priority_assignment(ts, sp_cap);
    std::cout << "orders tried: " << r.orders_tried << '\n';
    if (!r.order) {
      std::cout << "no schedulable priority order\n";
      return kExitUnschedulable;
    }
    std::cout << "priority order (highest first):";
    for (int t : *r.order) std::cout << ' ' << t;
    std::cout << '\n';
    print_verdict(r.verdict, ts);
    return kExitSchedulable;
  }

  if (si->parsed()) {
    TaskSet ts = load_taskset_file(si_file);
    if (!si_prio.empty()) {
      ts.priority_order = parse_int_list(si_prio);
      ts.check();
    }
    SimConfig sc;
    sc.order = parse_order(si_order_s);
    sc.m_vector = parse_int_list(si_m);
    sc.horizon = si_horizon;
    sc.seed = si_seed;
    if (si_grant == "adversarial")
      sc.grant = GrantMode::adversarial;
    else if (si_grant != "random")
      throw ParameterError("--grant must be random or adversarial");
    sc.adversarial_target = si_target;
    SimTrace trace = simulate(ts, sc);
    if (si_out.empty()) {
      save_trace(trace, std::cout);
    } else {
      std::ofstream out(si_out);
      if (!out) throw StructuralError("cannot open " + si_out);
      save_trace(trace, out);
    }
    return kExitSchedulable;
  }

  auto report_trace = [](const SimTrace& trace, const TaskSet& ts) {
    bool all_ok = true;
    for (int job : scorable_jobs(trace)) {
      const JobInfo& ji = trace.jobs[static_cast<std::size_t>(job)];
      KeyPath kp = extract_key_path(trace, job, ts.task(ji.task));
      BlockingDecomposition d = decompose_blocking(trace, job, kp, ts);
      IdentityReport ir = check_identities(trace, job, kp, d, ts);
      std::cout << "job " << job << " (task " << ji.task << "): response "
                << ji.finish - ji.release << ", B=" << d.total() << " W=" << ir.metrics.work
                << " idle=" << ir.metrics.idle << "\n  key path:";
      for (int v : kp.vertices) std::cout << ' ' << v;
      std::cout << "\n  blocking parts (key/delay/parallel x intra/inter): " << d.key_intra
                << ' ' << d.key_inter << ' ' << d.delay_intra << ' ' << d.delay_inter << ' '
                << d.parallel_intra << ' ' << d.parallel_inter << '\n';
      if (!ir.ok) {
        all_ok = false;
        for (const std::string& v : ir.violations) std::cout << "  VIOLATION: " << v << '\n';
      }
    }
    return all_ok;
  };

  if (re->parsed()) {
    TaskSet ts = load_taskset_file(re_ts);
    SimTrace trace = replay_trace_file(re_script, ts);
    std::cout << "script accepted: " << trace.jobs.size() << " job(s), "
              << trace.records.size() << " interval(s)\n";
    if (re_check && !report_trace(trace, ts)) return kExitUnschedulable;
    return kExitSchedulable;
  }

  if (ck->parsed()) {
    TaskSet ts = load_taskset_file(ck_ts);
    SimTrace trace = replay_trace_file(ck_trace, ts);
    return report_trace(trace, ts) ? kExitSchedulable : kExitUnschedulable;
  }

  if (sw->parsed()) {
    SweepSpec spec = load_sweep_spec(sw_spec);
    if (sw_seed_set) spec.seed = sw_seed;
    SweepTable table = acceptance_ratio(spec);
    if (table.generation_failures > 0)
      std::cerr << "warning: " << table.generation_failures << " generation failure(s)\n";
    if (sw_out.empty()) {
      write_csv(table, std::cout);
    } else {
      std::ofstream out(sw_out);
      if (!out) throw StructuralError("cannot open " + sw_out);
      write_csv(table, out);
    }
    return kExitSchedulable;
  }

  if (so->parsed()) {
    CampaignConfig cc;
    if (!so_config.empty()) cc.base = load_gen_config(so_config);
    cc.task_sets = so_sets;
    cc.seeds_per_set = so_seeds;
    cc.seed = so_seed;
    cc.failure_dir = so_dump;
    CampaignReport rep = soundness_campaign(cc);
    std::cout << "schedulable pairs: " << rep.schedulable_pairs << "\nruns: " << rep.runs
              << "\njobs checked: " << rep.jobs_checked
              << "\nbound violations: " << rep.bound_violations
              << "\nidentity violations: " << rep.identity_violations
              << "\nmax tightness: " << rat_str(rep.max_tightness) << '\n';
    for (const std::string& f : rep.failures) std::cout << "FAILURE: " << f << '\n';
    return rep.bound_violations + rep.identity_violations == 0 ? kExitSchedulable
                                                               : kExitUnschedulable;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
