#include "spinfed/json_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace spinfed {

using json = nlohmann::ordered_json;

TaskSet load_taskset(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("task-set JSON: ") + e.what());
  }
  try {
    TaskSet ts;
    ts.processors = j.at("processors").get<int>();
    for (const auto& r : j.at("resources")) ts.resources.insert(r.get<int>());
    if (j.contains("priority_order"))
      for (const auto& t : j.at("priority_order")) ts.priority_order.push_back(t.get<int>());
    for (const auto& jt : j.at("tasks")) {
      DagTask t;
      t.id = jt.at("id").get<int>();
      t.period = jt.at("period").get<Time>();
      t.deadline = jt.at("deadline").get<Time>();
      for (const auto& jv : jt.at("vertices"))
        t.vertices.push_back({jv.at("id").get<int>(), jv.at("wcet").get<Time>()});
      for (const auto& je : jt.at("edges"))
        t.edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
      if (jt.contains("resource_usage"))
        for (const auto& ju : jt.at("resource_usage"))
          t.resource_usage[ju.at("resource").get<int>()] = {ju.at("count").get<Time>(),
                                                            ju.at("hold_time").get<Time>()};
      if (jt.contains("request_placement"))
        for (const auto& jp : jt.at("request_placement"))
          t.request_placement.push_back({jp.at("vertex").get<int>(),
                                         jp.at("resource").get<int>(),
                                         jp.at("offset_in_vertex").get<Time>(),
                                         jp.at("length").get<Time>()});
      ts.tasks.push_back(std::move(t));
    }
    ts.check();
    return ts;
  } catch (const json::exception& e) {
    throw StructuralError(std::string("task-set JSON: ") + e.what());
  }
}

TaskSet load_taskset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  return load_taskset(in);
}

void save_taskset(const TaskSet& ts, std::ostream& out) {
  json j;
  j["processors"] = ts.processors;
  j["resources"] = json::array();
  for (int r : ts.resources) j["resources"].push_back(r);
  if (!ts.priority_order.empty()) j["priority_order"] = ts.priority_order;
  j["tasks"] = json::array();
  for (const DagTask& t : ts.tasks) {
    json jt;
    jt["id"] = t.id;
    jt["period"] = t.period;
    jt["deadline"] = t.deadline;
    jt["vertices"] = json::array();
    for (const Vertex& v : t.vertices) jt["vertices"].push_back({{"id", v.id}, {"wcet", v.wcet}});
    jt["edges"] = json::array();
    for (auto [u, v] : t.edges) jt["edges"].push_back({u, v});
    jt["resource_usage"] = json::array();
    for (const auto& [q, u] : t.resource_usage)
      if (u.count > 0)
        jt["resource_usage"].push_back(
            {{"resource", q}, {"count", u.count}, {"hold_time", u.hold_time}});
    if (!t.request_placement.empty()) {
      jt["request_placement"] = json::array();
      for (const RequestPlacement& p : t.request_placement)
        jt["request_placement"].push_back({{"vertex", p.vertex},
                                           {"resource", p.resource},
                                           {"offset_in_vertex", p.offset_in_vertex},
                                           {"length", p.length}});
    }
    j["tasks"].push_back(std::move(jt));
  }
  out << j.dump(2) << '\n';
}

void save_taskset_file(const TaskSet& ts, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot open " + path + " for writing");
  save_taskset(ts, out);
}

}  // namespace spinfed
