#include "spinfed/framework.hpp"

namespace spinfed {

Time contention_jobs(Time analyzed_deadline, Time other_deadline, Time other_period,
                     bool both_access) {
  if (other_period <= 0 || other_deadline <= 0 || analyzed_deadline <= 0)
    throw ParameterError("contention_jobs: deadlines and period must be positive");
  if (other_deadline > other_period)
    throw ParameterError("contention_jobs: constrained deadline required (D <= T)");
  if (!both_access) return 0;
  return ceil_div(analyzed_deadline + other_deadline, other_period);
}

Rat graham_bound(Time total_wcet, Time longest_path_len, const Rat& interference, int m) {
  if (m < 1) throw ParameterError("graham_bound: need at least one processor");
  if (longest_path_len < 0 || total_wcet < longest_path_len)
    throw ParameterError("graham_bound: need 0 <= L <= C");
  if (interference < Rat(0)) throw ParameterError("graham_bound: negative interference");
  return (Rat(total_wcet) + Rat(m - 1) * longest_path_len + interference) / m;
}

InterferenceBound max_interference(
    const std::vector<std::pair<int, Time>>& resource_limits,
    const std::function<InterferencePoint(int resource, Time x)>& curve) {
  InterferenceBound out;
  for (auto [resource, limit] : resource_limits) {
    ResourceBound rb;
    rb.resource = resource;
    rb.limit = limit;
    bool first = true;
    Rat best{0};
    for (Time x = 0; x <= limit; ++x) {
      InterferencePoint p = curve(resource, x);
      Rat v = p.value();
      if (first || v > best) {  // ties keep the smallest x
        first = false;
        best = v;
        rb.best_x = x;
        rb.at_best = p;
      }
    }
    out.total += best;
    out.per_resource.push_back(rb);
  }
  return out;
}

const char* reason_str(InfeasibleReason r) {
  switch (r) {
    case InfeasibleReason::none: return "none";
    case InfeasibleReason::denominator_nonpositive: return "denominator_nonpositive";
    case InfeasibleReason::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

}  // namespace spinfed
