#ifndef SPINFED_SIMULATOR_HPP
#define SPINFED_SIMULATOR_HPP

#include "spinfed/trace.hpp"

#include <cstdint>

namespace spinfed {

enum class Order { unordered, fifo, priority };

Order parse_order(const std::string& name);
const char* order_str(Order o);

// Grant policy for the unordered discipline. random_pick draws uniformly
// among the current waiters; adversarial starves one task by always serving
// some other waiter first when it can.
enum class GrantMode { random_pick, adversarial };

struct SimConfig {
  Order order = Order::fifo;
  std::vector<int> m_vector;
  Time horizon = 0;  // 0: defaults to 6 * max period
  std::uint64_t seed = 1;
  GrantMode grant = GrantMode::random_pick;
  int adversarial_target = 0;
  long long max_jobs_per_task = -1;  // optional cap; -1 = all releases in horizon
};

// Deterministic federated list-scheduling simulation with spin locks.
// Releases at k*T_i for k >= 0 with k*T_i < horizon; every released job runs
// to completion. Requires a request placement consistent with each task's
// declared resource usage.
SimTrace simulate(const TaskSet& ts, const SimConfig& cfg);

}  // namespace spinfed

#endif
