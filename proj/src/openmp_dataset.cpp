#include "spinfed/workload.hpp"

namespace spinfed {

// Measured parameters of eight OpenMP benchmark programs (microseconds):
// total work C, longest path L, and per-resource (request count, worst-case
// hold) for ten resource ids. Resources 0-3 are kernel/library objects
// (time, fprintf, printf, malloc); 4-9 are program-level critical sections.
const std::vector<MeasuredProgram>& openmp_dataset() {
  static const std::vector<MeasuredProgram> rows = {
      {"bots-1.1.2", "alignment.for", 313168, 11446,
       {{{22, 2}, {1, 2}, {2, 2}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}}},
      {"bots-1.1.2", "alignment.single", 315981, 9980,
       {{{22, 2}, {1, 2}, {2, 2}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}}},
      {"bots-1.1.2", "fft", 274, 58,
       {{{21, 2}, {1, 4}, {2, 2}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}}},
      {"bots-1.1.2", "fib", 353, 20,
       {{{20, 2}, {0, 0}, {2, 2}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}}},
      {"bots-1.1.2", "sort", 1757, 217,
       {{{20, 2}, {2, 4}, {2, 2}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}}},
      {"bots-1.1.2", "floorplan", 5843, 92,
       {{{36, 2}, {6, 1}, {2, 2}, {0, 0}, {4, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}}},
      {"OpenMPMicro", "MatrixMultiplication", 5873246, 106983,
       {{{0, 0}, {3, 7}, {0, 0}, {5, 4}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}}},
      {"OpenMPMicro", "Square", 50000812, 1000066,
       {{{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {20, 5}, {50, 1}, {50, 105}, {50, 79}, {50, 1}}}},
  };
  return rows;
}

}  // namespace spinfed
