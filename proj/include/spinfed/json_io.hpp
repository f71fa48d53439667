#ifndef SPINFED_JSON_IO_HPP
#define SPINFED_JSON_IO_HPP

#include "spinfed/taskset.hpp"

#include <iosfwd>
#include <string>

namespace spinfed {

// Canonical task-set interchange format (JSON). Throws StructuralError with
// a diagnostic on malformed input.
TaskSet load_taskset(std::istream& in);
TaskSet load_taskset_file(const std::string& path);

void save_taskset(const TaskSet& ts, std::ostream& out);
void save_taskset_file(const TaskSet& ts, const std::string& path);

}  // namespace spinfed

#endif
