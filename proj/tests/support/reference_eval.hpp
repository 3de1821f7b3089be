#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "aoo/frontend/resolved.hpp"
#include "aoo/interp/machine.hpp"

namespace aoo::testing {

// Observable outcome of a run: the heap in node creation order, every arrow,
// and the final values of the main variables that appear in the source.
struct Observation {
  bool terminated = false;
  std::vector<std::string> labels;  // index = node id, [0] = null
  std::map<std::pair<std::uint32_t, std::string>, std::string> arrows;
  std::map<std::string, std::string> vars;

  friend bool operator==(const Observation&, const Observation&) = default;
  std::string str() const;
};

// Big-step tree-walking evaluator over the unflattened program. Shares no
// code with the small-step machine. `fuel` bounds loop iterations plus calls.
Observation reference_run(const ResolvedProgram& source, std::uint64_t fuel);

// The same observation of a small-step run of the flattened program.
Observation observe(const ResolvedProgram& flat, const RunResult& r);

}  // namespace aoo::testing
