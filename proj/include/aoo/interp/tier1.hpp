#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aoo/interp/config.hpp"
#include "aoo/interp/machine.hpp"

namespace aoo {

// Deterministic rendering of the tier-1 part of a configuration: the stack
// shape, every tier-1 mapping entry per frame, and the subgraph reachable from
// tier-1 references. With `exact_ids` nodes keep their identity; otherwise
// they are numbered in traversal order, so isomorphic states render equally.
// Without an oracle every variable counts as tier 1.
std::string tier1_form(const Configuration& c, const ContextOracle* oracle, bool exact_ids);

// Same rendering restricted to one frame of the stack.
std::string tier1_frame_form(const Configuration& c, std::size_t frame, const ContextOracle* oracle,
                             bool exact_ids);

// The ≈ relation: configurations agreeing everywhere except on tier-0 data.
bool tier1_equivalent(const Configuration& a, const Configuration& b, const ContextOracle* oracle);

struct Tier1Trace {
  std::vector<Configuration> configs;
  bool complete = false;  // false when the budget ran out first
  std::uint64_t steps = 0;
};

// The sequence of configurations each differing from the previous recorded
// one on tier-1 data, starting with `start`.
Tier1Trace trace_tier1(const ResolvedProgram& flat, const Configuration& start, const Continuation& mi,
                       const ContextOracle* oracle, std::uint64_t budget);

// Trace of Comp from the input computed by Init.
Tier1Trace trace_comp(const ResolvedProgram& flat, const ContextOracle* oracle, std::uint64_t budget,
                      const std::function<void(Configuration&)>& adjust_input = {});

}  // namespace aoo
