#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aoo/typing/infer.hpp"

namespace aoo::testing {

// Random program over a small Cell class: main declares a few int, boolean
// and Cell variables in Init and runs a random Comp of assignments,
// operators, calls, branches and loops.
std::string random_program(std::mt19937& rng, int statements);

// Typability by enumerating every assignment of the independent tier
// variables and running the checker on each. Requires at most `max_vars`.
bool brute_force_typable(const InstanceTree& t, const std::vector<bool>& pins);

// Number of independent tier variables of the tree.
std::size_t tier_variable_count(const InstanceTree& t);

struct NonInterference {
  int pairs = 0;
  int counterexamples = 0;
  std::string first_failure;
};

// Runs `pairs` pairs of Comp traces from inputs that differ only on tier-0
// variables of main and compares them step by step up to ≈.
NonInterference check_non_interference(const ResolvedProgram& flat, const Typing& t, int pairs,
                                       std::mt19937& rng, std::uint64_t budget);

struct SubjectReduction {
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
};

// Re-typechecks the pending meta-instruction every `every` steps of Comp.
SubjectReduction check_subject_reduction(const ResolvedProgram& flat, const Typing& t, std::uint64_t every,
                                         std::uint64_t budget);

}  // namespace aoo::testing
