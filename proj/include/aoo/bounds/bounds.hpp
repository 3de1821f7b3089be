#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aoo/interp/machine.hpp"
#include "aoo/safety/safety.hpp"

namespace aoo {

// (signature, variable) pairs at tier 1 in the contexts of a typing. `this`
// and fields are excluded; a temporary counts only when its definition reads
// at least two distinct tier-1 variables, following temporaries to their
// sources.
std::set<std::pair<std::string, std::string>> tier1_variables(const Typing& t);
int count_tier1(const Typing& t);

// Exponents of one while nest of Comp, counting only the tier-1 variables
// assigned inside it. Experimental.
struct LoopBound {
  Location loc;
  int segment = 1;
  int n1 = 0;
  int nu = 0;
  int lambda = 0;
  int time_exponent = 0;
};

struct BoundReport {
  SafetyReport safety;
  int n1 = 0;
  std::optional<int> nu;
  int lambda = 0;
  // Defined when the intricacy is.
  int time_exponent = 0;
  int heap_exponent = 0;
  int stack_exponent = 0;
  std::vector<LoopBound> loops;

  bool defined() const { return nu.has_value(); }
  // "SAFE; time O(n^1); heap O(n); stack O(n)" or the rejection.
  std::string summary() const;
  std::string time_formula() const;   // O(n^e)
  std::string heap_formula() const;   // O(max(n,n^e))
  std::string stack_formula() const;  // O(n^e)
  nlohmann::json to_json() const;
};

BoundReport compute_bounds(const ResolvedProgram& flat, const std::vector<Typing>& typings,
                           bool per_loop = false);

struct ValidationRow {
  unsigned long n = 0;
  std::uint64_t input_size = 0;  // |I| after Init
  std::uint64_t steps = 0;
  std::uint64_t max_heap = 0;
  std::uint64_t max_stack = 0;
  Outcome outcome = Outcome::Terminated;
  double time_bound = 0;
  double heap_bound = 0;
  double stack_bound = 0;
  bool pass = false;

  nlohmann::json to_json() const;
};

struct Validation {
  std::vector<ValidationRow> rows;  // sorted by n
  double c_time = 0;                // constants taken at the smallest terminating n
  double c_heap = 0;
  double c_stack = 0;
  double slack = 1.5;
  bool pass = false;

  nlohmann::json to_json() const;
};

struct ValidationOptions {
  std::uint64_t budget = 10'000'000;
  double slack = 1.5;
  bool parallel = true;
};

// Copy of the parsed program with the literal of the first `int n := k`
// declaration of Init replaced. Throws IllFormed when there is none.
Program with_size(const Program& parsed, unsigned long n);

// Runs the program at each size and checks measured ≤ slack·c·n^e, where c
// is fitted at the smallest size that terminates.
Validation validate(const Program& parsed, const BoundReport& bounds, std::vector<unsigned long> sizes,
                    const ValidationOptions& options = {});

}  // namespace aoo
