#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aoo/safety/call_graph.hpp"
#include "aoo/typing/infer.hpp"

namespace aoo {

// Level per call graph node, by dynamic programming over the condensation.
std::vector<int> levels(const CallGraph& g);

// Loop nesting depth (intricacy) over meta-instructions. A call contributes the maximum over its
// possible runtime bodies; calls into the caller's own recursive component
// contribute 0. Undefined when a recursive component contains a while loop.
class Intricacy {
 public:
  explicit Intricacy(const CallGraph& g);
  std::optional<int> of_body(int node);
  // `own` is the component of the enclosing body, -1 for main.
  std::optional<int> of_block(const Block& b, int own = -1);
  // True when some member body of the component contains a while loop.
  bool has_loop(int component) const { return loops_.at(component); }

 private:
  const CallGraph& g_;
  std::vector<bool> loops_;
  std::vector<int> state_;  // 0 unknown, 1 computing, 2 done
  std::vector<std::optional<int>> memo_;

  std::optional<int> instr(const Instr& i, int own);
  std::optional<int> expr(const Expr& e, int own);
  std::optional<int> site(const std::vector<MethodRef>& targets, int own);
};

struct MethodSafety {
  std::string signature;
  int node = -1;
  int level = 0;
  int recursive_calls = 0;  // call sites in the body reaching the method's own component
  bool item1 = false;       // exactly one such call
  std::optional<int> nu;    // intricacy of the body
  bool item2 = false;       // intricacy of the body is 0
  bool item3 = false;       // a typing exists with this method's interface at tier 1 and annotation 1
  bool branchwise = false;  // at most one recursive call along every syntactic path

  bool ok() const { return item1 && item2 && item3; }
};

struct SafetyReport {
  bool typable = false;  // well-typed (per segment for declassified programs)
  bool safe = false;
  std::vector<MethodSafety> methods;  // recursive methods reachable from Comp
  int lambda = 0;                     // max level over reachable bodies
  std::optional<int> nu;              // intricacy of Comp and reachable bodies
  std::vector<std::string> reasons;   // why the program is not safe

  nlohmann::json to_json() const;
  std::string str() const;
};

// Typings of the computation: one for a plain program, one per segment for
// a declassified one.
std::vector<Typing> type_segments(const ResolvedProgram& flat);

SafetyReport check_safety(const ResolvedProgram& flat, const std::vector<Typing>& typings);

// The blocks typed as computation, in order.
std::vector<const Block*> comp_blocks(const ResolvedProgram& flat);

}  // namespace aoo
