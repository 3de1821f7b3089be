#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aoo/frontend/resolved.hpp"
#include "aoo/interp/config.hpp"

namespace aoo {

// Maps runtime frames to typing contexts: the main context, the context of a
// callee reached from a call or constructor site, and the tier of a variable
// in a context. Implemented by the typing module.
class ContextOracle {
 public:
  virtual ~ContextOracle() = default;
  virtual int main_context() const = 0;
  virtual int callee_context(int caller, int site, const MethodRef& target) const = 0;
  virtual bool is_tier1(int ctx, const std::string& var) const = 0;
};

// One entry of the meta-instruction still to execute. `Run` holds a flattened
// source instruction; `Push`, `Pop` and `Return` are produced by calls.
struct WorkItem {
  enum class Kind { Run, Push, Pop, Return };
  Kind kind = Kind::Run;
  const Instr* instr = nullptr;  // Run
  Frame frame;                   // Push
  std::string target;            // Return: caller variable receiving the result
  std::string source;            // Return: callee return variable
};

// Meta-instruction as a stack of work items; back() executes next.
using Continuation = std::vector<WorkItem>;

enum class Outcome { Terminated, BudgetExhausted, DivergenceDetected };
std::string to_string(Outcome o);

struct RunMetrics {
  std::uint64_t steps = 0;
  std::uint64_t init_steps = 0;
  std::uint64_t max_heap_nodes = 0;
  std::uint64_t max_stack_size = 0;
  std::uint64_t field_copy_mismatches = 0;  // frame copy differs from the graph on a field read
  Outcome outcome = Outcome::Terminated;
};

// Small-step executor for flattened programs.
class Machine {
 public:
  explicit Machine(const ResolvedProgram& flat, const ContextOracle* oracle = nullptr);

  // C₀: the null node and a main frame holding every main local at its default.
  void reset();
  // Appends a block to execute in the current top frame.
  void load(const Block& b);
  // Replaces the whole state, for replaying from a recorded configuration.
  void set_state(Configuration c, Continuation k);

  bool done() const { return work_.empty(); }
  // Applies exactly one rule. Throws EvalError on a stuck configuration.
  void step();

  Configuration& config() { return conf_; }
  const Configuration& config() const { return conf_; }
  const Continuation& continuation() const { return work_; }
  const ResolvedProgram& program() const { return prog_; }
  const ContextOracle* oracle() const { return oracle_; }
  std::uint64_t field_copy_mismatches() const { return mismatches_; }

  // True when the next item is a while head or a call site.
  bool at_loop_head() const;
  bool at_call_site() const;

 private:
  const ResolvedProgram& prog_;
  const ContextOracle* oracle_;
  Configuration conf_;
  Continuation work_;
  std::uint64_t mismatches_ = 0;

  Value read(const Frame& f, const std::string& x);
  void write(Frame& f, const std::string& x, Value v);
  Value eval(const Expr& e, Frame& f);
  bool truth(const std::string& x, Frame& f);
  void push_block(const Block& b);
  Frame callee_frame(const Frame& caller, const MethodRef& target, NodeId self,
                     const std::vector<Value>& args, int site);
  void run_instr(const Instr& i);
};

struct RunOptions {
  std::uint64_t budget = 10'000'000;
  bool detect_divergence = false;
  const ContextOracle* oracle = nullptr;
  // Applied to the input configuration before Comp starts.
  std::function<void(Configuration&)> adjust_input;
  // Called after every Comp step; return false to stop the run.
  std::function<bool(const Machine&)> observer;
};

struct RunResult {
  Configuration input;
  Configuration final_config;
  RunMetrics metrics;
};

// Runs Init from C₀ to obtain the input, then Comp, counting Comp steps only.
RunResult run(const ResolvedProgram& flat, const RunOptions& options = {});

// Budget from the AOO_BUDGET environment variable, 10^7 by default.
std::uint64_t default_budget();

}  // namespace aoo
