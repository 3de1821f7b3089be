#include "aoo/interp/machine.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <unordered_set>

#include "aoo/interp/tier1.hpp"
#include "aoo/support/error.hpp"
#include "aoo/typing/operators.hpp"

namespace aoo {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Terminated: return "terminated";
    case Outcome::BudgetExhausted: return "budget-exhausted";
    case Outcome::DivergenceDetected: return "divergence-detected";
  }
  return "?";
}

std::uint64_t default_budget() {
  if (const char* s = std::getenv("AOO_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000;
}

Machine::Machine(const ResolvedProgram& flat, const ContextOracle* oracle)
    : prog_(flat), oracle_(oracle) {
  reset();
}

void Machine::reset() {
  conf_ = Configuration{};
  work_.clear();
  mismatches_ = 0;
  const Scope& m = prog_.main();
  Frame main(MethodRef{}, &m, oracle_ ? oracle_->main_context() : -1);
  for (const std::string& x : m.locals) main.bind(x, default_value(*m.type_of(x)));
  conf_.stack.push_back(std::move(main));
}

void Machine::load(const Block& b) { push_block(b); }

void Machine::set_state(Configuration c, Continuation k) {
  conf_ = std::move(c);
  work_ = std::move(k);
}

void Machine::push_block(const Block& b) {
  for (auto it = b.rbegin(); it != b.rend(); ++it) {
    if (it->kind == Instr::Kind::Seq) {
      push_block(it->body);
      continue;
    }
    WorkItem w;
    w.instr = &*it;
    work_.push_back(std::move(w));
  }
}

bool Machine::at_loop_head() const {
  return !work_.empty() && work_.back().kind == WorkItem::Kind::Run &&
         work_.back().instr->kind == Instr::Kind::While;
}

bool Machine::at_call_site() const {
  if (work_.empty() || work_.back().kind != WorkItem::Kind::Run) return false;
  const Instr& i = *work_.back().instr;
  return i.kind == Instr::Kind::Call ||
         (i.kind == Instr::Kind::Assign && i.expr.kind == Expr::Kind::Call);
}

Value Machine::read(const Frame& f, const std::string& x) {
  const Scope& s = f.scope();
  if (s.is_field(x)) {
    NodeId self = f.self();
    if (self != kNullNode) {
      const Value* v = conf_.graph.get(self, x);
      Value out = v ? *v : default_value(*s.type_of(x));
      if (f.has(x) && !(f.lookup(x) == out)) ++mismatches_;
      return out;
    }
  }
  return f.lookup(x);
}

void Machine::write(Frame& f, const std::string& x, Value v) {
  if (f.scope().is_field(x)) {
    NodeId self = f.self();
    if (self != kNullNode) conf_.graph.set(self, x, std::move(v));
    return;
  }
  f.bind(x, std::move(v));
}

Value Machine::eval(const Expr& e, Frame& f) {
  switch (e.kind) {
    case Expr::Kind::Var: return read(f, e.name);
    case Expr::Kind::Const: return constant_value(e.value);
    case Expr::Kind::Null: return kNullNode;
    case Expr::Kind::This: return f.self();
    case Expr::Kind::Op: {
      std::vector<Value> args;
      for (const Expr& a : e.args) args.push_back(eval(a, f));
      auto spec = find_operator(e.name);
      if (!spec) throw EvalError("unknown operator " + e.name, e.loc);
      try {
        return spec->eval(args);
      } catch (const std::bad_variant_access&) {
        throw EvalError("operator " + e.name + " applied to values of the wrong kind", e.loc);
      }
    }
    default: throw EvalError("not a value expression", e.loc);
  }
}

bool Machine::truth(const std::string& x, Frame& f) {
  Value v = read(f, x);
  if (auto b = std::get_if<bool>(&v)) return *b;
  throw EvalError("guard " + x + " is not a boolean");
}

Frame Machine::callee_frame(const Frame& caller, const MethodRef& target, NodeId self,
                            const std::vector<Value>& args, int site) {
  int ctx = -1;
  if (oracle_) ctx = oracle_->callee_context(caller.context(), site, target);
  Frame out(target, &prog_.scope(target), ctx);
  for (const auto& [x, v] : caller.mapping()) out.bind(x, v);
  out.bind("this", self);
  int cls = self != kNullNode ? conf_.graph.label(self) : target.cls;
  for (const FieldInfo& fi : prog_.classes().fields(cls)) {
    const Value* v = self != kNullNode ? conf_.graph.get(self, fi.name) : nullptr;
    out.bind(fi.name, v ? *v : default_value(fi.type));
  }
  const auto& params = prog_.program().params(target);
  for (std::size_t k = 0; k < params.size(); ++k) out.bind(params[k].name, args[k]);
  return out;
}

void Machine::run_instr(const Instr& i) {
  Frame& f = conf_.top();
  switch (i.kind) {
    case Instr::Kind::Skip: return;
    case Instr::Kind::Seq: push_block(i.body); return;
    case Instr::Kind::If: {
      bool g = i.expr.kind == Expr::Kind::Var ? truth(i.expr.name, f)
                                                : std::get<bool>(eval(i.expr, f));
      push_block(g ? i.body : i.alt);
      return;
    }
    case Instr::Kind::While: {
      bool g = i.expr.kind == Expr::Kind::Var ? truth(i.expr.name, f)
                                                : std::get<bool>(eval(i.expr, f));
      if (g) {
        WorkItem again;
        again.instr = &i;
        work_.push_back(std::move(again));
        push_block(i.body);
      }
      return;
    }
    case Instr::Kind::Assign:
    case Instr::Kind::Call: break;
  }

  const Expr& e = i.expr;
  bool assigns = i.kind == Instr::Kind::Assign;
  if (e.kind == Expr::Kind::New) {
    std::vector<Value> args;
    for (const Expr& a : e.args) args.push_back(read(f, a.name));
    int cls = e.target.cls;
    NodeId node = conf_.graph.add(cls);
    const auto& fields = prog_.classes().fields(cls);
    bool positional = e.target.index < 0 && !args.empty();
    for (std::size_t k = 0; k < fields.size(); ++k)
      conf_.graph.set(node, fields[k].name, positional ? args[k] : default_value(fields[k].type));
    if (assigns) write(f, i.target, node);
    if (e.target.index >= 0) {
      WorkItem pop;
      pop.kind = WorkItem::Kind::Pop;
      work_.push_back(std::move(pop));
      push_block(prog_.program().body(e.target));
      WorkItem push;
      push.kind = WorkItem::Kind::Push;
      push.frame = callee_frame(f, e.target, node, args, e.site);
      work_.push_back(std::move(push));
    }
    return;
  }
  if (e.kind == Expr::Kind::Call) {
    Value recv = read(f, e.receiver->name);
    std::vector<Value> args;
    for (const Expr& a : e.args) args.push_back(read(f, a.name));
    NodeId self = std::get<NodeId>(recv);
    MethodRef target =
        self == kNullNode ? e.target : prog_.classes().dispatch(conf_.graph.label(self), e.target);
    const MethodDecl& m = prog_.program().method(target);
    WorkItem pop;
    pop.kind = WorkItem::Kind::Pop;
    work_.push_back(std::move(pop));
    if (assigns && m.return_var) {
      WorkItem ret;
      ret.kind = WorkItem::Kind::Return;
      ret.target = i.target;
      ret.source = *m.return_var;
      work_.push_back(std::move(ret));
    }
    push_block(m.body);
    WorkItem push;
    push.kind = WorkItem::Kind::Push;
    push.frame = callee_frame(f, target, self, args, e.site);
    work_.push_back(std::move(push));
    return;
  }
  if (!assigns) throw EvalError("expression statement is not a call", i.loc);
  write(f, i.target, eval(e, f));
}

void Machine::step() {
  if (work_.empty()) throw EvalError("no instruction left");
  WorkItem w = std::move(work_.back());
  work_.pop_back();
  switch (w.kind) {
    case WorkItem::Kind::Run: run_instr(*w.instr); return;
    case WorkItem::Kind::Push: conf_.stack.push_back(std::move(w.frame)); return;
    case WorkItem::Kind::Pop:
      if (conf_.stack.size() < 2) throw EvalError("pop on the main frame");
      conf_.stack.pop_back();
      return;
    case WorkItem::Kind::Return: {
      if (conf_.stack.size() < 2) throw EvalError("return on the main frame");
      Value v = read(conf_.stack.back(), w.source);
      write(conf_.stack[conf_.stack.size() - 2], w.target, std::move(v));
      return;
    }
  }
}

namespace {

struct Key {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const { return k.a ^ (k.b * 0x9e3779b97f4a7c15ULL); }
};

Key digest(const std::string& s) {
  std::uint64_t fnv = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    fnv ^= ch;
    fnv *= 1099511628211ULL;
  }
  return {std::hash<std::string>{}(s), fnv};
}

std::string continuation_id(const Continuation& k) {
  std::string out;
  for (const WorkItem& w : k) {
    out += static_cast<char>('0' + static_cast<int>(w.kind));
    out += std::to_string(reinterpret_cast<std::uintptr_t>(w.instr));
    out += w.target;
    out += ',';
  }
  return out;
}

// Memo of tier-1 states at loop heads and at call sites. A repeated loop-head
// state (same continuation, isomorphic tier-1 state) or a call site reached
// again in a deeper frame with an isomorphic local state means the run can
// only cycle.
class DivergenceMemo {
 public:
  explicit DivergenceMemo(const ContextOracle* oracle) : oracle_(oracle) {}

  bool check(const Machine& m) {
    const Configuration& c = m.config();
    std::size_t depth = c.stack.size();
    while (active_.size() > depth) {
      for (const Key& k : active_.back()) live_.erase(k);
      active_.pop_back();
    }
    if (m.at_loop_head()) {
      Key k = digest(continuation_id(m.continuation()) + "|" + tier1_form(c, oracle_, false));
      if (!loops_.insert(k).second) return true;
    } else if (m.at_call_site()) {
      std::string id = std::to_string(reinterpret_cast<std::uintptr_t>(m.continuation().back().instr));
      Key k = digest(id + "|" + tier1_frame_form(c, depth - 1, oracle_, false));
      if (live_.count(k)) return true;
      active_.resize(depth);
      active_[depth - 1].push_back(k);
      live_.insert(k);
    }
    return false;
  }

 private:
  const ContextOracle* oracle_;
  std::unordered_set<Key, KeyHash> loops_;
  std::vector<std::vector<Key>> active_;
  std::unordered_set<Key, KeyHash> live_;
};

void track(RunMetrics& m, const Configuration& c) {
  Sizes s = sizes(c);
  m.max_heap_nodes = std::max(m.max_heap_nodes, s.heap);
  m.max_stack_size = std::max(m.max_stack_size, s.stack);
}

}  // namespace

RunResult run(const ResolvedProgram& flat, const RunOptions& options) {
  RunResult out;
  Machine m(flat, options.oracle);
  const Program& p = flat.program();
  m.load(p.init());
  std::uint64_t init_steps = 0;
  while (!m.done()) {
    if (init_steps >= options.budget) {
      out.metrics.outcome = Outcome::BudgetExhausted;
      out.metrics.init_steps = init_steps;
      out.input = m.config();
      out.final_config = m.config();
      return out;
    }
    m.step();
    ++init_steps;
  }
  if (options.adjust_input) options.adjust_input(m.config());
  out.input = m.config();
  out.metrics.init_steps = init_steps;

  for (std::size_t s = p.segments.size(); s-- > 1;) m.load(p.segments[s]);
  std::optional<DivergenceMemo> memo;
  if (options.detect_divergence) memo.emplace(options.oracle);
  track(out.metrics, m.config());
  while (!m.done()) {
    if (memo && memo->check(m)) {
      out.metrics.outcome = Outcome::DivergenceDetected;
      break;
    }
    if (out.metrics.steps >= options.budget) {
      out.metrics.outcome = Outcome::BudgetExhausted;
      break;
    }
    m.step();
    ++out.metrics.steps;
    track(out.metrics, m.config());
    if (options.observer && !options.observer(m)) break;
  }
  out.metrics.field_copy_mismatches = m.field_copy_mismatches();
  out.final_config = m.config();
  return out;
}

}  // namespace aoo
