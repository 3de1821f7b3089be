#include "reference_eval.hpp"

#include <sstream>

#include "aoo/interp/value.hpp"
#include "aoo/support/error.hpp"
#include "aoo/typing/operators.hpp"

namespace aoo::testing {

std::string Observation::str() const {
  std::ostringstream os;
  os << (terminated ? "terminated" : "no result") << "\nnodes:";
  for (std::size_t i = 0; i < labels.size(); ++i) os << " " << i << ":" << labels[i];
  os << "\narrows:";
  for (const auto& [k, v] : arrows) os << " " << k.first << "." << k.second << "=" << v;
  os << "\nvars:";
  for (const auto& [k, v] : vars) os << " " << k << "=" << v;
  return os.str();
}

namespace {

struct OutOfFuel {};

struct Object {
  int cls = -1;
  std::map<std::string, Value> fields;
};

struct Frame {
  const Scope* scope = nullptr;
  NodeId self = kNullNode;
  std::map<std::string, Value> vars;
};

class Evaluator {
 public:
  Evaluator(const ResolvedProgram& rp, std::uint64_t fuel)
      : rp_(rp), p_(rp.program()), ct_(rp.classes()), fuel_(fuel) {
    heap_.push_back(Object{});
  }

  Observation run() {
    Observation out;
    Frame main{&rp_.main(), kNullNode, {}};
    try {
      for (const Block& seg : p_.segments) exec(seg, main);
      out.terminated = true;
    } catch (const OutOfFuel&) {
      out.terminated = false;
    }
    for (std::size_t i = 0; i < heap_.size(); ++i)
      out.labels.push_back(i == 0 ? "null" : ct_.name(heap_[i].cls));
    for (std::size_t i = 1; i < heap_.size(); ++i)
      for (const auto& [f, v] : heap_[i].fields) out.arrows[{static_cast<std::uint32_t>(i), f}] = show(v);
    for (const std::string& x : rp_.main().locals) out.vars[x] = show(read(main, x));
    return out;
  }

 private:
  const ResolvedProgram& rp_;
  const Program& p_;
  const ClassTable& ct_;
  std::uint64_t fuel_;
  std::vector<Object> heap_;

  void burn() {
    if (fuel_ == 0) throw OutOfFuel{};
    --fuel_;
  }

  Value read(const Frame& f, const std::string& x) {
    TypeName t = *f.scope->type_of(x);
    if (f.scope->is_field(x)) {
      if (f.self == kNullNode) return default_value(t);
      const auto& fs = heap_[f.self.id].fields;
      auto it = fs.find(x);
      return it == fs.end() ? default_value(t) : it->second;
    }
    auto it = f.vars.find(x);
    return it == f.vars.end() ? default_value(t) : it->second;
  }

  void write(Frame& f, const std::string& x, Value v) {
    if (f.scope->is_field(x)) {
      if (f.self != kNullNode) heap_[f.self.id].fields[x] = std::move(v);
      return;
    }
    f.vars[x] = std::move(v);
  }

  std::vector<Value> eval_all(const std::vector<Expr>& es, Frame& f) {
    std::vector<Value> out;
    for (const Expr& e : es) out.push_back(eval(e, f));
    return out;
  }

  Value invoke(const MethodRef& target, NodeId self, const std::vector<Value>& args) {
    burn();
    Frame callee{&rp_.scope(target), self, {}};
    const auto& params = p_.params(target);
    for (std::size_t k = 0; k < params.size(); ++k) callee.vars[params[k].name] = args[k];
    exec(p_.body(target), callee);
    if (target.ctor) return Unit{};
    const MethodDecl& m = p_.method(target);
    return m.return_var ? read(callee, *m.return_var) : Value(Unit{});
  }

  Value eval(const Expr& e, Frame& f) {
    switch (e.kind) {
      case Expr::Kind::Var: return read(f, e.name);
      case Expr::Kind::Const: return constant_value(e.value);
      case Expr::Kind::Null: return kNullNode;
      case Expr::Kind::This: return f.self;
      case Expr::Kind::Op: {
        auto args = eval_all(e.args, f);
        return find_operator(e.name)->eval(args);
      }
      case Expr::Kind::New: {
        auto args = eval_all(e.args, f);
        int c = e.target.cls;
        Object obj;
        obj.cls = c;
        for (const FieldInfo& fi : ct_.fields(c)) obj.fields[fi.name] = default_value(fi.type);
        NodeId id{static_cast<std::uint32_t>(heap_.size())};
        heap_.push_back(std::move(obj));
        if (e.target.index < 0) {
          for (std::size_t k = 0; k < args.size(); ++k) heap_[id.id].fields[ct_.fields(c)[k].name] = args[k];
        } else {
          invoke(e.target, id, args);
        }
        return id;
      }
      case Expr::Kind::Call: {
        Value recv = eval(*e.receiver, f);
        auto args = eval_all(e.args, f);
        NodeId self = std::get<NodeId>(recv);
        MethodRef target = self == kNullNode ? e.target : ct_.dispatch(heap_[self.id].cls, e.target);
        return invoke(target, self, args);
      }
    }
    throw Error("unknown expression");
  }

  bool truth(const Expr& g, Frame& f) { return std::get<bool>(eval(g, f)); }

  void exec(const Block& b, Frame& f) {
    for (const Instr& i : b) exec(i, f);
  }

  void exec(const Instr& i, Frame& f) {
    switch (i.kind) {
      case Instr::Kind::Skip: return;
      case Instr::Kind::Assign: write(f, i.target, eval(i.expr, f)); return;
      case Instr::Kind::Call: eval(i.expr, f); return;
      case Instr::Kind::Seq: exec(i.body, f); return;
      case Instr::Kind::If: exec(truth(i.expr, f) ? i.body : i.alt, f); return;
      case Instr::Kind::While:
        while (truth(i.expr, f)) {
          burn();
          exec(i.body, f);
        }
        return;
    }
  }
};

}  // namespace

Observation reference_run(const ResolvedProgram& source, std::uint64_t fuel) {
  return Evaluator(source, fuel).run();
}

Observation observe(const ResolvedProgram& flat, const RunResult& r) {
  Observation o;
  o.terminated = r.metrics.outcome == Outcome::Terminated;
  const Configuration& c = r.final_config;
  for (std::size_t i = 0; i < c.graph.size(); ++i) {
    NodeId n{static_cast<std::uint32_t>(i)};
    o.labels.push_back(i == 0 ? "null" : flat.classes().name(c.graph.label(n)));
    if (i == 0) continue;
    for (const auto& [f, v] : c.graph.arrows(n)) o.arrows[{n.id, f}] = show(v);
  }
  for (const std::string& x : flat.main().locals)
    if (x[0] != '$') o.vars[x] = show(c.stack.front().lookup(x));
  return o;
}

}  // namespace aoo::testing
