#include "aoo/interp/tier1.hpp"

#include <deque>
#include <map>

namespace aoo {

namespace {

class FormBuilder {
 public:
  FormBuilder(const Configuration& c, const ContextOracle* oracle, bool exact)
      : c_(c), oracle_(oracle), exact_(exact) {}

  void frame(std::size_t index) {
    const Frame& f = c_.stack[index];
    out_ += "F" + std::to_string(f.signature().cls) + "." + std::to_string(f.signature().index) +
            (f.signature().ctor ? "k" : "m") + "@" + std::to_string(f.context()) + "{";
    for (const auto& [x, v] : f.mapping()) {
      if (oracle_ && !oracle_->is_tier1(f.context(), x)) continue;
      out_ += x + "=" + render(v) + ";";
    }
    out_ += "}";
  }

  std::string finish() {
    out_ += "|";
    while (!queue_.empty()) {
      NodeId n = queue_.front();
      queue_.pop_front();
      out_ += "N" + std::to_string(names_.at(n.id)) + ":" + std::to_string(c_.graph.label(n)) + "{";
      for (const auto& [field, v] : c_.graph.arrows(n)) out_ += field + "=" + render(v) + ";";
      out_ += "}";
    }
    return std::move(out_);
  }

 private:
  const Configuration& c_;
  const ContextOracle* oracle_;
  bool exact_;
  std::string out_;
  std::map<std::uint32_t, std::uint32_t> names_;
  std::deque<NodeId> queue_;

  std::string render(const Value& v) {
    const NodeId* n = std::get_if<NodeId>(&v);
    if (!n) return show(v);
    if (*n == kNullNode) return "null";
    auto it = names_.find(n->id);
    if (it == names_.end()) {
      std::uint32_t name = exact_ ? n->id : static_cast<std::uint32_t>(names_.size() + 1);
      it = names_.emplace(n->id, name).first;
      queue_.push_back(*n);
    }
    return "#" + std::to_string(it->second);
  }
};

}  // namespace

std::string tier1_form(const Configuration& c, const ContextOracle* oracle, bool exact_ids) {
  FormBuilder b(c, oracle, exact_ids);
  for (std::size_t i = 0; i < c.stack.size(); ++i) b.frame(i);
  return b.finish();
}

std::string tier1_frame_form(const Configuration& c, std::size_t frame, const ContextOracle* oracle,
                             bool exact_ids) {
  FormBuilder b(c, oracle, exact_ids);
  b.frame(frame);
  return b.finish();
}

bool tier1_equivalent(const Configuration& a, const Configuration& b, const ContextOracle* oracle) {
  return tier1_form(a, oracle, true) == tier1_form(b, oracle, true);
}

Tier1Trace trace_tier1(const ResolvedProgram& flat, const Configuration& start, const Continuation& mi,
                       const ContextOracle* oracle, std::uint64_t budget) {
  Tier1Trace out;
  Machine m(flat, oracle);
  m.set_state(start, mi);
  out.configs.push_back(start);
  std::string last = tier1_form(start, oracle, true);
  while (!m.done()) {
    if (out.steps >= budget) return out;
    m.step();
    ++out.steps;
    std::string now = tier1_form(m.config(), oracle, true);
    if (now != last) {
      out.configs.push_back(m.config());
      last = std::move(now);
    }
  }
  out.complete = true;
  return out;
}

Tier1Trace trace_comp(const ResolvedProgram& flat, const ContextOracle* oracle, std::uint64_t budget,
                      const std::function<void(Configuration&)>& adjust_input) {
  Machine m(flat, oracle);
  m.load(flat.program().init());
  std::uint64_t n = 0;
  while (!m.done() && n < budget) {
    m.step();
    ++n;
  }
  if (adjust_input) adjust_input(m.config());
  Machine k(flat, oracle);
  k.set_state(m.config(), {});
  const auto& segs = flat.program().segments;
  for (std::size_t s = segs.size(); s-- > 1;) k.load(segs[s]);
  return trace_tier1(flat, k.config(), k.continuation(), oracle, budget);
}

}  // namespace aoo
