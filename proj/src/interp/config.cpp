#include "aoo/interp/config.hpp"

#include "aoo/support/error.hpp"

namespace aoo {

PointerGraph::PointerGraph() : labels_{-1}, arrows_(1) {}

NodeId PointerGraph::add(int cls) {
  labels_.push_back(cls);
  arrows_.emplace_back();
  return NodeId{static_cast<std::uint32_t>(labels_.size() - 1)};
}

const Value* PointerGraph::get(NodeId n, const std::string& field) const {
  const auto& as = arrows_.at(n.id);
  auto it = as.find(field);
  return it == as.end() ? nullptr : &it->second;
}

void PointerGraph::set(NodeId n, const std::string& field, Value v) {
  if (n == kNullNode) throw Error("arrow from the null node");
  arrows_.at(n.id)[field] = std::move(v);
}

Value Frame::lookup(const std::string& x) const {
  if (auto it = mapping_.find(x); it != mapping_.end()) return it->second;
  if (x == "this") return kNullNode;
  auto t = scope_->type_of(x);
  if (!t) throw Error("unknown variable " + x);
  return default_value(*t);
}

void Frame::bind(const std::string& x, Value v) {
  auto it = mapping_.find(x);
  if (it != mapping_.end()) {
    mapping_size_ -= value_size(it->second);
    it->second = std::move(v);
    mapping_size_ = sat_add(mapping_size_, value_size(it->second));
  } else {
    mapping_size_ = sat_add(mapping_size_, value_size(v));
    mapping_.emplace(x, std::move(v));
  }
}

NodeId Frame::self() const {
  auto it = mapping_.find("this");
  return it == mapping_.end() ? kNullNode : std::get<NodeId>(it->second);
}

Sizes sizes(const Configuration& c) {
  Sizes s;
  s.heap = c.graph.size();
  for (const Frame& f : c.stack) s.stack = sat_add(s.stack, f.size());
  s.total = sat_add(s.heap, s.stack);
  return s;
}

}  // namespace aoo
