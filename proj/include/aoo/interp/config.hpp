#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aoo/frontend/ast.hpp"
#include "aoo/frontend/scope.hpp"
#include "aoo/interp/value.hpp"

namespace aoo {

// Heap as a labeled graph. Node 0 is the null object; every other node carries
// the index of its class and one outgoing arrow per field (primitive fields
// hold their value in place of a target node).
class PointerGraph {
 public:
  PointerGraph();

  NodeId add(int cls);
  std::size_t size() const { return labels_.size(); }
  int label(NodeId n) const { return labels_.at(n.id); }
  const std::map<std::string, Value>& arrows(NodeId n) const { return arrows_.at(n.id); }
  const Value* get(NodeId n, const std::string& field) const;
  // Replaces the arrow of that label if present.
  void set(NodeId n, const std::string& field, Value v);

  friend bool operator==(const PointerGraph&, const PointerGraph&) = default;

 private:
  std::vector<int> labels_;
  std::vector<std::map<std::string, Value>> arrows_;
};

// Pointer mapping of one stack frame. Lookups complete with the default of
// the declared type; the cached size follows the Sizes definition.
class Frame {
 public:
  Frame() = default;
  Frame(MethodRef sig, const Scope* scope, int ctx) : sig_(sig), scope_(scope), ctx_(ctx) {}

  const MethodRef& signature() const { return sig_; }
  const Scope& scope() const { return *scope_; }
  int context() const { return ctx_; }

  const std::map<std::string, Value>& mapping() const { return mapping_; }
  bool has(const std::string& x) const { return mapping_.count(x) != 0; }
  // Raw mapping entry or the completion default.
  Value lookup(const std::string& x) const;
  void bind(const std::string& x, Value v);
  NodeId self() const;

  // 1 + mapping size.
  std::uint64_t size() const { return sat_add(1, mapping_size_); }

 private:
  MethodRef sig_;
  const Scope* scope_ = nullptr;
  int ctx_ = -1;
  std::map<std::string, Value> mapping_;
  std::uint64_t mapping_size_ = 0;
};

struct Sizes {
  std::uint64_t heap = 0;
  std::uint64_t stack = 0;
  std::uint64_t total = 0;
};

struct Configuration {
  PointerGraph graph;
  std::vector<Frame> stack;  // back() is the top frame

  Frame& top() { return stack.back(); }
  const Frame& top() const { return stack.back(); }
};

Sizes sizes(const Configuration& c);

}  // namespace aoo
