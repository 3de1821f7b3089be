#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "aoo/frontend/ast.hpp"
#include "aoo/support/nat.hpp"

namespace aoo {

struct NodeId {
  std::uint32_t id = 0;
  friend bool operator==(NodeId, NodeId) = default;
  friend auto operator<=>(NodeId, NodeId) = default;
};

inline constexpr NodeId kNullNode{0};

struct Char {
  std::uint32_t cp = 0;
  friend bool operator==(Char, Char) = default;
};

struct Unit {
  friend bool operator==(Unit, Unit) = default;
};

using Value = std::variant<NodeId, bool, Nat, Char, Unit>;

inline bool is_ref(const Value& v) { return std::holds_alternative<NodeId>(v); }

// Completion default for a declared type: null, false, 0, '\0', unit.
Value default_value(const TypeName& t);

Value constant_value(const Constant& c);

// Size contribution of one mapped value: the number itself for naturals,
// 1 for booleans, characters and references.
std::uint64_t value_size(const Value& v);

std::string show(const Value& v);

}  // namespace aoo
