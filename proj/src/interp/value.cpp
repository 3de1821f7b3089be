#include "aoo/interp/value.hpp"

namespace aoo {

Value default_value(const TypeName& t) {
  switch (t.kind) {
    case TypeName::Kind::Boolean: return false;
    case TypeName::Kind::Int: return Nat(0);
    case TypeName::Kind::Char: return Char{0};
    case TypeName::Kind::Class: return kNullNode;
    case TypeName::Kind::Void: return Unit{};
  }
  return Unit{};
}

Value constant_value(const Constant& c) {
  switch (c.type.kind) {
    case TypeName::Kind::Boolean: return c.boolean;
    case TypeName::Kind::Int: return c.number;
    case TypeName::Kind::Char: return Char{c.character};
    default: return Unit{};
  }
}

std::uint64_t value_size(const Value& v) {
  if (const Nat* n = std::get_if<Nat>(&v)) return saturate_u64(*n);
  if (std::holds_alternative<Unit>(v)) return 0;
  return 1;
}

std::string show(const Value& v) {
  struct {
    std::string operator()(NodeId n) const { return n.id == 0 ? "null" : "&" + std::to_string(n.id); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const Nat& n) const { return n.str(); }
    std::string operator()(Char c) const { return "'" + std::to_string(c.cp) + "'"; }
    std::string operator()(Unit) const { return "()"; }
  } visitor;
  return std::visit(visitor, v);
}

}  // namespace aoo
