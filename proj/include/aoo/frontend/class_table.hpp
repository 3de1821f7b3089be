#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aoo/frontend/ast.hpp"

namespace aoo {

struct FieldInfo {
  std::string name;
  TypeName type;
  int owner = -1;  // declaring class
};

// Inheritance order, field sets and method resolution for one program.
class ClassTable {
 public:
  // Throws IllFormed on an unknown superclass or a cyclic extends chain.
  explicit ClassTable(const Program& p);

  const Program& program() const { return *prog_; }
  int size() const { return static_cast<int>(prog_->classes.size()); }
  int index(const std::string& name) const;  // -1 when unknown
  const std::string& name(int c) const { return prog_->classes.at(c).name; }

  // c ⊑ d: reflexive-transitive closure of extends.
  bool is_subclass(int c, int d) const { return below_[c][d]; }
  bool is_subclass(const std::string& c, const std::string& d) const;
  // Assignability of a value of type `from` into a slot of type `to`.
  bool assignable(const TypeName& from, const TypeName& to) const;

  std::optional<int> superclass(int c) const { return super_[c]; }
  // Classes d with d ⊑ c, including c itself.
  std::vector<int> subclasses(int c) const;

  // Fields of c including inherited ones, superclass fields first.
  const std::vector<FieldInfo>& fields(int c) const { return fields_[c]; }
  std::optional<TypeName> field_type(int c, const std::string& f) const;
  bool has_field(int c, const std::string& f) const { return field_type(c, f).has_value(); }

  // Least superclass of c (c included) declaring a method with the given
  // name and exact parameter types: the defining class for dynamic dispatch.
  std::optional<MethodRef> dispatch(int c, const std::string& method,
                                    const std::vector<TypeName>& param_types) const;
  MethodRef dispatch(int runtime_cls, const MethodRef& static_target) const;

  // Static resolution of a call on a receiver of class c with the given
  // argument types (null literal type allowed).
  std::optional<MethodRef> resolve_method(int c, const std::string& method,
                                          const std::vector<TypeName>& arg_types) const;
  // Constructor selection. An implicit constructor (index -1) exists for a
  // class without declared constructors; it takes either no arguments or
  // one argument per field of C.F in order.
  std::optional<MethodRef> resolve_ctor(int c, const std::vector<TypeName>& arg_types) const;
  std::vector<TypeName> param_types(const MethodRef& r) const;

  // Methods in strict subclasses of m's class that override m.
  std::vector<MethodRef> overrides(const MethodRef& m) const;
  // Possible runtime targets of a call statically resolved to m on a
  // receiver of static class c: m itself plus overrides reachable below c.
  std::vector<MethodRef> dispatch_targets(int c, const MethodRef& m) const;

 private:
  const Program* prog_;
  std::map<std::string, int> by_name_;
  std::vector<std::optional<int>> super_;
  std::vector<std::vector<bool>> below_;
  std::vector<std::vector<FieldInfo>> fields_;
};

}  // namespace aoo
