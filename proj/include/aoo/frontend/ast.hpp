#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aoo/support/nat.hpp"

namespace aoo {

struct Location {
  int line = 0;
  int col = 0;
};

struct TypeName {
  enum class Kind { Void, Boolean, Int, Char, Class };

  Kind kind = Kind::Void;
  std::string cls;  // set only when kind == Class

  static TypeName void_type() { return {Kind::Void, {}}; }
  static TypeName boolean() { return {Kind::Boolean, {}}; }
  static TypeName integer() { return {Kind::Int, {}}; }
  static TypeName character() { return {Kind::Char, {}}; }
  static TypeName of_class(std::string name) { return {Kind::Class, std::move(name)}; }

  bool is_reference() const { return kind == Kind::Class; }
  bool is_primitive() const { return kind != Kind::Class; }
  bool is_void() const { return kind == Kind::Void; }

  std::string str() const;

  friend bool operator==(const TypeName&, const TypeName&) = default;
};

// Copyable owning pointer, so AST nodes keep value semantics.
template <typename T>
class Box {
 public:
  Box() = default;
  explicit Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }
  T* get() { return ptr_.get(); }
  const T* get() const { return ptr_.get(); }
  explicit operator bool() const { return static_cast<bool>(ptr_); }

 private:
  std::unique_ptr<T> ptr_;
};

struct Constant {
  TypeName type;  // boolean, int or char
  bool boolean = false;
  Nat number = 0;
  std::uint32_t character = 0;

  static Constant of_bool(bool b) { return {TypeName::boolean(), b, 0, 0}; }
  static Constant of_int(Nat n) { return {TypeName::integer(), false, std::move(n), 0}; }
  static Constant of_char(std::uint32_t c) { return {TypeName::character(), false, 0, c}; }

  friend bool operator==(const Constant&, const Constant&) = default;
};

// Static resolution of a call or constructor site, filled in by resolve().
struct MethodRef {
  int cls = -1;    // index into Program::classes
  int index = -1;  // index into ClassDecl::methods or ::ctors
  bool ctor = false;

  bool valid() const { return cls >= 0; }
  friend bool operator==(const MethodRef&, const MethodRef&) = default;
  friend auto operator<=>(const MethodRef&, const MethodRef&) = default;
};

struct Expr {
  enum class Kind { Var, Const, Null, This, Op, New, Call };

  Kind kind = Kind::Null;
  Location loc;
  std::string name;  // variable, operator, class (New) or method (Call)
  Constant value;    // Const only
  std::vector<Expr> args;
  Box<Expr> receiver;  // Call only
  int site = -1;       // unique id of New/Call occurrences
  MethodRef target;    // resolved constructor / statically resolved method
  std::string static_class;  // receiver's static class (Call)

  static Expr var(std::string n, Location l = {});
  static Expr constant(Constant c, Location l = {});
  static Expr null(Location l = {});
  static Expr this_ref(Location l = {});
  static Expr op(std::string n, std::vector<Expr> a, Location l = {});
  static Expr make_new(std::string cls, std::vector<Expr> a, Location l = {});
  static Expr call(Expr recv, std::string method, std::vector<Expr> a, Location l = {});

  bool is_atomic() const {
    return kind == Kind::Var || kind == Kind::Const || kind == Kind::Null || kind == Kind::This;
  }
};

struct Instr {
  enum class Kind { Skip, Assign, Seq, While, If, Call };

  Kind kind = Kind::Skip;
  Location loc;
  std::optional<TypeName> decl;  // Assign: declared type when this is a declaration
  std::string target;            // Assign
  Expr expr;                     // Assign right-hand side, Call expression, or guard
  std::vector<Instr> body;       // Seq items, While body, If then-branch
  std::vector<Instr> alt;        // If else-branch

  static Instr skip(Location l = {});
  static Instr assign(std::optional<TypeName> decl, std::string target, Expr e, Location l = {});
  static Instr seq(std::vector<Instr> items, Location l = {});
  static Instr loop(Expr guard, std::vector<Instr> body, Location l = {});
  static Instr branch(Expr guard, std::vector<Instr> then_b, std::vector<Instr> else_b,
                      Location l = {});
  static Instr call(Expr e, Location l = {});

  const Expr& guard() const { return expr; }
};

using Block = std::vector<Instr>;

struct Param {
  TypeName type;
  std::string name;
  Location loc;
};

struct FieldDecl {
  TypeName type;
  std::string name;
  Location loc;
};

struct MethodDecl {
  std::string name;
  std::string owner;
  TypeName ret;
  std::vector<Param> params;
  Block body;
  std::optional<std::string> return_var;
  Location loc;
  Location return_loc;
};

struct CtorDecl {
  std::string owner;
  std::vector<Param> params;
  Block body;
  Location loc;
};

struct ClassDecl {
  std::string name;
  std::optional<std::string> super;
  std::vector<FieldDecl> fields;
  std::vector<CtorDecl> ctors;
  std::vector<MethodDecl> methods;
  Location loc;
};

// segments[0] is the initialization instruction; segments[1..] are the
// computational segments separated by `//Comp` markers.
struct Program {
  std::string file;
  std::vector<ClassDecl> classes;
  int exe_class = -1;
  Location main_loc;
  std::vector<Block> segments;
  int next_site = 0;

  const ClassDecl* find_class(const std::string& name) const;
  int class_index(const std::string& name) const;

  const Block& init() const { return segments.at(0); }
  Block comp() const;  // concatenation of all computational segments
  std::size_t comp_segment_count() const { return segments.empty() ? 0 : segments.size() - 1; }

  const MethodDecl& method(const MethodRef& r) const { return classes.at(r.cls).methods.at(r.index); }
  const CtorDecl& ctor(const MethodRef& r) const { return classes.at(r.cls).ctors.at(r.index); }
  const Block& body(const MethodRef& r) const { return r.ctor ? ctor(r).body : method(r).body; }
  const std::vector<Param>& params(const MethodRef& r) const {
    return r.ctor ? ctor(r).params : method(r).params;
  }
  std::string signature(const MethodRef& r) const;
};

// Structural equality that ignores locations, site ids and resolution data.
bool same_shape(const Expr& a, const Expr& b);
bool same_shape(const Instr& a, const Instr& b);
bool same_shape(const Block& a, const Block& b);
bool same_shape(const Program& a, const Program& b);

}  // namespace aoo
