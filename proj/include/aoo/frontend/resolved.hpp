#pragma once

#include <map>
#include <memory>
#include <string>

#include "aoo/frontend/ast.hpp"
#include "aoo/frontend/class_table.hpp"
#include "aoo/frontend/scope.hpp"

namespace aoo {

// A well-formed program whose call and constructor sites are resolved,
// together with its class table and per-body scopes. Pinned in memory since
// the class table and the interpreter refer into the AST.
class ResolvedProgram {
 public:
  // Builds the class table and resolves sites; throws IllFormed on errors.
  ResolvedProgram(Program p, bool flat);
  ResolvedProgram(const ResolvedProgram&) = delete;
  ResolvedProgram& operator=(const ResolvedProgram&) = delete;

  const Program& program() const { return prog_; }
  const ClassTable& classes() const { return *ct_; }
  bool is_flat() const { return flat_; }

  // Scope of a method or constructor body; the main scope for an invalid ref.
  const Scope& scope(const MethodRef& r) const;
  const Scope& main() const { return main_; }

  // Every method and declared constructor, in declaration order.
  std::vector<MethodRef> all_bodies() const;

 private:
  Program prog_;
  bool flat_;
  std::unique_ptr<ClassTable> ct_;
  std::map<MethodRef, Scope> scopes_;
  Scope main_;
};

using FlatProgram = ResolvedProgram;

struct Compiled {
  std::shared_ptr<const ResolvedProgram> source;  // renamed apart, unflattened
  std::shared_ptr<const ResolvedProgram> flat;
};

// parse → well-formedness → renaming → resolution → flattening.
// Throws SourceError (syntax) or IllFormed (well-formedness / ⊨ errors).
Compiled compile(std::string_view source, const std::string& file = "<input>");
Compiled compile(Program parsed);

}  // namespace aoo
