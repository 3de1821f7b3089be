#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "aoo/frontend/ast.hpp"
#include "aoo/frontend/resolved.hpp"

namespace aoo {

// Supplies never-used identifiers for one body and records their types.
class FreshNames {
 public:
  explicit FreshNames(std::function<bool(const std::string&)> taken) : taken_(std::move(taken)) {}
  std::string next();

 private:
  std::function<bool(const std::string&)> taken_;
  int counter_ = 0;
};

// Flattens one instruction sequence of the body whose scope is `scope`.
// Fresh variables are declared at their first assignment; the scope is only
// consulted for types. `next_site` numbers duplicated call sites.
Block flatten_block(const Block& b, const Scope& scope, const ClassTable& ct, FreshNames& fresh,
                    int& next_site);

// Flattens every method, constructor, Init and Comp body.
Program flatten_program(const ResolvedProgram& p);

// True when every expression argument is a variable and every guard is a
// variable.
bool is_flat(const Block& b);
bool is_flat(const Program& p);

// Number of AST symbols: each node and each identifier counts one.
std::uint64_t instr_size(const Instr& i);
std::uint64_t instr_size(const Block& b);
std::uint64_t expr_size(const Expr& e);

}  // namespace aoo
