#pragma once

#include "aoo/frontend/ast.hpp"
#include "aoo/frontend/class_table.hpp"
#include "aoo/support/error.hpp"

namespace aoo {

// The four well-formedness conditions: unique class names, locals declared
// and initialized exactly once before their first use, void return type iff
// no return statement, and unique signatures per class (including the ban on
// signatures that differ only in their return type).
Diagnostics check_well_formed(const Program& p);

// Tier-free type synthesis (the ⊨ judgment). Annotates every call and
// constructor site with its static resolution and returns type errors.
Diagnostics resolve(Program& p, const ClassTable& ct);

// Static type of an expression in a scope, or nullopt when ill-typed.
// Requires resolve() to have run on the enclosing program.
struct Scope;
std::optional<TypeName> synth_type(const Expr& e, const Scope& s, const ClassTable& ct);

}  // namespace aoo
