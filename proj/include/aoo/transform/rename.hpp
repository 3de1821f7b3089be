#pragma once

#include "aoo/frontend/ast.hpp"

namespace aoo {

// Makes local and parameter names unique across bodies. A name used by more
// than one method or constructor body becomes `name_k` in each of them
// (k counting bodies in declaration order); main keeps its names, and fields
// are never renamed.
Program alpha_rename(const Program& p);

}  // namespace aoo
