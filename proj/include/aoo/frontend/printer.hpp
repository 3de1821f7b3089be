#pragma once

#include <string>

#include "aoo/frontend/ast.hpp"

namespace aoo {

// Renders surface syntax that parses back to the same shape.
std::string print(const Expr& e);
std::string print(const Instr& i, int indent = 0);
std::string print(const Block& b, int indent = 0);
std::string print(const Program& p);

}  // namespace aoo
