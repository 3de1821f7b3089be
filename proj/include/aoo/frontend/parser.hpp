#pragma once

#include <string>
#include <string_view>

#include "aoo/frontend/ast.hpp"

namespace aoo {

// Parses a complete program. Throws SourceError on syntax errors, a missing
// `//Comp` marker or a duplicate class name.
Program parse(std::string_view source, const std::string& file = "<input>");

// Parses a single instruction sequence, for tests and tools. Site ids start at
// `first_site`.
Block parse_block(std::string_view source, int first_site = 0);

// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace aoo
