#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aoo/frontend/ast.hpp"

namespace aoo {

struct Diagnostic {
  std::string file;
  int line = 0;
  int col = 0;
  std::string code;
  std::string message;

  nlohmann::json to_json() const {
    return {{"file", file}, {"line", line}, {"col", col}, {"code", code}, {"message", message}};
  }
  std::string str() const;
};

using Diagnostics = std::vector<Diagnostic>;

nlohmann::json to_json(const Diagnostics& ds);

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax or static error tied to a source location.
class SourceError : public Error {
 public:
  SourceError(Diagnostic d) : Error(d.str()), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

// A program rejected by well-formedness or resolution; carries every diagnostic.
class IllFormed : public Error {
 public:
  explicit IllFormed(Diagnostics ds);
  const Diagnostics& diagnostics() const { return diags_; }

 private:
  Diagnostics diags_;
};

class EvalError : public Error {
 public:
  EvalError(const std::string& what, Location loc = {})
      : Error(what + " at " + std::to_string(loc.line) + ":" + std::to_string(loc.col)),
        loc_(loc) {}
  Location location() const { return loc_; }

 private:
  Location loc_;
};

}  // namespace aoo
