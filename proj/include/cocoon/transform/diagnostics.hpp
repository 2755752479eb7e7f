#pragma once

#include <stdexcept>
#include <string>

#include "cocoon/transform/ast.hpp"

namespace cocoon::transform {

// A construct the transformer refuses. code is a category such as
// "E-CLOSURE-IN-BLOCK", or "E-PARSE" for malformed input.
struct Rejection : std::runtime_error {
  Rejection(std::string c, Loc l, const std::string& msg) : std::runtime_error(msg), code(std::move(c)), loc(l) {}
  std::string code;
  Loc loc;
};

struct Diagnostic {
  std::string code;
  Loc loc;
  std::string message;
};

// "file:line:col: error: CODE: message"
std::string format_diagnostic(const std::string& file, const Diagnostic& d);

}  // namespace cocoon::transform
