#pragma once

#include <set>
#include <string>
#include <vector>

#include "cocoon/allowlist.hpp"
#include "cocoon/transform/ast.hpp"
#include "cocoon/transform/diagnostics.hpp"

namespace cocoon::transform {

// Executed: the code that runs, source semantics kept. Checked: never runs;
// instrumented so that it only compiles when the source obeys the secret
// context rules.
enum class Variant { Executed, Checked };

struct Context {
  const Allowlist* allowlist = nullptr;
  std::string label;                // block label; empty in side-effect-free functions
  std::set<std::string> macros;     // names #define'd in the translation unit
  std::set<std::string> constants;  // names left unchecked (template parameters)
};

// Rejects constructs that secret contexts do not support. Throws Rejection.
void check_body(const std::vector<StmtPtr>& body, const Context& ctx);

struct FreeVariables {
  std::vector<std::string> read;      // only read
  std::vector<std::string> captured;  // written, address-taken or iterated over
};

// Unqualified names used in body but not declared there or in bound. First
// use order.
FreeVariables free_variables(const std::vector<StmtPtr>& body, const std::vector<std::string>& bound,
                             const std::set<std::string>& constants);

class Rewriter {
 public:
  explicit Rewriter(const Context& ctx) : ctx_(ctx) {}

  std::string expr(const Expr& e, Variant v);
  // Write targets and operands of '&'.
  std::string place(const Expr& e, Variant v);
  std::string stmt(const Stmt& s, Variant v);
  std::string stmts(const std::vector<StmtPtr>& body, Variant v);

 private:
  std::string fresh();
  std::string condition(const Expr& e, Variant v);
  std::string call(const Expr& e, Variant v);
  std::string args(const std::vector<ExprPtr>& kids, std::size_t from, Variant v);
  std::string decl(const Stmt& s, Variant v);
  std::string local_checks(const std::vector<std::string>& names);

  const Context& ctx_;
  int counter_ = 0;
};

// The secret block expression: a constant-true conditional whose taken
// branch runs the executed variant with panics contained and whose other
// branch holds the checked variant. Throws Rejection.
std::string expand_block(const std::string& label, const std::vector<StmtPtr>& body, const Context& ctx);

bool is_secret_operation(const std::string& name);

}  // namespace cocoon::transform
