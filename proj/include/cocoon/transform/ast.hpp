#pragma once

#include <memory>
#include <string>
#include <vector>

namespace cocoon::transform {

struct Loc {
  int line = 0;
  int col = 0;
};

struct Stmt;
struct Expr;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

enum class ExprKind {
  Literal,    // text
  Name,       // text (with template args), base (without), qualified
  Unary,      // op, kids[0]; op "throw" for throw-expressions
  Postfix,    // op ++/--, kids[0]
  Binary,     // op, kids[0], kids[1]
  Assign,     // op = or compound, kids[0], kids[1]
  Cond,       // kids[0] ? kids[1] : kids[2]
  Call,       // kids[0] callee, kids[1..] arguments
  Member,     // kids[0] object, op "." or "->", text member name
  Index,      // kids[0][kids[1]]
  Cast,       // op cast keyword, text target type, kids[0]
  BraceInit,  // text type, kids arguments
  InitList,   // bare {kids}
  Paren,      // (kids[0])
  Lambda,     // captures, params, ret, body
  Opaque,     // text kept verbatim (sizeof, decltype, ...)
};

struct Expr {
  ExprKind kind = ExprKind::Literal;
  Loc loc;
  std::string op;
  std::string text;
  std::string base;
  bool qualified = false;
  std::vector<ExprPtr> kids;
  // Lambda parts, canonical token text.
  std::string captures;
  std::string params;
  std::string ret;
  std::string specifiers;
  std::vector<StmtPtr> body;
};

enum class StmtKind {
  Compound,  // body
  Decl,      // type, decls
  ExprStmt,  // e1
  If,        // e1, s1, s2 (else, may be null)
  While,     // e1, s1
  DoWhile,   // s1, e1
  For,       // init (may be null), e1 cond, e2 step, s1
  RangeFor,  // type (full binding text), names, e1 range, s1
  Switch,    // e1, s1
  Case,      // text
  Default,
  Return,    // e1 (may be null)
  Break,
  Continue,
  Empty,
  Raw,  // text kept verbatim (static_assert, using)
};

struct Declarator {
  Loc loc;
  std::string prefix;  // pointer and reference operators
  std::string name;    // or a structured binding "[a, b]"
  std::vector<std::string> names;
  std::string suffix;  // array bounds
  char init_kind = 0;  // '=', '{', '(' or 0
  std::vector<ExprPtr> init;
};

struct Stmt {
  StmtKind kind = StmtKind::Empty;
  Loc loc;
  std::string type;
  std::string text;
  std::vector<std::string> names;
  std::vector<Declarator> decls;
  ExprPtr e1, e2;
  StmtPtr init, s1, s2;
  std::vector<StmtPtr> body;
};

}  // namespace cocoon::transform
