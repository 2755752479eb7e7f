#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cocoon/transform/ast.hpp"
#include "cocoon/transform/diagnostics.hpp"
#include "cocoon/transform/lexer.hpp"

namespace cocoon::transform {

// Parses tokens [begin, end) of a token vector. Throws Rejection. The range must not include
// the End token.
class Parser {
 public:
  Parser(const std::vector<Token>& toks, std::size_t begin, std::size_t end);

  std::vector<StmtPtr> parse_statements();  // until end of range
  ExprPtr parse_expression_only();          // whole range is one expression

  ExprPtr parse_expr();         // full expression (no comma operator)
  ExprPtr parse_assignment();
  StmtPtr parse_statement();

  bool at_end() const { return pos_ >= end_; }

 private:
  const Token& peek(std::size_t k = 0) const;
  bool is(const char* text, std::size_t k = 0) const;
  bool is_ident(std::size_t k = 0) const;
  const Token& take();
  void expect(const char* text);
  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& code, const std::string& msg) const;
  Loc loc() const;

  // Balanced token text; the position moves past the closing token.
  std::string balanced(const char* open, const char* close);
  std::string join(std::size_t b, std::size_t e) const;
  bool scan_template_args(std::size_t at, std::size_t* after) const;
  bool try_type(std::size_t* p) const;
  bool looks_like_decl() const;

  ExprPtr parse_binary(int min_prec);
  ExprPtr parse_conditional();
  ExprPtr parse_unary();
  ExprPtr parse_postfix(ExprPtr e);
  ExprPtr parse_primary();
  ExprPtr parse_name();
  ExprPtr parse_lambda();
  ExprPtr parse_braced_list(ExprKind kind, std::string type);
  void parse_call_args(Expr& into, const char* close);

  StmtPtr parse_decl(bool require_semi);
  StmtPtr parse_compound();
  StmtPtr parse_for();

  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::size_t end_;
  Token end_tok_;
};

// toks[at] is '<'. On success *after is one past the matching '>'. Fails on
// tokens that cannot appear in template arguments (';', braces, '&&', ...).
bool match_template_args(const std::vector<Token>& toks, std::size_t at, std::size_t end, std::size_t* after);

// Token text joined with single spaces, except around "::".
std::string join_tokens(const std::vector<Token>& toks, std::size_t b, std::size_t e);

}  // namespace cocoon::transform
