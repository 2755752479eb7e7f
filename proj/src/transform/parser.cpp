#include "cocoon/transform/parser.hpp"

#include <algorithm>
#include <cstring>

namespace cocoon::transform {

namespace {

bool is_builtin_type_word(std::string_view s) {
  static constexpr std::string_view w[] = {"void",   "bool",     "char",     "char8_t", "char16_t", "char32_t",
                                           "wchar_t", "short",   "int",      "long",    "float",    "double",
                                           "signed", "unsigned", "auto"};
  return std::find(std::begin(w), std::end(w), s) != std::end(w);
}

bool is_decl_specifier(std::string_view s) {
  static constexpr std::string_view w[] = {"const",  "constexpr",    "static",  "volatile",
                                           "inline", "thread_local", "typename", "constinit"};
  return std::find(std::begin(w), std::end(w), s) != std::end(w);
}

struct BinOp {
  const char* text;
  int prec;
};

constexpr BinOp kBinOps[] = {{"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6},
                             {"!=", 6}, {"<", 7},  {">", 7},  {"<=", 7}, {">=", 7}, {"<=>", 8},
                             {"<<", 9}, {">>", 9}, {"+", 10}, {"-", 10}, {"*", 11}, {"/", 11},
                             {"%", 11}};

int binary_prec(const Token& t) {
  if (t.kind != TokKind::Punct) return -1;
  for (const auto& b : kBinOps)
    if (t.text == b.text) return b.prec;
  return -1;
}

bool is_assign_op(const Token& t) {
  static constexpr std::string_view ops[] = {"=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "|=", "^="};
  return t.kind == TokKind::Punct && std::find(std::begin(ops), std::end(ops), t.text) != std::end(ops);
}

}  // namespace

bool match_template_args(const std::vector<Token>& toks, std::size_t at, std::size_t end, std::size_t* after) {
  if (at >= end || toks[at].text != "<") return false;
  int angle = 0;
  int paren = 0;
  for (std::size_t i = at; i < end; ++i) {
    const Token& t = toks[i];
    if (t.kind == TokKind::String || t.kind == TokKind::Char) continue;
    const std::string& s = t.text;
    if (s == "(" || s == "[") {
      ++paren;
    } else if (s == ")" || s == "]") {
      if (--paren < 0) return false;
    } else if (s == ";" || s == "{" || s == "}") {
      return false;
    } else if (paren == 0) {
      if (s == "<") {
        ++angle;
      } else if (s == ">" || s == ">>") {
        angle -= static_cast<int>(s.size());
        if (angle == 0) {
          *after = i + 1;
          return true;
        }
        if (angle < 0) return false;
      } else if (s == "&&" || s == "||" || s == "?" || s == "=" || s == "==" || s == "!=") {
        return false;
      }
    }
  }
  return false;
}

std::string join_tokens(const std::vector<Token>& toks, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b && toks[i].text != "::" && toks[i - 1].text != "::") out += ' ';
    out += toks[i].text;
  }
  return out;
}

Parser::Parser(const std::vector<Token>& toks, std::size_t begin, std::size_t end)
    : toks_(toks), pos_(begin), end_(end) {
  end_tok_.kind = TokKind::End;
  if (end < toks.size()) {
    end_tok_.line = toks[end].line;
    end_tok_.col = toks[end].col;
  } else if (!toks.empty()) {
    end_tok_.line = toks.back().line;
    end_tok_.col = toks.back().col;
  }
}

const Token& Parser::peek(std::size_t k) const { return pos_ + k < end_ ? toks_[pos_ + k] : end_tok_; }

bool Parser::is(const char* text, std::size_t k) const {
  const Token& t = peek(k);
  return t.kind != TokKind::End && t.kind != TokKind::String && t.kind != TokKind::Char && t.text == text;
}

bool Parser::is_ident(std::size_t k) const { return peek(k).kind == TokKind::Ident && !is_keyword(peek(k).text); }

const Token& Parser::take() {
  const Token& t = peek();
  if (pos_ < end_) ++pos_;
  return t;
}

Loc Parser::loc() const { return Loc{peek().line, peek().col}; }

void Parser::fail(const std::string& msg) const { fail_at(peek(), "E-PARSE", msg); }

void Parser::fail_at(const Token& t, const std::string& code, const std::string& msg) const {
  throw Rejection(code, Loc{t.line, t.col}, msg);
}

void Parser::expect(const char* text) {
  if (!is(text)) {
    const Token& t = peek();
    fail("expected '" + std::string(text) + "' but found " + (t.kind == TokKind::End ? "end of input" : "'" + t.text + "'"));
  }
  take();
}

std::string Parser::join(std::size_t b, std::size_t e) const { return join_tokens(toks_, b, e); }

std::string Parser::balanced(const char* open, const char* close) {
  expect(open);
  std::size_t b = pos_;
  int depth = 1;
  while (!at_end()) {
    if (is(open)) ++depth;
    if (is(close) && --depth == 0) {
      std::string s = join(b, pos_);
      take();
      return s;
    }
    take();
  }
  fail(std::string("unbalanced '") + open + "'");
}

bool Parser::scan_template_args(std::size_t at, std::size_t* after) const {
  return match_template_args(toks_, at, end_, after);
}

// A type: specifiers, a builtin or (qualified, templated) name, then cv and
// pointer/reference operators.
bool Parser::try_type(std::size_t* pp) const {
  std::size_t p = *pp;
  auto txt = [&](std::size_t i) -> const std::string& { return i < end_ ? toks_[i].text : end_tok_.text; };
  auto ident_at = [&](std::size_t i) {
    return i < end_ && toks_[i].kind == TokKind::Ident && !is_keyword(toks_[i].text);
  };
  while (p < end_ && toks_[p].kind == TokKind::Ident && is_decl_specifier(toks_[p].text)) ++p;
  bool core = false;
  if (p < end_ && toks_[p].kind == TokKind::Ident && is_builtin_type_word(toks_[p].text)) {
    while (p < end_ && toks_[p].kind == TokKind::Ident && is_builtin_type_word(toks_[p].text)) ++p;
    core = true;
  } else if (txt(p) == "decltype") {
    ++p;
    if (txt(p) != "(") return false;
    int depth = 0;
    for (; p < end_; ++p) {
      if (toks_[p].text == "(") ++depth;
      if (toks_[p].text == ")" && --depth == 0) break;
    }
    if (p >= end_) return false;
    ++p;
    core = true;
  } else {
    if (txt(p) == "::") ++p;
    while (ident_at(p)) {
      ++p;
      if (txt(p) == "<") {
        std::size_t after = 0;
        if (!scan_template_args(p, &after)) return false;
        p = after;
      }
      if (txt(p) == "::" && ident_at(p + 1)) {
        p += 1;
        continue;
      }
      core = true;
      break;
    }
  }
  if (!core) return false;
  while (p < end_ && (toks_[p].text == "*" || toks_[p].text == "&" || toks_[p].text == "&&" ||
                      toks_[p].text == "const" || toks_[p].text == "volatile"))
    ++p;
  *pp = p;
  return true;
}

bool Parser::looks_like_decl() const {
  std::size_t p = pos_;
  if (!try_type(&p)) return false;
  if (p >= end_) return false;
  const Token& d = toks_[p];
  if (d.text == "[") return true;  // structured binding
  if (d.kind != TokKind::Ident || is_keyword(d.text)) return false;
  if (p + 1 >= end_) return false;
  const std::string& n = toks_[p + 1].text;
  return n == "=" || n == ";" || n == "," || n == "{" || n == "(" || n == "[" || n == ":";
}

// ---------------------------------------------------------------- statements

std::vector<StmtPtr> Parser::parse_statements() {
  std::vector<StmtPtr> out;
  while (!at_end()) out.push_back(parse_statement());
  return out;
}

ExprPtr Parser::parse_expression_only() {
  auto e = parse_expr();
  if (!at_end()) fail("unexpected '" + peek().text + "' after expression");
  return e;
}

StmtPtr Parser::parse_compound() {
  auto s = std::make_unique<Stmt>();
  s->kind = StmtKind::Compound;
  s->loc = loc();
  expect("{");
  while (!is("}")) {
    if (at_end()) fail("unterminated '{'");
    s->body.push_back(parse_statement());
  }
  take();
  return s;
}

StmtPtr Parser::parse_decl(bool require_semi) {
  auto s = std::make_unique<Stmt>();
  s->kind = StmtKind::Decl;
  s->loc = loc();
  std::size_t b = pos_;
  std::size_t p = pos_;
  try_type(&p);
  // Trailing pointer operators belong to the first declarator.
  std::size_t type_end = p;
  while (type_end > b && (toks_[type_end - 1].text == "*" || toks_[type_end - 1].text == "&" ||
                          toks_[type_end - 1].text == "&&"))
    --type_end;
  s->type = join(b, type_end);
  pos_ = type_end;
  while (true) {
    Declarator d;
    std::size_t pb = pos_;
    while (is("*") || is("&") || is("&&") || is("const")) take();
    d.prefix = join(pb, pos_);
    d.loc = loc();
    if (is("[")) {
      std::size_t nb = pos_;
      take();
      while (!is("]")) {
        if (!is_ident()) fail("expected a name in structured binding");
        d.names.push_back(take().text);
        if (is(",")) take();
      }
      take();
      d.name = join(nb, pos_);
    } else {
      if (!is_ident()) fail("expected a declarator name");
      d.name = take().text;
      d.names.push_back(d.name);
    }
    std::size_t sb = pos_;
    while (is("[")) balanced("[", "]");
    d.suffix = join(sb, pos_);
    if (is("=")) {
      take();
      d.init_kind = '=';
      if (is("{"))
        d.init.push_back(parse_braced_list(ExprKind::InitList, ""));
      else
        d.init.push_back(parse_assignment());
    } else if (is("{")) {
      d.init_kind = '{';
      auto list = parse_braced_list(ExprKind::InitList, "");
      d.init = std::move(list->kids);
    } else if (is("(")) {
      d.init_kind = '(';
      Expr tmp;
      take();
      parse_call_args(tmp, ")");
      d.init = std::move(tmp.kids);
    }
    s->decls.push_back(std::move(d));
    if (is(",")) {
      take();
      continue;
    }
    break;
  }
  if (require_semi) expect(";");
  return s;
}

StmtPtr Parser::parse_for() {
  auto s = std::make_unique<Stmt>();
  s->loc = loc();
  expect("for");
  expect("(");
  // Range-for: a ':' (not '::') at depth 0 before any ';'.
  int depth = 0;
  std::size_t colon = 0;
  for (std::size_t i = pos_; i < end_; ++i) {
    const std::string& t = toks_[i].text;
    if (t == "(" || t == "[" || t == "{") ++depth;
    if (t == ")" || t == "]" || t == "}") {
      if (depth == 0) break;
      --depth;
    }
    if (depth == 0 && t == ";") break;
    if (depth == 0 && t == ":" && toks_[i].kind == TokKind::Punct) {
      colon = i;
      break;
    }
  }
  if (colon) {
    s->kind = StmtKind::RangeFor;
    std::size_t b = pos_;
    // Binding names: every identifier inside [ ], else the last identifier.
    bool in_brackets = false;
    for (std::size_t i = b; i < colon; ++i) {
      if (toks_[i].text == "[") in_brackets = true;
      else if (toks_[i].text == "]") in_brackets = false;
      else if (in_brackets && toks_[i].kind == TokKind::Ident) s->names.push_back(toks_[i].text);
    }
    if (s->names.empty()) {
      for (std::size_t i = colon; i > b; --i)
        if (toks_[i - 1].kind == TokKind::Ident && !is_keyword(toks_[i - 1].text)) {
          s->names.push_back(toks_[i - 1].text);
          break;
        }
    }
    if (s->names.empty()) fail("range-for without a loop variable");
    s->type = join(b, colon);
    pos_ = colon + 1;
    s->e1 = parse_expr();
    expect(")");
    s->s1 = parse_statement();
    return s;
  }
  s->kind = StmtKind::For;
  if (is(";")) {
    take();
  } else if (looks_like_decl()) {
    s->init = parse_decl(true);
  } else {
    auto st = std::make_unique<Stmt>();
    st->kind = StmtKind::ExprStmt;
    st->loc = loc();
    st->e1 = parse_expr();
    expect(";");
    s->init = std::move(st);
  }
  if (!is(";")) s->e1 = parse_expr();
  expect(";");
  if (!is(")")) s->e2 = parse_expr();
  expect(")");
  s->s1 = parse_statement();
  return s;
}

StmtPtr Parser::parse_statement() {
  auto s = std::make_unique<Stmt>();
  s->loc = loc();
  const Token& t = peek();
  if (t.kind == TokKind::Directive) fail_at(t, "E-MACRO-IN-BLOCK", "preprocessor directives are not allowed here");
  if (is("{")) return parse_compound();
  if (is(";")) {
    take();
    s->kind = StmtKind::Empty;
    return s;
  }
  if (t.kind == TokKind::Ident) {
    const std::string& w = t.text;
    if (w == "if") {
      take();
      if (is("constexpr")) fail_at(peek(), "E-UNSUPPORTED", "'if constexpr' is not supported here");
      s->kind = StmtKind::If;
      expect("(");
      s->e1 = parse_expr();
      expect(")");
      s->s1 = parse_statement();
      if (is("else")) {
        take();
        s->s2 = parse_statement();
      }
      return s;
    }
    if (w == "while") {
      take();
      s->kind = StmtKind::While;
      expect("(");
      s->e1 = parse_expr();
      expect(")");
      s->s1 = parse_statement();
      return s;
    }
    if (w == "do") {
      take();
      s->kind = StmtKind::DoWhile;
      s->s1 = parse_statement();
      expect("while");
      expect("(");
      s->e1 = parse_expr();
      expect(")");
      expect(";");
      return s;
    }
    if (w == "for") return parse_for();
    if (w == "switch") {
      take();
      s->kind = StmtKind::Switch;
      expect("(");
      s->e1 = parse_expr();
      expect(")");
      s->s1 = parse_statement();
      return s;
    }
    if (w == "case") {
      take();
      s->kind = StmtKind::Case;
      std::size_t b = pos_;
      while (!at_end() && !(is(":") && peek().kind == TokKind::Punct)) take();
      s->text = join(b, pos_);
      expect(":");
      return s;
    }
    if (w == "default" && is(":", 1)) {
      take();
      take();
      s->kind = StmtKind::Default;
      return s;
    }
    if (w == "return") {
      take();
      s->kind = StmtKind::Return;
      if (is("{"))
        s->e1 = parse_braced_list(ExprKind::InitList, "");
      else if (!is(";"))
        s->e1 = parse_expr();
      expect(";");
      return s;
    }
    if (w == "break" || w == "continue") {
      take();
      s->kind = w == "break" ? StmtKind::Break : StmtKind::Continue;
      expect(";");
      return s;
    }
    if (w == "static_assert" || w == "using" || w == "typedef") {
      std::size_t b = pos_;
      while (!at_end() && !is(";")) take();
      s->kind = StmtKind::Raw;
      s->text = join(b, pos_) + " ;";
      expect(";");
      return s;
    }
    if (w == "goto" || w == "try" || w == "asm" || w == "co_return" || w == "co_yield")
      fail_at(t, "E-UNSUPPORTED", "'" + w + "' is not supported here");
  }
  if (looks_like_decl()) return parse_decl(true);
  s->kind = StmtKind::ExprStmt;
  s->e1 = parse_expr();
  expect(";");
  return s;
}

// --------------------------------------------------------------- expressions

ExprPtr Parser::parse_expr() { return parse_assignment(); }

ExprPtr Parser::parse_assignment() {
  if (is("throw")) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::Unary;
    e->op = "throw";
    e->loc = loc();
    take();
    if (!is(";") && !is(")") && !is(",")) e->kids.push_back(parse_assignment());
    return e;
  }
  auto lhs = parse_conditional();
  if (is_assign_op(peek())) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::Assign;
    e->loc = loc();
    e->op = take().text;
    e->kids.push_back(std::move(lhs));
    if (is("{"))
      e->kids.push_back(parse_braced_list(ExprKind::InitList, ""));
    else
      e->kids.push_back(parse_assignment());
    return e;
  }
  return lhs;
}

ExprPtr Parser::parse_conditional() {
  auto c = parse_binary(1);
  if (!is("?")) return c;
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Cond;
  e->loc = loc();
  take();
  e->kids.push_back(std::move(c));
  e->kids.push_back(parse_expr());
  expect(":");
  e->kids.push_back(parse_assignment());
  return e;
}

ExprPtr Parser::parse_binary(int min_prec) {
  auto lhs = parse_unary();
  while (true) {
    int prec = binary_prec(peek());
    if (prec < min_prec) return lhs;
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::Binary;
    e->loc = loc();
    e->op = take().text;
    e->kids.push_back(std::move(lhs));
    e->kids.push_back(parse_binary(prec + 1));
    lhs = std::move(e);
  }
}

ExprPtr Parser::parse_unary() {
  const Token& t = peek();
  if (t.kind == TokKind::Punct &&
      (t.text == "!" || t.text == "~" || t.text == "-" || t.text == "+" || t.text == "*" || t.text == "&" ||
       t.text == "++" || t.text == "--")) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::Unary;
    e->loc = loc();
    e->op = take().text;
    e->kids.push_back(parse_unary());
    return e;
  }
  if (t.kind == TokKind::Ident && (t.text == "new" || t.text == "delete" || t.text == "co_await"))
    fail_at(t, "E-UNSUPPORTED", "'" + t.text + "' is not supported here");
  return parse_postfix(parse_primary());
}

void Parser::parse_call_args(Expr& into, const char* close) {
  while (!is(close)) {
    if (at_end()) fail(std::string("expected '") + close + "'");
    if (is("{"))
      into.kids.push_back(parse_braced_list(ExprKind::InitList, ""));
    else
      into.kids.push_back(parse_assignment());
    if (is(",")) {
      take();
      if (is(close)) fail("trailing ',' in argument list");
    } else if (!is(close)) {
      fail(std::string("expected ',' or '") + close + "' in argument list");
    }
  }
  take();
}

ExprPtr Parser::parse_braced_list(ExprKind kind, std::string type) {
  auto e = std::make_unique<Expr>();
  e->kind = kind;
  e->loc = loc();
  e->text = std::move(type);
  expect("{");
  while (!is("}")) {
    if (at_end()) fail("unterminated '{'");
    if (is("{"))
      e->kids.push_back(parse_braced_list(ExprKind::InitList, ""));
    else
      e->kids.push_back(parse_assignment());
    if (is(",")) take();
    else if (!is("}")) fail("expected ',' or '}' in initializer list");
  }
  take();
  return e;
}

ExprPtr Parser::parse_postfix(ExprPtr e) {
  while (true) {
    if (is("(")) {
      auto c = std::make_unique<Expr>();
      c->kind = ExprKind::Call;
      c->loc = e->loc;
      c->kids.push_back(std::move(e));
      take();
      parse_call_args(*c, ")");
      e = std::move(c);
    } else if (is("[")) {
      auto c = std::make_unique<Expr>();
      c->kind = ExprKind::Index;
      c->loc = e->loc;
      take();
      c->kids.push_back(std::move(e));
      c->kids.push_back(parse_expr());
      expect("]");
      e = std::move(c);
    } else if (is(".") || is("->")) {
      auto c = std::make_unique<Expr>();
      c->kind = ExprKind::Member;
      c->loc = loc();
      c->op = take().text;
      if (is("template")) take();
      if (!is_ident() && !is("~")) fail("expected a member name after '" + c->op + "'");
      std::size_t b = pos_;
      if (is("~")) take();
      take();
      if (is("<")) {
        std::size_t after = 0;
        if (scan_template_args(pos_, &after) && after < end_ && toks_[after].text == "(") pos_ = after;
      }
      c->text = join(b, pos_);
      c->kids.push_back(std::move(e));
      e = std::move(c);
    } else if (is("++") || is("--")) {
      auto c = std::make_unique<Expr>();
      c->kind = ExprKind::Postfix;
      c->loc = e->loc;
      c->op = take().text;
      c->kids.push_back(std::move(e));
      e = std::move(c);
    } else {
      return e;
    }
  }
}

ExprPtr Parser::parse_name() {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Name;
  e->loc = loc();
  std::size_t b = pos_;
  std::string base;
  if (is("::")) {
    take();
    base = "::";
    e->qualified = true;
  }
  while (true) {
    if (!is_ident() && !(peek().kind == TokKind::Ident && is_builtin_type_word(peek().text)))
      fail("expected a name");
    base += take().text;
    if (is("<")) {
      std::size_t after = 0;
      if (scan_template_args(pos_, &after) && after < end_ &&
          (toks_[after].text == "(" || toks_[after].text == "{" || toks_[after].text == "::")) {
        pos_ = after;
      }
    }
    if (is("::") && (is_ident(1) || (peek(1).kind == TokKind::Ident && is_builtin_type_word(peek(1).text)))) {
      take();
      base += "::";
      e->qualified = true;
      continue;
    }
    break;
  }
  e->text = join(b, pos_);
  e->base = base;
  return e;
}

ExprPtr Parser::parse_lambda() {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Lambda;
  e->loc = loc();
  e->captures = balanced("[", "]");
  if (is("(")) e->params = balanced("(", ")");
  std::size_t sb = pos_;
  while (is("mutable") || is("constexpr") || is("noexcept") || is("static")) take();
  e->specifiers = join(sb, pos_);
  if (is("->")) {
    take();
    std::size_t b = pos_;
    while (!at_end() && !is("{")) {
      if (is("(")) {
        balanced("(", ")");
        continue;
      }
      take();
    }
    e->ret = join(b, pos_);
  }
  auto body = parse_compound();
  e->body = std::move(body->body);
  return e;
}

ExprPtr Parser::parse_primary() {
  const Token& t = peek();
  auto e = std::make_unique<Expr>();
  e->loc = loc();
  switch (t.kind) {
    case TokKind::Number:
    case TokKind::Char:
      e->kind = ExprKind::Literal;
      e->text = take().text;
      return e;
    case TokKind::String:
      e->kind = ExprKind::Literal;
      e->text = take().text;
      while (peek().kind == TokKind::String) e->text += " " + take().text;
      return e;
    case TokKind::End:
      fail("expected an expression but found end of input");
    case TokKind::Directive:
      fail_at(t, "E-MACRO-IN-BLOCK", "preprocessor directives are not allowed here");
    default:
      break;
  }
  if (is("(")) {
    take();
    e->kind = ExprKind::Paren;
    e->kids.push_back(parse_expr());
    expect(")");
    return e;
  }
  if (is("[")) return parse_lambda();
  if (is("{")) return parse_braced_list(ExprKind::InitList, "");
  if (t.kind == TokKind::Ident) {
    const std::string& w = t.text;
    if (w == "true" || w == "false" || w == "nullptr" || w == "this") {
      e->kind = ExprKind::Literal;
      e->text = take().text;
      return e;
    }
    if (w == "static_cast" || w == "reinterpret_cast" || w == "const_cast" || w == "dynamic_cast") {
      e->kind = ExprKind::Cast;
      e->op = take().text;
      std::size_t after = 0;
      if (!scan_template_args(pos_, &after)) fail("expected a target type after '" + e->op + "'");
      e->text = join(pos_ + 1, after - 1);
      if (toks_[after - 1].text == ">>") e->text += " >";
      pos_ = after;
      expect("(");
      e->kids.push_back(parse_expr());
      expect(")");
      return e;
    }
    if (w == "sizeof" || w == "alignof" || w == "decltype" || w == "noexcept" || w == "typeid") {
      std::size_t b = pos_;
      take();
      if (is("...")) take();
      if (is("("))
        balanced("(", ")");
      else
        parse_unary();
      e->kind = ExprKind::Opaque;
      e->text = join(b, pos_);
      return e;
    }
    if (is_keyword(w) && !is_builtin_type_word(w)) fail_at(t, "E-PARSE", "unexpected keyword '" + w + "'");
  }
  if (t.kind == TokKind::Ident || is("::")) {
    auto n = parse_name();
    if (is("{")) return parse_braced_list(ExprKind::BraceInit, n->text);
    return n;
  }
  fail("unexpected '" + t.text + "'");
}

}  // namespace cocoon::transform
