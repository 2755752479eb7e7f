#include "cocoon/transform/golden.hpp"

#include <regex>

#include "cocoon/transform/lexer.hpp"
#include "cocoon/transform/parser.hpp"

namespace cocoon::transform {

namespace {

std::string norm(const std::string& s) {
  static const std::regex tmp(R"(\bcocoon_tmp(_\d+)?\b)");
  static const std::regex ws(R"(\s+)");
  return std::regex_replace(std::regex_replace(s, tmp, "tmp"), ws, " ");
}

std::string print(const Expr& e);
std::string print(const Stmt& s);

std::string print_all(const std::vector<ExprPtr>& kids, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < kids.size(); ++i) out += " " + print(*kids[i]);
  return out;
}

std::string print_body(const std::vector<StmtPtr>& body) {
  std::string out = "{";
  for (const auto& s : body) out += " " + print(*s);
  return out + " }";
}

std::string print(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Literal:
    case ExprKind::Name:
    case ExprKind::Opaque:
      return norm(e.text);
    case ExprKind::Paren:
      return print(*e.kids[0]);
    case ExprKind::Unary:
      return "(" + e.op + " " + print(*e.kids[0]) + ")";
    case ExprKind::Postfix:
      return "(post" + e.op + " " + print(*e.kids[0]) + ")";
    case ExprKind::Binary:
    case ExprKind::Assign:
      return "(" + e.op + " " + print(*e.kids[0]) + " " + print(*e.kids[1]) + ")";
    case ExprKind::Cond:
      return "(?: " + print(*e.kids[0]) + " " + print(*e.kids[1]) + " " + print(*e.kids[2]) + ")";
    case ExprKind::Call:
      return "(call " + print(*e.kids[0]) + print_all(e.kids, 1) + ")";
    case ExprKind::Member:
      return "(" + e.op + " " + print(*e.kids[0]) + " " + norm(e.text) + ")";
    case ExprKind::Index:
      return "([] " + print(*e.kids[0]) + " " + print(*e.kids[1]) + ")";
    case ExprKind::Cast:
      return "(" + e.op + "<" + norm(e.text) + "> " + print(*e.kids[0]) + ")";
    case ExprKind::BraceInit:
      return "(" + norm(e.text) + "{}" + print_all(e.kids) + ")";
    case ExprKind::InitList:
      return "({}" + print_all(e.kids) + ")";
    case ExprKind::Lambda:
      return "(lambda [" + norm(e.captures) + "] (" + norm(e.params) + ") " + norm(e.specifiers) + " -> " +
             norm(e.ret) + " " + print_body(e.body) + ")";
  }
  return "?";
}

std::string print(const Stmt& s) {
  auto opt = [](const ExprPtr& e) { return e ? print(*e) : std::string("_"); };
  auto opts = [](const StmtPtr& st) { return st ? print(*st) : std::string("_"); };
  switch (s.kind) {
    case StmtKind::Compound:
      return print_body(s.body);
    case StmtKind::Decl: {
      std::string out = "(decl " + norm(s.type);
      for (const auto& d : s.decls) {
        out += " (" + norm(d.prefix + d.name + d.suffix);
        if (d.init_kind) out += std::string(" ") + d.init_kind + print_all(d.init);
        out += ")";
      }
      return out + ")";
    }
    case StmtKind::ExprStmt:
      return "(expr " + print(*s.e1) + ")";
    case StmtKind::If:
      return "(if " + print(*s.e1) + " " + opts(s.s1) + " " + opts(s.s2) + ")";
    case StmtKind::While:
      return "(while " + print(*s.e1) + " " + opts(s.s1) + ")";
    case StmtKind::DoWhile:
      return "(do " + opts(s.s1) + " " + print(*s.e1) + ")";
    case StmtKind::For:
      return "(for " + opts(s.init) + " " + opt(s.e1) + " " + opt(s.e2) + " " + opts(s.s1) + ")";
    case StmtKind::RangeFor:
      return "(for-range " + norm(s.type) + " " + print(*s.e1) + " " + opts(s.s1) + ")";
    case StmtKind::Switch:
      return "(switch " + print(*s.e1) + " " + opts(s.s1) + ")";
    case StmtKind::Case:
      return "(case " + norm(s.text) + ")";
    case StmtKind::Default:
      return "(default)";
    case StmtKind::Return:
      return "(return " + opt(s.e1) + ")";
    case StmtKind::Break:
      return "(break)";
    case StmtKind::Continue:
      return "(continue)";
    case StmtKind::Empty:
      return "(empty)";
    case StmtKind::Raw:
      return "(raw " + norm(s.text) + ")";
  }
  return "?";
}

}  // namespace

std::string canonical_expression(std::string_view code) {
  LexResult lx = lex(code);
  if (!lx.error.empty()) throw Rejection("E-PARSE", Loc{lx.error_line, lx.error_col}, lx.error);
  std::size_t end = lx.tokens.size() - 1;
  if (end > 0 && lx.tokens[end - 1].text == ";") --end;
  Parser p(lx.tokens, 0, end);
  return print(*p.parse_expression_only());
}

}  // namespace cocoon::transform
