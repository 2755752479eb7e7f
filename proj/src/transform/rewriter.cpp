#include "cocoon/transform/rewriter.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace cocoon::transform {

namespace {

const std::map<std::string, std::string>& secret_ops() {
  static const std::map<std::string, std::string> m = {{"wrap_secret", "secret_new"},
                                                       {"unwrap_secret", "secret_unwrap"},
                                                       {"unwrap_secret_ref", "secret_unwrap_ref"},
                                                       {"unwrap_secret_mut_ref", "secret_unwrap_mut_ref"}};
  return m;
}

const std::map<std::string, std::string>& safe_binary() {
  static const std::map<std::string, std::string> m = {
      {"+", "safe_add"},    {"-", "safe_sub"},   {"*", "safe_mul"},    {"/", "safe_div"}, {"%", "safe_rem"},
      {"&", "safe_bitand"}, {"|", "safe_bitor"}, {"^", "safe_bitxor"}, {"<<", "safe_shl"}, {">>", "safe_shr"},
      {"==", "safe_eq"},    {"!=", "safe_ne"},   {"<", "safe_lt"},     {"<=", "safe_le"}, {">", "safe_gt"},
      {">=", "safe_ge"}};
  return m;
}

const std::map<std::string, std::string>& safe_unary() {
  static const std::map<std::string, std::string> m = {
      {"-", "safe_neg"}, {"+", "safe_pos"}, {"!", "safe_not"}, {"~", "safe_bitnot"}};
  return m;
}

bool looks_like_macro(const std::string& name) {
  static const std::set<std::string> known = {"assert", "offsetof", "va_start", "va_arg", "va_end", "va_copy",
                                              "setjmp", "errno"};
  if (known.count(name)) return true;
  if (name.size() < 2) return false;
  bool letter = false;
  for (char c : name) {
    if (std::islower(static_cast<unsigned char>(c))) return false;
    if (std::isupper(static_cast<unsigned char>(c))) letter = true;
  }
  return letter;
}

[[noreturn]] void reject(const std::string& code, Loc loc, const std::string& msg) { throw Rejection(code, loc, msg); }

// Root variable of a write target: x, x.f, x[i], (x).
const Expr* place_root(const Expr& e) {
  const Expr* p = &e;
  while (true) {
    if (p->kind == ExprKind::Paren || p->kind == ExprKind::Index || (p->kind == ExprKind::Member && p->op == "."))
      p = p->kids[0].get();
    else
      return p;
  }
}

class Checker {
 public:
  explicit Checker(const Context& c) : ctx_(c) {}

  void stmts(const std::vector<StmtPtr>& b) {
    for (const auto& s : b) stmt(*s);
  }

  void stmt(const Stmt& s) {
    for (const auto& d : s.decls)
      for (const auto& e : d.init) expr(*e);
    for (const Expr* e : {s.e1.get(), s.e2.get()})
      if (e) expr(*e);
    for (const Stmt* c : {s.init.get(), s.s1.get(), s.s2.get()})
      if (c) stmt(*c);
    stmts(s.body);
  }

  void name(const Expr& e) {
    if (!e.qualified && ctx_.macros.count(e.base))
      reject("E-MACRO-IN-BLOCK", e.loc, "'" + e.base + "' is a macro; macros cannot be used in secret contexts");
  }

  void write_target(const Expr& target, const char* what) {
    const Expr* root = place_root(target);
    if (root->kind == ExprKind::Name && root->qualified)
      reject("E-MUT-CAPTURE", target.loc,
             std::string(what) + " '" + root->text +
                 "' reaches a namespace-scope variable by qualified name; secret contexts may only write their own "
                 "locals and Secret values");
  }

  void expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Name:
        name(e);
        return;
      case ExprKind::Lambda:
        reject("E-CLOSURE-IN-BLOCK", e.loc, "closures cannot be defined or called in secret contexts");
      case ExprKind::Unary:
        if (e.op == "throw")
          reject("E-UNSUPPORTED", e.loc, "throw expressions are not supported in secret contexts");
        if (e.op == "&" || e.op == "++" || e.op == "--") write_target(*e.kids[0], e.op == "&" ? "address of" : "update of");
        break;
      case ExprKind::Postfix:
        write_target(*e.kids[0], "update of");
        break;
      case ExprKind::Assign:
        write_target(*e.kids[0], "assignment to");
        break;
      case ExprKind::Cast:
        if (e.op != "static_cast")
          reject("E-UNSUPPORTED", e.loc, "'" + e.op + "' is not supported in secret contexts; use static_cast");
        break;
      case ExprKind::Binary:
        if (e.op == "<=>") reject("E-UNSUPPORTED", e.loc, "'<=>' is not supported in secret contexts");
        break;
      case ExprKind::Call:
        call(e);
        break;
      default:
        break;
    }
    for (std::size_t i = 0; i < e.kids.size(); ++i) {
      if (e.kind == ExprKind::Call && i == 0 && e.kids[0]->kind == ExprKind::Name) continue;
      expr(*e.kids[i]);
    }
  }

  void call(const Expr& e) {
    const Expr& callee = *e.kids[0];
    if (callee.kind == ExprKind::Member)
      reject("E-METHOD-CALL", callee.loc,
             "method call '" + callee.op + callee.text +
                 "(...)' in a secret context; member functions may run hidden effects, call a fully qualified "
                 "allowlisted function (for example ::std::size(v)) or a side-effect-free function instead");
    if (callee.kind != ExprKind::Name)
      reject("E-UNSUPPORTED", callee.loc, "only named functions can be called in secret contexts");
    const std::string& n = callee.base;
    if (!callee.qualified && (ctx_.macros.count(n) || looks_like_macro(n)))
      reject("E-MACRO-IN-BLOCK", callee.loc, "'" + n + "' looks like a macro; macros cannot be used in secret contexts");
    if (!callee.qualified && secret_ops().count(n)) {
      if (ctx_.label.empty())
        reject("E-OUTSIDE-BLOCK", callee.loc, "'" + n + "' can only be used inside a secret block");
      if (e.kids.size() != 2) reject("E-PARSE", callee.loc, "'" + n + "' takes exactly one argument");
    }
  }

 private:
  const Context& ctx_;
};

class FreeWalker {
 public:
  FreeWalker(const std::vector<std::string>& bound, const std::set<std::string>& constants) : constants_(constants) {
    scopes_.emplace_back(bound.begin(), bound.end());
  }

  void stmts(const std::vector<StmtPtr>& b) {
    for (const auto& s : b) stmt(*s);
  }

  void scoped(const Stmt* s) {
    if (!s) return;
    scopes_.emplace_back();
    stmt(*s);
    scopes_.pop_back();
  }

  void stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Compound:
        scopes_.emplace_back();
        stmts(s.body);
        scopes_.pop_back();
        return;
      case StmtKind::Decl:
        for (const auto& d : s.decls) {
          for (const auto& e : d.init) expr(*e, false);
          for (const auto& n : d.names) scopes_.back().insert(n);
        }
        return;
      case StmtKind::For:
        scopes_.emplace_back();
        if (s.init) stmt(*s.init);
        if (s.e1) expr(*s.e1, false);
        if (s.e2) expr(*s.e2, false);
        scoped(s.s1.get());
        scopes_.pop_back();
        return;
      case StmtKind::RangeFor:
        scopes_.emplace_back();
        expr(*s.e1, true);
        for (const auto& n : s.names) scopes_.back().insert(n);
        scoped(s.s1.get());
        scopes_.pop_back();
        return;
      default:
        if (s.e1) expr(*s.e1, false);
        if (s.e2) expr(*s.e2, false);
        scoped(s.s1.get());
        scoped(s.s2.get());
        stmts(s.body);
        return;
    }
  }

  void expr(const Expr& e, bool write) {
    switch (e.kind) {
      case ExprKind::Name:
        if (!e.qualified && e.text == e.base) use(e.base, write);
        return;
      case ExprKind::Paren:
        expr(*e.kids[0], write);
        return;
      case ExprKind::Member:
        expr(*e.kids[0], write && e.op == ".");
        return;
      case ExprKind::Index:
        expr(*e.kids[0], write);
        expr(*e.kids[1], false);
        return;
      case ExprKind::Unary:
        for (const auto& k : e.kids) expr(*k, e.op == "&" || e.op == "++" || e.op == "--");
        return;
      case ExprKind::Postfix:
        expr(*e.kids[0], true);
        return;
      case ExprKind::Assign:
        expr(*e.kids[0], true);
        expr(*e.kids[1], false);
        return;
      case ExprKind::Call:
        for (std::size_t i = 0; i < e.kids.size(); ++i)
          if (i > 0 || e.kids[0]->kind != ExprKind::Name) expr(*e.kids[i], false);
        return;
      case ExprKind::Lambda:
        return;
      default:
        for (const auto& k : e.kids) expr(*k, false);
        return;
    }
  }

  FreeVariables result() const {
    FreeVariables fv;
    for (const auto& n : order_) (captured_.count(n) ? fv.captured : fv.read).push_back(n);
    return fv;
  }

 private:
  void use(const std::string& n, bool write) {
    if (constants_.count(n)) return;
    for (const auto& s : scopes_)
      if (s.count(n)) return;
    if (seen_.insert(n).second) order_.push_back(n);
    if (write) captured_.insert(n);
  }

  const std::set<std::string>& constants_;
  std::vector<std::set<std::string>> scopes_;
  std::vector<std::string> order_;
  std::set<std::string> seen_;
  std::set<std::string> captured_;
};

// Expressions whose result is already a built-in bool once operands are checked.
bool boolean_shaped(const Expr& e) {
  if (e.kind == ExprKind::Paren) return boolean_shaped(*e.kids[0]);
  if (e.kind == ExprKind::Literal) return e.text == "true" || e.text == "false";
  if (e.kind == ExprKind::Unary) return e.op == "!";
  if (e.kind == ExprKind::Binary)
    return e.op == "&&" || e.op == "||" || e.op == "==" || e.op == "!=" || e.op == "<" || e.op == ">" ||
           e.op == "<=" || e.op == ">=";
  return false;
}

}  // namespace

bool is_secret_operation(const std::string& name) { return secret_ops().count(name) != 0; }

void check_body(const std::vector<StmtPtr>& body, const Context& ctx) { Checker(ctx).stmts(body); }

FreeVariables free_variables(const std::vector<StmtPtr>& body, const std::vector<std::string>& bound,
                             const std::set<std::string>& constants) {
  FreeWalker w(bound, constants);
  w.stmts(body);
  return w.result();
}

std::string Rewriter::fresh() { return "cocoon_tmp_" + std::to_string(++counter_); }

std::string Rewriter::args(const std::vector<ExprPtr>& kids, std::size_t from, Variant v) {
  std::string out;
  for (std::size_t i = from; i < kids.size(); ++i) {
    if (i > from) out += ", ";
    out += expr(*kids[i], v);
  }
  return out;
}

std::string Rewriter::condition(const Expr& e, Variant v) {
  if (v == Variant::Executed || boolean_shaped(e)) return expr(e, v);
  return "::cocoon::safe_bool(" + expr(e, v) + ")";
}

std::string Rewriter::expr(const Expr& e, Variant v) {
  const bool chk = v == Variant::Checked;
  switch (e.kind) {
    case ExprKind::Literal:
    case ExprKind::Opaque:
      return e.text;
    case ExprKind::Name: {
      if (!chk || e.qualified || e.text != e.base || ctx_.constants.count(e.base)) return e.text;
      std::string t = fresh();
      return "[&]() -> decltype(auto) { auto&& " + t + " = &(" + e.text + "); return ::cocoon::check_ISEF_unsafe(" +
             t + "); }()";
    }
    case ExprKind::Paren:
      return "(" + expr(*e.kids[0], v) + ")";
    case ExprKind::Unary: {
      const Expr& k = *e.kids[0];
      if (e.op == "*") return "*(" + expr(k, v) + ")";
      if (e.op == "&") return chk ? "::cocoon::check_ISEF_ref(&(" + place(k, v) + "))" : "&(" + expr(k, v) + ")";
      if (e.op == "++" || e.op == "--") {
        if (chk) return std::string("::cocoon::") + (e.op == "++" ? "safe_pre_inc" : "safe_pre_dec") + "(&(" + place(k, v) + "))";
        return e.op + "(" + expr(k, v) + ")";
      }
      if (e.op == "throw") return "throw " + expr(k, v);
      if (chk) return "::cocoon::" + safe_unary().at(e.op) + "(" + expr(k, v) + ")";
      return e.op + "(" + expr(k, v) + ")";
    }
    case ExprKind::Postfix: {
      const Expr& k = *e.kids[0];
      if (chk) return std::string("::cocoon::") + (e.op == "++" ? "safe_post_inc" : "safe_post_dec") + "(&(" + place(k, v) + "))";
      return "(" + expr(k, v) + ")" + e.op;
    }
    case ExprKind::Binary: {
      const Expr& l = *e.kids[0];
      const Expr& r = *e.kids[1];
      if (e.op == "&&" || e.op == "||") return condition(l, v) + " " + e.op + " " + condition(r, v);
      if (chk) return "::cocoon::" + safe_binary().at(e.op) + "(" + expr(l, v) + ", " + expr(r, v) + ")";
      return expr(l, v) + " " + e.op + " " + expr(r, v);
    }
    case ExprKind::Assign: {
      const Expr& l = *e.kids[0];
      const Expr& r = *e.kids[1];
      if (!chk) return expr(l, v) + " " + e.op + " " + expr(r, v);
      if (e.op == "=") return "*::cocoon::check_not_mut_secret(&(" + place(l, v) + ")) = " + expr(r, v);
      std::string bin = e.op.substr(0, e.op.size() - 1);
      return "::cocoon::" + safe_binary().at(bin) + "_assign(&(" + place(l, v) + "), " + expr(r, v) + ")";
    }
    case ExprKind::Cond:
      return condition(*e.kids[0], v) + " ? " + expr(*e.kids[1], v) + " : " + expr(*e.kids[2], v);
    case ExprKind::Call:
      return call(e, v);
    case ExprKind::Member:
      return expr(*e.kids[0], v) + e.op + e.text;
    case ExprKind::Index:
      if (chk) return "::cocoon::safe_index(" + expr(*e.kids[0], v) + ", " + expr(*e.kids[1], v) + ")";
      return expr(*e.kids[0], v) + "[" + expr(*e.kids[1], v) + "]";
    case ExprKind::Cast:
      if (chk) return "::cocoon::safe_cast<" + e.text + ">(" + expr(*e.kids[0], v) + ")";
      return e.op + "<" + e.text + ">(" + expr(*e.kids[0], v) + ")";
    case ExprKind::BraceInit:
      if (chk) return "::cocoon::check_construct<" + e.text + ">(" + e.text + "{" + args(e.kids, 0, v) + "})";
      return e.text + "{" + args(e.kids, 0, v) + "}";
    case ExprKind::InitList:
      return "{" + args(e.kids, 0, v) + "}";
    case ExprKind::Lambda:
      reject("E-CLOSURE-IN-BLOCK", e.loc, "closures cannot be defined or called in secret contexts");
  }
  return e.text;
}

std::string Rewriter::place(const Expr& e, Variant v) {
  if (v == Variant::Executed) return expr(e, v);
  switch (e.kind) {
    case ExprKind::Name:
      return e.text;
    case ExprKind::Paren:
      return "(" + place(*e.kids[0], v) + ")";
    case ExprKind::Member:
      if (e.op == ".") return place(*e.kids[0], v) + "." + e.text;
      return expr(*e.kids[0], v) + "->" + e.text;
    case ExprKind::Index:
      return "::cocoon::safe_index(" + place(*e.kids[0], v) + ", " + expr(*e.kids[1], v) + ")";
    case ExprKind::Unary:
      if (e.op == "*") return "*(" + expr(*e.kids[0], v) + ")";
      return expr(e, v);
    default:
      return expr(e, v);
  }
}

std::string Rewriter::call(const Expr& e, Variant v) {
  const bool chk = v == Variant::Checked;
  const Expr& callee = *e.kids[0];
  if (callee.kind != ExprKind::Name) reject("E-UNSUPPORTED", callee.loc, "only named functions can be called here");
  const std::size_t argc = e.kids.size() - 1;

  if (!callee.qualified && is_secret_operation(callee.base)) {
    const std::string op = "::cocoon::" + secret_ops().at(callee.base) + "<" + ctx_.label + ">";
    if (chk) return op + "(::cocoon::unsafe, " + expr(*e.kids[1], v) + ")";
    std::string t = fresh();
    return "[&]() -> decltype(auto) { auto&& " + t + " = " + expr(*e.kids[1], v) + "; return " + op +
           "(::cocoon::unsafe, " + t + "); }()";
  }

  if (ctx_.allowlist && ctx_.allowlist->is_allowlisted(callee.base, static_cast<int>(argc))) {
    std::string c = callee.text + "(" + args(e.kids, 1, v) + ")";
    return chk ? "::cocoon::check_ISEF(" + c + ")" : c;
  }

  // Anything else must be a side-effect-free function: its dispatch
  // definition takes the escape token and returns Vetted.
  std::string binds;
  std::string fwd = "cocoon_tok";
  for (std::size_t i = 1; i < e.kids.size(); ++i) {
    std::string t = fresh();
    binds += "auto&& " + t + " = " + expr(*e.kids[i], v) + "; ";
    fwd += ", " + t;
  }
  std::string inner = callee.text + "(" + fwd + ")";
  return "[&]() -> decltype(auto) { " + binds + "return ::cocoon::call_vetted(::cocoon::unsafe, [&](auto cocoon_tok) -> decltype(" +
         inner + ") { return " + inner + "; }); }()";
}

// Locals a secret context declares must be built and destroyed without
// running application code.
std::string Rewriter::local_checks(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names)
    if (!n.empty()) out += " ::cocoon::check_local<decltype(" + n + ")>();";
  return out;
}

std::string Rewriter::decl(const Stmt& s, Variant v) {
  std::string out = s.type;
  for (std::size_t i = 0; i < s.decls.size(); ++i) {
    const Declarator& d = s.decls[i];
    out += i == 0 ? " " : ", ";
    out += d.prefix + (d.prefix.empty() ? "" : " ") + d.name + d.suffix;
    switch (d.init_kind) {
      case '=':
        out += " = " + expr(*d.init[0], v);
        break;
      case '{':
        out += "{" + args(d.init, 0, v) + "}";
        break;
      case '(':
        out += "(" + args(d.init, 0, v) + ")";
        break;
      default:
        break;
    }
  }
  return out + ";";
}

std::string Rewriter::stmt(const Stmt& s, Variant v) {
  const bool chk = v == Variant::Checked;
  switch (s.kind) {
    case StmtKind::Compound:
      return "{ " + stmts(s.body, v) + "}";
    case StmtKind::Decl: {
      std::string out = decl(s, v);
      if (chk)
        for (const auto& d : s.decls) out += local_checks(d.names.empty() ? std::vector<std::string>{d.name} : d.names);
      return out;
    }
    case StmtKind::ExprStmt:
      return expr(*s.e1, v) + ";";
    case StmtKind::If: {
      std::string out = "if (" + condition(*s.e1, v) + ") " + stmt(*s.s1, v);
      if (s.s2) out += " else " + stmt(*s.s2, v);
      return out;
    }
    case StmtKind::While:
      return "while (" + condition(*s.e1, v) + ") " + stmt(*s.s1, v);
    case StmtKind::DoWhile:
      return "do " + stmt(*s.s1, v) + " while (" + condition(*s.e1, v) + ");";
    case StmtKind::For: {
      std::string checks;
      std::string init = ";";
      if (s.init && s.init->kind == StmtKind::Decl) {
        init = decl(*s.init, v);
        if (chk)
          for (const auto& d : s.init->decls)
            checks += local_checks(d.names.empty() ? std::vector<std::string>{d.name} : d.names);
      } else if (s.init) {
        init = stmt(*s.init, v);
      }
      std::string out = "for (" + init + " " + (s.e1 ? condition(*s.e1, v) : std::string()) + "; ";
      if (s.e2) out += expr(*s.e2, v);
      if (checks.empty()) return out + ") " + stmt(*s.s1, v);
      return out + ") { " + checks + stmt(*s.s1, v) + " }";
    }
    case StmtKind::RangeFor: {
      const Expr& r = *s.e1;
      std::string range;
      if (chk && r.kind == ExprKind::Name && !r.qualified && r.text == r.base && !ctx_.constants.count(r.base))
        range = "*::cocoon::check_ISEF_ref(&(" + r.text + "))";
      else
        range = expr(r, v);
      if (!chk) return "for (" + s.type + " : " + range + ") " + stmt(*s.s1, v);
      return "for (" + s.type + " : " + range + ") { " + local_checks(s.names) + stmt(*s.s1, v) + " }";
    }
    case StmtKind::Switch:
      return "switch (" + expr(*s.e1, v) + ") " + stmt(*s.s1, v);
    case StmtKind::Case:
      return "case " + s.text + ":";
    case StmtKind::Default:
      return "default:";
    case StmtKind::Return:
      return s.e1 ? "return " + expr(*s.e1, v) + ";" : "return;";
    case StmtKind::Break:
      return "break;";
    case StmtKind::Continue:
      return "continue;";
    case StmtKind::Empty:
      return ";";
    case StmtKind::Raw:
      return s.text;
  }
  return ";";
}

std::string Rewriter::stmts(const std::vector<StmtPtr>& body, Variant v) {
  std::string out;
  for (const auto& s : body) out += stmt(*s, v) + " ";
  return out;
}

std::string expand_block(const std::string& label, const std::vector<StmtPtr>& body, const Context& ctx) {
  check_body(body, ctx);
  FreeVariables fv = free_variables(body, {}, ctx.constants);
  Rewriter rw(ctx);
  std::string executed = rw.stmts(body, Variant::Executed);
  std::string checked = rw.stmts(body, Variant::Checked);

  std::string captures = "&";
  for (const auto& n : fv.captured) captures += ", &" + n + " = ::cocoon::vsef_capture(" + n + ")";
  std::string vsef;
  if (!fv.read.empty()) {
    vsef = "::cocoon::check_VSEF<";
    for (std::size_t i = 0; i < fv.read.size(); ++i) vsef += (i ? ", decltype(" : "decltype(") + fv.read[i] + ")";
    vsef += ">(); ";
  }
  return "(true ? ::cocoon::call_closure<" + label + ">([&]() -> auto { return ::cocoon::catch_unwind([&]() -> auto { " +
         executed + "}).unwrap_or_default(); }) : ::cocoon::call_closure<" + label + ">([" + captures + "]() -> auto { " +
         vsef + checked + "}))";
}

}  // namespace cocoon::transform
