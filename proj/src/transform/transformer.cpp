#include "cocoon/transform/transformer.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "cocoon/transform/lexer.hpp"
#include "cocoon/transform/parser.hpp"
#include "cocoon/transform/rewriter.hpp"

namespace cocoon::transform {

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  return file + ":" + std::to_string(d.loc.line) + ":" + std::to_string(d.loc.col) + ": error: " + d.code + ": " +
         d.message;
}

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Edit {
  std::size_t begin;
  std::size_t end;
  std::string text;
};

struct Param {
  std::string decl;     // without default argument
  std::string full;     // with default argument
  std::string name;
};

struct TemplateHeader {
  std::string inner;               // text between the angle brackets
  std::vector<std::string> names;  // parameter names
  std::vector<std::string> forward;  // names, packs expanded with "..."
};

Loc loc_of(const Token& t) { return Loc{t.line, t.col}; }

class FileTransformer {
 public:
  FileTransformer(std::string_view src, const TransformOptions& opts)
      : src_(src), opts_(opts), lx_(lex(src)), t_(lx_.tokens) {
    ctx_.allowlist = opts.allowlist ? opts.allowlist : &Allowlist::builtin();
    ctx_.macros.insert(lx_.defined_macros.begin(), lx_.defined_macros.end());
  }

  TransformResult run() {
    TransformResult out;
    if (!lx_.error.empty()) {
      out.diagnostics.push_back({"E-PARSE", Loc{lx_.error_line, lx_.error_col}, lx_.error});
      return out;
    }
    const std::size_t n = t_.size() - 1;  // last token is End
    std::size_t i = 0;
    while (i < n) i = step(i);

    std::sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return a.loc.line != b.loc.line ? a.loc.line < b.loc.line : a.loc.col < b.loc.col;
    });
    out.diagnostics = std::move(diags_);
    if (!out.diagnostics.empty()) return out;

    std::sort(edits_.begin(), edits_.end(), [](const Edit& a, const Edit& b) { return a.begin < b.begin; });
    std::string text;
    if (opts_.line_directive) {
      std::string f;
      for (char c : opts_.filename) {
        if (c == '\\' || c == '"') f += '\\';
        f += c;
      }
      text += "#line 1 \"" + f + "\"\n";
    }
    std::size_t at = 0;
    for (const Edit& e : edits_) {
      text.append(src_.substr(at, e.begin - at));
      text += e.text;
      // Keep later lines where they were.
      text.append(static_cast<std::size_t>(std::count(src_.begin() + e.begin, src_.begin() + e.end, '\n')), '\n');
      at = e.end;
    }
    text.append(src_.substr(at));
    out.output = std::move(text);
    return out;
  }

 private:
  bool is(std::size_t i, const char* s) const {
    return i < t_.size() && t_[i].kind != TokKind::String && t_[i].kind != TokKind::Char && t_[i].text == s;
  }

  // [[cocoon::NAME]] at i
  std::optional<std::string> cocoon_attr(std::size_t i) const {
    if (is(i, "[") && is(i + 1, "[") && is(i + 2, "cocoon") && is(i + 3, "::") && i + 4 < t_.size() &&
        t_[i + 4].kind == TokKind::Ident && is(i + 5, "]") && is(i + 6, "]"))
      return t_[i + 4].text;
    return std::nullopt;
  }

  std::size_t match(std::size_t i, const char* open, const char* close) const {
    int depth = 0;
    for (std::size_t k = i; k + 1 < t_.size(); ++k) {
      if (is(k, open)) ++depth;
      if (is(k, close) && --depth == 0) return k;
    }
    return npos;
  }

  // Permissive angle matcher for template headers: returns one past the '>'.
  std::size_t match_angle(std::size_t i) const {
    int angle = 0;
    int paren = 0;
    for (std::size_t k = i; k + 1 < t_.size(); ++k) {
      const std::string& s = t_[k].text;
      if (t_[k].kind == TokKind::String || t_[k].kind == TokKind::Char) continue;
      if (s == "(" || s == "[" || s == "{") ++paren;
      if (s == ")" || s == "]" || s == "}") --paren;
      if (s == ";") return npos;
      if (paren != 0) continue;
      if (s == "<") ++angle;
      if (s == ">" || s == ">>") {
        angle -= static_cast<int>(s.size());
        if (angle <= 0) return angle == 0 ? k + 1 : npos;
      }
    }
    return npos;
  }

  void diag(const std::string& code, Loc l, const std::string& msg) { diags_.push_back({code, l, msg}); }

  // Scans [b, e) for constructs a body may not contain before parsing it.
  bool prescan_body(std::size_t b, std::size_t e, const char* where) {
    for (std::size_t k = b; k < e; ++k) {
      if (t_[k].kind == TokKind::Directive) {
        diag("E-MACRO-IN-BLOCK", loc_of(t_[k]), std::string("preprocessor directives are not allowed in ") + where);
        return false;
      }
      if (t_[k].kind == TokKind::Ident && t_[k].text == "secret_block") {
        diag("E-NESTED-BLOCK", loc_of(t_[k]), std::string("secret blocks cannot be nested in ") + where);
        return false;
      }
      if (cocoon_attr(k)) {
        diag("E-PARSE", loc_of(t_[k]), std::string("cocoon annotations are not allowed in ") + where);
        return false;
      }
    }
    return true;
  }

  std::size_t step(std::size_t i) {
    const Token& tok = t_[i];
    if (tok.kind == TokKind::Directive) return i + 1;
    if (is(i, "template") && is(i + 1, "<")) {
      std::size_t after = match_angle(i + 1);
      if (after != npos) {
        auto a = cocoon_attr(after);
        if (a && *a == "side_effect_free") return sef(after, i);
      }
      return i + 1;
    }
    if (auto a = cocoon_attr(i)) {
      if (*a == "side_effect_free") return sef(i, npos);
      if (*a == "derive_isef") {
        if (i > 0 && (is(i - 1, "struct") || is(i - 1, "class"))) return derive(i);
        diag("E-PARSE", loc_of(tok), "[[cocoon::derive_isef]] must follow 'struct' or 'class'");
        return i + 7;
      }
      diag("E-PARSE", loc_of(tok), "unknown annotation [[cocoon::" + *a + "]]");
      return i + 7;
    }
    if (tok.kind == TokKind::Ident && tok.text == "secret_block" && is(i + 1, "(")) return block(i);
    if (tok.kind == TokKind::Ident && is_secret_operation(tok.text) && is(i + 1, "(") &&
        !(i > 0 && (is(i - 1, ".") || is(i - 1, "->") || is(i - 1, "::"))))
      diag("E-OUTSIDE-BLOCK", loc_of(tok), "'" + tok.text + "' can only be used inside a secret block");
    return i + 1;
  }

  std::size_t block(std::size_t i) {
    std::size_t rp = match(i + 1, "(", ")");
    if (rp == npos) {
      diag("E-PARSE", loc_of(t_[i]), "unbalanced '(' after secret_block");
      return i + 2;
    }
    std::string label = join_tokens(t_, i + 2, rp);
    if (label.empty()) {
      diag("E-PARSE", loc_of(t_[i]), "secret_block needs a label, e.g. secret_block(lat::Label_AB) { ... }");
      return rp + 1;
    }
    if (!is(rp + 1, "{")) {
      diag("E-PARSE", loc_of(t_[rp]), "expected '{' after secret_block(" + label + ")");
      return rp + 1;
    }
    std::size_t rb = match(rp + 1, "{", "}");
    if (rb == npos) {
      diag("E-PARSE", loc_of(t_[rp + 1]), "unterminated secret block body");
      return t_.size() - 1;
    }
    if (!prescan_body(rp + 2, rb, "secret blocks")) return rb + 1;
    try {
      Parser p(t_, rp + 2, rb);
      auto body = p.parse_statements();
      Context ctx = ctx_;
      ctx.label = label;
      edits_.push_back({t_[i].begin, t_[rb].end, expand_block(label, body, ctx)});
    } catch (const Rejection& r) {
      diag(r.code, r.loc, r.what());
    }
    return rb + 1;
  }

  static std::vector<std::vector<std::size_t>> split_top_commas(const std::vector<Token>& t, std::size_t b,
                                                                std::size_t e) {
    std::vector<std::vector<std::size_t>> parts(1);
    int depth = 0;
    for (std::size_t k = b; k < e; ++k) {
      const std::string& s = t[k].text;
      if (t[k].kind == TokKind::Punct) {
        if (s == "(" || s == "[" || s == "{" || s == "<") ++depth;
        if (s == ")" || s == "]" || s == "}" || s == ">") --depth;
        if (s == ">>") depth -= 2;
        if (s == "," && depth == 0) {
          parts.emplace_back();
          continue;
        }
      }
      parts.back().push_back(k);
    }
    if (parts.size() == 1 && parts[0].empty()) parts.clear();
    return parts;
  }

  TemplateHeader template_header(std::size_t lt, std::size_t after) const {
    TemplateHeader h;
    h.inner = join_tokens(t_, lt + 1, after - 1);
    for (const auto& part : split_top_commas(t_, lt + 1, after - 1)) {
      std::string name;
      bool pack = false;
      for (std::size_t k : part) {
        if (t_[k].text == "=") break;
        if (t_[k].text == "...") pack = true;
        if (t_[k].kind == TokKind::Ident && !is_keyword(t_[k].text)) name = t_[k].text;
      }
      if (name.empty()) continue;
      h.names.push_back(name);
      h.forward.push_back(pack ? name + "..." : name);
    }
    return h;
  }

  std::size_t sef(std::size_t attr, std::size_t header_begin) {
    const Loc at = loc_of(t_[attr]);
    std::size_t k = attr + 7;
    std::optional<TemplateHeader> header;
    std::size_t edit_begin = header_begin != npos ? header_begin : attr;
    if (header_begin != npos) {
      header = template_header(header_begin + 1, attr);
    } else if (is(k, "template") && is(k + 1, "<")) {
      std::size_t after = match_angle(k + 1);
      if (after == npos) {
        diag("E-PARSE", loc_of(t_[k]), "malformed template header");
        return k + 1;
      }
      header = template_header(k + 1, after);
      k = after;
    }
    // Function name: the identifier before the first top-level '('.
    std::size_t lp = k;
    while (lp + 1 < t_.size() && !is(lp, "(")) {
      if (is(lp, "{") || is(lp, ";") || is(lp, "}")) {
        diag("E-PARSE", at, "[[cocoon::side_effect_free]] must precede a function definition");
        return lp + 1;
      }
      if (is(lp, "<")) {
        std::size_t after = match_angle(lp);
        if (after != npos) {
          lp = after;
          continue;
        }
      }
      ++lp;
    }
    if (lp == k || t_[lp - 1].kind != TokKind::Ident || is_keyword(t_[lp - 1].text)) {
      diag("E-UNSUPPORTED", at, "side-effect-free annotation needs a plainly named function");
      return lp + 1;
    }
    const std::string name = t_[lp - 1].text;
    std::vector<std::string> specs;
    std::size_t rb_ = k;
    while (rb_ < lp - 1 && (is(rb_, "static") || is(rb_, "inline") || is(rb_, "constexpr"))) specs.push_back(t_[rb_++].text);
    const std::string ret = join_tokens(t_, rb_, lp - 1);
    if (ret.empty() || ret.find("auto") != std::string::npos) {
      diag("E-UNSUPPORTED", loc_of(t_[lp - 1]), "side-effect-free function '" + name + "' needs an explicit return type");
      return lp + 1;
    }
    if (ctx_.allowlist->is_allowlisted("::" + name)) {
      diag("E-UNSUPPORTED", loc_of(t_[lp - 1]), "'" + name + "' collides with an allowlisted library function");
      return lp + 1;
    }
    std::size_t rp = match(lp, "(", ")");
    if (rp == npos) {
      diag("E-PARSE", loc_of(t_[lp]), "unbalanced parameter list");
      return lp + 1;
    }
    std::vector<Param> params;
    for (const auto& part : split_top_commas(t_, lp + 1, rp)) {
      Param p;
      std::size_t eq = part.size();
      for (std::size_t q = 0; q < part.size(); ++q)
        if (t_[part[q]].text == "=") {
          eq = q;
          break;
        }
      bool is_const = false;
      for (std::size_t q = 0; q < eq; ++q) {
        const Token& pt = t_[part[q]];
        if (pt.text == "const") is_const = true;
        if (pt.text == "...") {
          diag("E-UNSUPPORTED", loc_of(pt), "variadic side-effect-free functions are not supported");
          return rp + 1;
        }
        if ((pt.text == "&" && !is_const) || pt.text == "&&") {
          diag("E-UNSUPPORTED", loc_of(pt),
               "parameter of side-effect-free function '" + name +
                   "' is a writable reference; pass a pointer (or a const reference) instead");
          return rp + 1;
        }
        if (pt.kind == TokKind::Ident && !is_keyword(pt.text)) p.name = pt.text;
      }
      if (p.name.empty() || eq == 0 || t_[part[eq - 1]].text != p.name) {
        diag("E-PARSE", loc_of(t_[part.empty() ? lp : part[0]]),
             "parameters of side-effect-free functions must be named");
        return rp + 1;
      }
      p.decl = join_tokens(t_, part[0], part[eq - 1] + 1);
      p.full = join_tokens(t_, part[0], part.back() + 1);
      params.push_back(std::move(p));
    }
    std::size_t lb = rp + 1;
    while (is(lb, "noexcept")) ++lb;
    if (!is(lb, "{")) {
      diag("E-UNSUPPORTED", loc_of(t_[lb]),
           "side-effect-free function '" + name + "': only plain definitions 'R f(params) { ... }' are supported");
      return lb + 1;
    }
    std::size_t rb = match(lb, "{", "}");
    if (rb == npos) {
      diag("E-PARSE", loc_of(t_[lb]), "unterminated function body");
      return t_.size() - 1;
    }
    if (!prescan_body(lb + 1, rb, "side-effect-free functions")) return rb + 1;

    try {
      Parser parser(t_, lb + 1, rb);
      auto body = parser.parse_statements();
      Context ctx = ctx_;
      ctx.label.clear();
      if (header) ctx.constants.insert(header->names.begin(), header->names.end());
      check_body(body, ctx);
      std::vector<std::string> names;
      for (const auto& p : params) names.push_back(p.name);
      FreeVariables fv = free_variables(body, names, ctx.constants);
      Rewriter rw(ctx);
      std::string executed = rw.stmts(body, Variant::Executed);
      std::string checked = rw.stmts(body, Variant::Checked);
      edits_.push_back({t_[edit_begin].begin, t_[rb].end,
                        emit_sef(name, specs, ret, header, params, fv, executed, checked)});
    } catch (const Rejection& r) {
      diag(r.code, r.loc, r.what());
    }
    return rb + 1;
  }

  static std::string emit_sef(const std::string& name, const std::vector<std::string>& specs, const std::string& ret,
                              const std::optional<TemplateHeader>& header, const std::vector<Param>& params,
                              const FreeVariables& fv, const std::string& executed, const std::string& checked) {
    const std::string h = header ? "template <" + header->inner + "> " : "";
    std::string targs;
    if (header) {
      targs = "<";
      for (std::size_t i = 0; i < header->forward.size(); ++i) targs += (i ? ", " : "") + header->forward[i];
      targs += ">";
    }
    std::string spec;
    for (const auto& s : specs) spec += s + " ";
    std::string dispatch_spec;
    for (const auto& s : specs)
      if (s == "static") dispatch_spec += "static ";
    std::string decl_params, full_params, fwd;
    for (std::size_t i = 0; i < params.size(); ++i) {
      decl_params += (i ? ", " : "") + params[i].decl;
      full_params += ", " + params[i].full;
      fwd += (i ? ", " : "") + params[i].name;
    }
    const std::string unchecked = "__" + name + "_secret_trampoline_unchecked";
    const std::string checked_fn = "__" + name + "_secret_trampoline_checked";
    const bool is_void = ret == "void";
    const std::string vetted = "::cocoon::Vetted<" + ret + ">";

    std::string vsef;
    if (!fv.read.empty()) {
      vsef = "::cocoon::check_VSEF<";
      for (std::size_t i = 0; i < fv.read.size(); ++i) vsef += (i ? ", decltype(" : "decltype(") + fv.read[i] + ")";
      vsef += ">(); ";
    }
    std::string checked_body = vsef + checked;
    if (!fv.captured.empty()) {
      std::string caps = "&";
      for (const auto& c : fv.captured) caps += ", &" + c + " = ::cocoon::vsef_capture(" + c + ")";
      checked_body = "return [" + caps + "]() -> " + ret + " { " + vsef + checked + "}(); ";
    }

    std::string out;
    // Dispatch declaration first so bodies can call each other and recurse.
    out += h + dispatch_spec + "[[gnu::always_inline]] inline " + vetted + " " + name + "(::cocoon::unsafe_t" +
           full_params + "); ";
    out += "template <" + (header ? header->inner + ", " : std::string()) +
           "class... CocoonArgs> requires ::cocoon::detail::not_escape_call<CocoonArgs...> " + dispatch_spec + "void " +
           name + "(CocoonArgs&&...) { static_assert(::cocoon::detail::always_false<CocoonArgs...>, \"E-DISPATCH-CALL: '" +
           name +
           "' is side-effect-free; call it from a secret block or another side-effect-free function\"); } ";
    out += h + spec + ret + " " + unchecked + "(" + decl_params + ") { " + executed + "} ";
    out += h + "[[maybe_unused]] " + spec + ret + " " + checked_fn + "(" + decl_params + ") { " + checked_body + "} ";
    std::string dparams;
    for (const auto& p : params) dparams += ", " + p.decl;
    out += h + dispatch_spec + "inline " + vetted + " " + name + "(::cocoon::unsafe_t" + dparams + ") { ";
    if (header) out += "(void)&" + checked_fn + targs + "; ";
    if (is_void)
      out += unchecked + targs + "(" + fwd + "); return " + vetted + "::wrap(::cocoon::unsafe); }";
    else
      out += "return " + vetted + "::wrap(::cocoon::unsafe, " + unchecked + targs + "(" + fwd + ")); }";
    return out;
  }

  std::size_t derive(std::size_t attr) {
    std::size_t ni = attr + 7;
    if (ni >= t_.size() || t_[ni].kind != TokKind::Ident) {
      diag("E-PARSE", loc_of(t_[attr]), "expected a type name after [[cocoon::derive_isef]]");
      return attr + 7;
    }
    const std::string name = t_[ni].text;
    std::size_t j = ni + 1;
    if (is(j, "final")) ++j;
    if (is(j, ":")) {
      diag("E-UNSUPPORTED", loc_of(t_[j]), "derive_isef types cannot have base classes");
      return j + 1;
    }
    if (!is(j, "{")) {
      diag("E-PARSE", loc_of(t_[j]), "expected '{' in definition of '" + name + "'");
      return j + 1;
    }
    std::size_t rb = match(j, "{", "}");
    if (rb == npos) {
      diag("E-PARSE", loc_of(t_[j]), "unterminated definition of '" + name + "'");
      return t_.size() - 1;
    }
    std::vector<std::string> fields;
    std::size_t before = diags_.size();
    std::size_t k = j + 1;
    std::size_t run = k;
    bool paren = false;
    bool init = false;
    while (k < rb) {
      if ((is(k, "public") || is(k, "private") || is(k, "protected")) && is(k + 1, ":")) {
        k += 2;
        run = k;
        continue;
      }
      if (is(k, "(") || is(k, "[")) {
        if (is(k, "(") && !init) paren = true;
        std::size_t m = match(k, t_[k].text.c_str(), is(k, "(") ? ")" : "]");
        k = m == npos ? rb : m + 1;
        continue;
      }
      if (is(k, "=")) init = true;
      if (is(k, "<") && !init) {
        std::size_t after = match_angle(k);
        if (after != npos && after <= rb) {
          k = after;
          continue;
        }
      }
      if (is(k, "{")) {
        std::size_t m = match(k, "{", "}");
        k = m == npos ? rb : m + 1;
        if (paren) {
          member(name, run, k, true, &fields);
          run = k;
          paren = init = false;
        }
        continue;
      }
      if (is(k, ";")) {
        member(name, run, k, paren, &fields);
        ++k;
        run = k;
        paren = init = false;
        continue;
      }
      ++k;
    }
    if (diags_.size() != before) return rb + 1;

    std::string gen = " public: using cocoon_isef_self = " + name + "; using cocoon_isef_fields = ::cocoon::type_list<";
    for (std::size_t i = 0; i < fields.size(); ++i) gen += (i ? ", decltype(" : "decltype(") + fields[i] + ")";
    gen += ">; ";
    static const std::pair<const char*, const char*> checks[] = {
        {"interior_mut", "E-INTERIOR-MUT: field '%' of '#' holds an interior-mutable cell"},
        {"custom_deref", "E-CUSTOM-DEREF: field '%' of '#' has a type with a custom dereference operator"},
        {"custom_drop", "E-CUSTOM-DROP: field '%' of '#' has a type with a custom destructor"},
        {"not_isef", "E-NOT-ISEF: field '%' of '#' is not invisible-side-effect-free"}};
    for (const auto& f : fields) {
      for (const auto& [fault, msg] : checks) {
        std::string m = msg;
        m.replace(m.find('%'), 1, f);
        m.replace(m.find('#'), 1, name);
        gen += "static_assert(::cocoon::isef_fault_of<decltype(" + f + ")>() != ::cocoon::isef_fault::" + fault +
               ", \"" + m + "\"); ";
      }
    }
    edits_.push_back({t_[attr].begin, t_[attr + 6].end, ""});
    edits_.push_back({t_[rb].begin, t_[rb].begin, gen});
    return j + 1;
  }

  // One member declaration [b, e) of a derive_isef type.
  void member(const std::string& type, std::size_t b, std::size_t e, bool function, std::vector<std::string>* fields) {
    for (std::size_t q = b; q < e; ++q) {
      if (is(q, "~") && is(q + 1, type.c_str())) {
        diag("E-CUSTOM-DROP", loc_of(t_[q]), "'" + type + "' defines a destructor; derive_isef types cannot");
        return;
      }
      if (is(q, "operator") && (is(q + 1, "->") || (is(q + 1, "*") && is(q + 2, "(") && is(q + 3, ")")))) {
        diag("E-CUSTOM-DEREF", loc_of(t_[q]),
             "'" + type + "' defines a dereference operator; derive_isef types cannot");
        return;
      }
      if (is(q, "mutable")) {
        diag("E-INTERIOR-MUT", loc_of(t_[q]), "'" + type + "' has a mutable member; derive_isef types cannot");
        return;
      }
    }
    if (function || b >= e) return;
    static const std::set<std::string> skip = {"using",  "typedef", "static", "friend", "template",
                                                "enum",   "struct",  "class",  "static_assert", "union"};
    if (skip.count(t_[b].text)) return;
    for (const auto& part : split_top_commas(t_, b, e)) {
      std::string name;
      for (std::size_t q : part) {
        const std::string& s = t_[q].text;
        if (s == "=" || s == "{" || s == "[" || s == ":") break;
        if (t_[q].kind == TokKind::Ident && !is_keyword(s)) name = s;
      }
      if (!name.empty()) fields->push_back(name);
    }
  }

  std::string_view src_;
  const TransformOptions& opts_;
  LexResult lx_;
  const std::vector<Token>& t_;
  Context ctx_;
  std::vector<Edit> edits_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

TransformResult transform_source(std::string_view src, const TransformOptions& opts) {
  return FileTransformer(src, opts).run();
}

std::string expand_block_source(std::string_view label, std::string_view body, const Allowlist& allowlist) {
  LexResult lx = lex(body);
  if (!lx.error.empty()) throw Rejection("E-PARSE", Loc{lx.error_line, lx.error_col}, lx.error);
  Parser p(lx.tokens, 0, lx.tokens.size() - 1);
  auto stmts = p.parse_statements();
  Context ctx;
  ctx.allowlist = &allowlist;
  ctx.label = std::string(label);
  ctx.macros.insert(lx.defined_macros.begin(), lx.defined_macros.end());
  return expand_block(ctx.label, stmts, ctx);
}

}  // namespace cocoon::transform
