#include "cocoon/transform/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace cocoon::transform {

namespace {

// Longest first.
constexpr std::string_view kPuncts[] = {"<=>", "<<=", ">>=", "...", "->*", "::", "->", "++", "--",
                                        "<<",  ">>",  "<=",  ">=",  "==",  "!=", "&&", "||", "+=",
                                        "-=",  "*=",  "/=",  "%=",  "&=",  "|=", "^=", ".*", "##"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) {}

  LexResult run() {
    bool line_start = true;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        advance();
        line_start = true;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        int l = line_, cl = col_;
        advance(2);
        while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) return fail("unterminated comment", l, cl);
        advance(2);
        continue;
      }
      if (c == '#' && line_start) {
        directive();
        continue;
      }
      line_start = false;
      if (!lex_token()) return std::move(out_);
    }
    Token end;
    end.kind = TokKind::End;
    end.line = line_;
    end.col = col_;
    end.begin = end.end = src_.size();
    out_.tokens.push_back(end);
    return std::move(out_);
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void set_error(const std::string& msg, int l, int c) {
    out_.error = msg;
    out_.error_line = l;
    out_.error_col = c;
  }

  LexResult fail(const std::string& msg, int l, int c) {
    set_error(msg, l, c);
    return std::move(out_);
  }

  void push(TokKind k, std::size_t b, int l, int c) {
    Token t;
    t.kind = k;
    t.text = std::string(src_.substr(b, pos_ - b));
    t.line = l;
    t.col = c;
    t.begin = b;
    t.end = pos_;
    out_.tokens.push_back(std::move(t));
  }

  void directive() {
    std::size_t b = pos_;
    int l = line_, c = col_;
    while (pos_ < src_.size()) {
      if (src_[pos_] == '\\' && peek(1) == '\n') {
        advance(2);
        continue;
      }
      if (src_[pos_] == '\n') break;
      advance();
    }
    push(TokKind::Directive, b, l, c);
    // #define NAME
    std::string_view d = out_.tokens.back().text;
    std::size_t i = 1;
    while (i < d.size() && (d[i] == ' ' || d[i] == '\t')) ++i;
    if (d.substr(i, 6) == "define") {
      i += 6;
      while (i < d.size() && (d[i] == ' ' || d[i] == '\t')) ++i;
      std::size_t s = i;
      while (i < d.size() && ident_char(d[i])) ++i;
      if (i > s) out_.defined_macros.emplace_back(d.substr(s, i - s));
    }
  }

  bool quoted(char q, std::size_t b, int l, int c, TokKind k) {
    advance();  // opening quote
    while (pos_ < src_.size() && src_[pos_] != q) {
      if (src_[pos_] == '\\') advance();
      if (pos_ < src_.size() && src_[pos_] == '\n') {
        set_error(q == '"' ? "unterminated string literal" : "unterminated character literal", l, c);
        return false;
      }
      advance();
    }
    if (pos_ >= src_.size()) {
      set_error("unterminated literal", l, c);
      return false;
    }
    advance();
    while (pos_ < src_.size() && ident_char(src_[pos_])) advance();  // user-defined suffix
    push(k, b, l, c);
    return true;
  }

  bool raw_string(std::size_t b, int l, int c) {
    // at R"delim(
    advance(2);
    std::string delim;
    while (pos_ < src_.size() && src_[pos_] != '(') delim += src_[pos_], advance();
    std::string close = ")" + delim + "\"";
    std::size_t found = src_.find(close, pos_);
    if (found == std::string_view::npos) {
      set_error("unterminated raw string literal", l, c);
      return false;
    }
    advance(found + close.size() - pos_);
    push(TokKind::String, b, l, c);
    return true;
  }

  bool lex_token() {
    std::size_t b = pos_;
    int l = line_, c = col_;
    char ch = src_[pos_];
    if (ident_start(ch)) {
      std::size_t e = pos_;
      while (e < src_.size() && ident_char(src_[e])) ++e;
      std::string_view word = src_.substr(pos_, e - pos_);
      bool prefix = word == "u8" || word == "u" || word == "U" || word == "L";
      bool raw_prefix = word == "R" || word == "u8R" || word == "uR" || word == "UR" || word == "LR";
      if (e < src_.size() && raw_prefix && src_[e] == '"') {
        advance(e - pos_ - 1);
        return raw_string(b, l, c);
      }
      if (e < src_.size() && prefix && (src_[e] == '"' || src_[e] == '\'')) {
        advance(e - pos_);
        return quoted(src_[pos_], b, l, c, src_[pos_] == '"' ? TokKind::String : TokKind::Char);
      }
      advance(e - pos_);
      push(TokKind::Ident, b, l, c);
      return true;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || (ch == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if ((d == 'e' || d == 'E' || d == 'p' || d == 'P') && (peek(1) == '+' || peek(1) == '-')) {
          advance(2);
          continue;
        }
        if (ident_char(d) || d == '.') {
          advance();
          continue;
        }
        if (d == '\'' && ident_char(peek(1))) {
          advance();
          continue;
        }
        break;
      }
      push(TokKind::Number, b, l, c);
      return true;
    }
    if (ch == '"') return quoted('"', b, l, c, TokKind::String);
    if (ch == '\'') return quoted('\'', b, l, c, TokKind::Char);
    for (std::string_view p : kPuncts) {
      if (src_.substr(pos_, p.size()) == p) {
        advance(p.size());
        push(TokKind::Punct, b, l, c);
        return true;
      }
    }
    advance();
    push(TokKind::Punct, b, l, c);
    return true;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  LexResult out_;
};

}  // namespace

LexResult lex(std::string_view src) { return Lexer(src).run(); }

bool is_keyword(std::string_view s) {
  static constexpr std::array<std::string_view, 62> kws = {
      "alignas",   "alignof",   "asm",       "auto",        "bool",        "break",         "case",
      "catch",     "char",      "class",     "const",       "consteval",   "constexpr",     "constinit",
      "continue",  "decltype",  "default",   "delete",      "do",          "double",        "else",
      "enum",      "explicit",  "extern",    "false",       "float",       "for",           "friend",
      "goto",      "if",        "inline",    "int",         "long",        "mutable",       "namespace",
      "new",       "noexcept",  "nullptr",   "operator",    "private",     "protected",     "public",
      "return",    "short",     "signed",    "sizeof",      "static",      "static_assert", "static_cast",
      "struct",    "switch",    "template",  "this",        "throw",       "true",          "try",
      "typedef",   "typename",  "union",     "unsigned",    "using",       "void"};
  static constexpr std::array<std::string_view, 8> more = {"virtual",  "volatile",         "while",      "wchar_t",
                                                           "char8_t",  "reinterpret_cast", "const_cast", "dynamic_cast"};
  return std::find(kws.begin(), kws.end(), s) != kws.end() || std::find(more.begin(), more.end(), s) != more.end();
}

}  // namespace cocoon::transform
