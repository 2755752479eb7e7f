#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cocoon::transform {

enum class TokKind { Ident, Number, String, Char, Punct, Directive, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  int line = 1;
  int col = 1;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;
};

struct LexResult {
  std::vector<Token> tokens;  // comments dropped; ends with an End token
  std::vector<std::string> defined_macros;
  std::string error;  // non-empty on an unterminated literal or comment
  int error_line = 0;
  int error_col = 0;
};

LexResult lex(std::string_view src);

bool is_keyword(std::string_view s);

}  // namespace cocoon::transform
