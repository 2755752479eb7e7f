// String-scan kernel; the text is a secret and the scan runs in a secret block.
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <cocoon/cocoon.hpp>

#include "cocoon_labels.hpp"

namespace {

std::string make_text(int n) {
  static const char alphabet[] = "etaoin shrdlu cmfwyp 0123456789 vbgkqjxz,.";
  std::string text(static_cast<std::size_t>(n), ' ');
  std::uint32_t state = 12345u;
  for (char& c : text) {
    state = state * 1664525u + 1013904223u;
    c = alphabet[(state >> 16) % (sizeof alphabet - 1)];
  }
  return text;
}

// Words, digit sum and upper-cased vowel count folded into one checksum.
[[cocoon::side_effect_free]] long scan_text(const std::string* text) {
  long words = 0;
  long digits = 0;
  long vowels = 0;
  bool in_word = false;
  const long n = static_cast<long>(::std::size(*text));
  for (long i = 0; i < n; ++i) {
    const int c = (*text)[i];
    if (::std::isalpha(c) != 0) {
      if (!in_word) {
        words += 1;
      }
      in_word = true;
      const int u = ::std::toupper(c);
      if (u == 'A' || u == 'E' || u == 'I' || u == 'O' || u == 'U') {
        vowels += 1;
      }
    } else {
      in_word = false;
      if (::std::isdigit(c) != 0) {
        digits += c - '0';
      }
    }
  }
  return words * 1000003 + digits * 31 + vowels;
}

}  // namespace

double strscan_secret(int n) {
  const auto text = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, make_text(n));
  auto sum = secret_block(lat::Label_A) { return wrap_secret(scan_text(unwrap_secret_ref(&text))); };
  return static_cast<double>(sum.declassify());
}

#ifdef COCOON_BENCH_MAIN
int main(int argc, char** argv) { std::printf("%.0f\n", strscan_secret(argc > 1 ? std::atoi(argv[1]) : 1000)); }
#endif
