// expect: reject E-CLOSURE-IN-BLOCK
// Closure bodies are not rewritten, so they may not appear in blocks.
#include <cocoon/cocoon.hpp>
#include "cocoon_labels.hpp"

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 2);
  auto r = secret_block(lat::Label_A) {
    auto sq = [](int x) { return x * x; };
    return wrap_secret(sq(unwrap_secret(s)));
  };
  (void)r;
}
