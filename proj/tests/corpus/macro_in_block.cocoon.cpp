// expect: reject E-MACRO-IN-BLOCK
// Application macros expand after the rewrite and escape it.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include "cocoon_labels.hpp"

#define SHOW(x) (std::printf("%d\n", (x)), (x))

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 2);
  auto r = secret_block(lat::Label_A) { return wrap_secret(SHOW(unwrap_secret(s))); };
  (void)r;
}
