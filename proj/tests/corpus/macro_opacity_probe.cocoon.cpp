// expect: reject E-SECRET-OPAQUE
// A macro wrapping a block sees only the opaque Secret it produces.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include "cocoon_labels.hpp"

#define EVIL(blk) std::printf("%d\n", static_cast<int>(blk))

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 5);
  EVIL(secret_block(lat::Label_A) { return wrap_secret(unwrap_secret(s)); });
}
