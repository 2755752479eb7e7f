// expect: reject E-UNVETTED-CALL
// An ordinary function could print its argument.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include "cocoon_labels.hpp"

int leak(int v) {
  std::printf("%d\n", v);
  return v;
}

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 42);
  auto r = secret_block(lat::Label_A) { return wrap_secret(leak(unwrap_secret(s))); };
  (void)r;
}
