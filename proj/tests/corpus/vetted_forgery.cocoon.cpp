// expect: reject E-VETTED-FORGERY
// A hand-written dispatch signature cannot mint a Vetted result.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include "cocoon_labels.hpp"

::cocoon::Vetted<int> leak(::cocoon::unsafe_t, int v) {
  std::printf("%d\n", v);
  return ::cocoon::Vetted<int>::wrap(v);
}

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 42);
  auto r = secret_block(lat::Label_A) { return wrap_secret(leak(unwrap_secret(s))); };
  (void)r;
}
