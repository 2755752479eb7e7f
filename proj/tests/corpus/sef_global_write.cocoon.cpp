// expect: reject E-MUT-CAPTURE
// A side-effect-free function may not write global state.
#include <cocoon/cocoon.hpp>
#include "cocoon_labels.hpp"

int calls = 0;

[[cocoon::side_effect_free]] int counted(int x) {
  calls += 1;
  return x;
}

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 1);
  auto r = secret_block(lat::Label_A) { return wrap_secret(counted(unwrap_secret(s))); };
  (void)r;
}
