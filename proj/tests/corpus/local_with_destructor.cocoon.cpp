// expect: reject E-CUSTOM-DROP
// A local declared in the block would run its destructor on every exit.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include "cocoon_labels.hpp"

struct Guard {
  int v = 0;
  ~Guard() { std::printf("%d\n", v); }
};

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 3);
  auto r = secret_block(lat::Label_A) {
    Guard g;
    return wrap_secret(unwrap_secret(s));
  };
  (void)r;
}
