// expect: reject E-CUSTOM-DROP
// A destructor would run application code when the block's local dies.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include "cocoon_labels.hpp"

struct Noisy {
  int v = 0;
  ~Noisy() { std::printf("%d\n", v); }
};

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 9);
  Noisy probe;
  auto r = secret_block(lat::Label_A) { return wrap_secret(probe.v + unwrap_secret(s)); };
  (void)r;
}
