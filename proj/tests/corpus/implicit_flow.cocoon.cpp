// expect: reject E-MUT-CAPTURE
// Branching on a secret and writing a plain variable leaks one bit.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include "cocoon_labels.hpp"

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, true);
  int leaked = 0;
  secret_block(lat::Label_A) {
    if (unwrap_secret(s)) {
      leaked = 1;
    }
  };
  std::printf("%d\n", leaked);
}
