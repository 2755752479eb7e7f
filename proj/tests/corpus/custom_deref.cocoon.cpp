// expect: reject E-CUSTOM-DEREF
// operator* would run application code on every dereference.
#include <cocoon/cocoon.hpp>
#include <cstdio>
#include "cocoon_labels.hpp"

struct Handle {
  int v = 1;
  const int& operator*() const {
    std::puts("deref");
    return v;
  }
};

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 9);
  Handle h;
  auto r = secret_block(lat::Label_A) { return wrap_secret(*h + unwrap_secret(s)); };
  (void)r;
}
