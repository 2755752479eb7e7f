// expect: reject E-READ-UP
// A block labeled {a} may not read a value labeled {a,b}.
#include <cocoon/cocoon.hpp>
#include "cocoon_labels.hpp"

int main() {
  auto both = ::cocoon::secret_new<lat::Label_AB>(::cocoon::unsafe, 7);
  auto r = secret_block(lat::Label_A) { return wrap_secret(unwrap_secret(both) + 1); };
  (void)r;
}
