// expect: reject E-UNVETTED-CALL
// std::max is allowlisted only under its fully qualified name.
#include <cocoon/cocoon.hpp>
#include <algorithm>
#include "cocoon_labels.hpp"

using std::max;

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 3);
  auto r = secret_block(lat::Label_A) { return wrap_secret(max(unwrap_secret(s), 4)); };
  (void)r;
}
