// expect: reject E-OUTSIDE-BLOCK
#include <cocoon/cocoon.hpp>
#include "cocoon_labels.hpp"

int main() {
  auto s = ::cocoon::secret_new<lat::Label_A>(::cocoon::unsafe, 1);
  return unwrap_secret(s);
}
